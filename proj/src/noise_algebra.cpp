#include "sqzchain/noise_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sqzchain/error.hpp"

namespace sqz {

namespace {

void check_variance(double r, const char* what) {
    if (!std::isfinite(r) || r <= 0.0) {
        fail(ErrorCode::Domain, std::string(what) + " must be positive and finite, got " + std::to_string(r));
    }
}

}  // namespace

NoiseLevels::NoiseLevels(double a, double b) {
    check_variance(a, "noise variance");
    check_variance(b, "noise variance");
    if (b < a) std::swap(a, b);
    r_minus_ = a;
    r_plus_ = b;
}

void check_loss_fraction(double rho, const char* what) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        fail(ErrorCode::Domain, std::string(what) + " must lie in [0, 1), got " + std::to_string(rho));
    }
}

LossElement::LossElement(std::string name_, double fraction_) : name(std::move(name_)), fraction(fraction_) {
    check_loss_fraction(fraction, "loss fraction");
}

double to_decibels(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 0.0) {
        fail(ErrorCode::Domain, "dB conversion needs a positive finite ratio, got " + std::to_string(ratio));
    }
    return 10.0 * std::log10(ratio);
}

double from_decibels(double db) {
    if (!std::isfinite(db)) fail(ErrorCode::Domain, "dB value must be finite");
    return std::pow(10.0, db / 10.0);
}

double apply_loss(double variance, double rho) {
    check_loss_fraction(rho, "loss");
    return rho + (1.0 - rho) * variance;
}

NoiseLevels apply_loss(const NoiseLevels& levels, double rho) {
    return NoiseLevels(apply_loss(levels.r_minus(), rho), apply_loss(levels.r_plus(), rho));
}

double remove_loss(double variance, double rho) {
    check_loss_fraction(rho, "loss");
    if (!(variance > rho)) {
        fail(ErrorCode::Nonphysical, "level " + std::to_string(variance) +
                                         " is at or below the vacuum floor of loss " + std::to_string(rho));
    }
    return (variance - rho) / (1.0 - rho);
}

NoiseLevels remove_loss(const NoiseLevels& levels, double rho) {
    return NoiseLevels(remove_loss(levels.r_minus(), rho), remove_loss(levels.r_plus(), rho));
}

double compose_losses(std::span<const double> fractions) {
    double transmission = 1.0;
    for (double rho : fractions) {
        check_loss_fraction(rho, "loss fraction");
        transmission *= 1.0 - rho;
    }
    return 1.0 - transmission;
}

double compose_losses(const LossBudget& budget) {
    std::vector<double> fractions;
    fractions.reserve(budget.size());
    for (const auto& element : budget) fractions.push_back(element.fraction);
    return compose_losses(fractions);
}

double project_phase(const NoiseLevels& levels, double theta) {
    if (!std::isfinite(theta)) fail(ErrorCode::Domain, "phase must be finite");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double v = levels.r_minus() * c * c + levels.r_plus() * s * s;
    // c^2 + s^2 can miss 1 by an ulp
    return std::clamp(v, levels.r_minus(), levels.r_plus());
}

}  // namespace sqz
