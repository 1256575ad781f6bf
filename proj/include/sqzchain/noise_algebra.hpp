#pragma once

#include <span>
#include <string>
#include <vector>

namespace sqz {

// Quadrature noise variances relative to vacuum (vacuum = 1). The constructor
// orders the pair so that r_minus() <= r_plus().
class NoiseLevels {
public:
    NoiseLevels(double a, double b);

    static NoiseLevels vacuum() { return NoiseLevels(1.0, 1.0); }

    double r_minus() const noexcept { return r_minus_; }
    double r_plus() const noexcept { return r_plus_; }

    // Uncertainty product r_minus * r_plus; >= 1 for states reachable from
    // vacuum through squeezing and loss.
    double product() const noexcept { return r_minus_ * r_plus_; }

    friend bool operator==(const NoiseLevels&, const NoiseLevels&) = default;

private:
    double r_minus_;
    double r_plus_;
};

struct LossElement {
    LossElement(std::string name, double fraction);

    std::string name;
    double fraction;
};

using LossBudget = std::vector<LossElement>;

void check_loss_fraction(double rho, const char* what);

double to_decibels(double ratio);
double from_decibels(double db);

// Loss channel r -> rho + (1 - rho) r on both quadratures.
NoiseLevels apply_loss(const NoiseLevels& levels, double rho);
double apply_loss(double variance, double rho);

// Inverse channel r -> (r - rho) / (1 - rho). Throws Nonphysical when a
// component sits at or below the loss-induced floor rho.
NoiseLevels remove_loss(const NoiseLevels& levels, double rho);
double remove_loss(double variance, double rho);

// Serial composition: 1 - prod(1 - rho_i).
double compose_losses(std::span<const double> fractions);
double compose_losses(const LossBudget& budget);

// Variance of the quadrature rotated by theta from the squeezed axis:
// r_minus cos^2 + r_plus sin^2.
double project_phase(const NoiseLevels& levels, double theta);

}  // namespace sqz
