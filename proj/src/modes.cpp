#include "sqzchain/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqzchain/error.hpp"

namespace sqz {

namespace {

constexpr double kDomainWidths = 12.0;
constexpr double kAbsTolerance = 1e-10;
constexpr int kInitialPanels = 24;
constexpr int kMaxDepth = 40;

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMaxDepth || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    const double panel = (b - a) / kInitialPanels;
    double total = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double lo = a + panel * i;
        const double hi = i + 1 == kInitialPanels ? b : a + panel * (i + 1);
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo);
        const double fmid = f(mid);
        const double fhi = f(hi);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += adaptive_simpson(f, lo, hi, flo, fmid, fhi, whole, tol / kInitialPanels, 0);
    }
    return total;
}

}  // namespace

void TransverseMode::validate() const {
    if (order < 0) fail(ErrorCode::Domain, "mode order must be >= 0");
    if (!(width > 0.0) || !std::isfinite(width)) fail(ErrorCode::Domain, "mode width must be positive");
}

double hermite_gauss(const TransverseMode& mode, double x) {
    mode.validate();
    const double xi = x / mode.width;
    // Normalized recurrence avoids n! and 2^n overflow.
    double prev = 0.0;
    double curr = std::pow(std::numbers::pi, -0.25) / std::sqrt(mode.width) * std::exp(-0.5 * xi * xi);
    for (int n = 0; n < mode.order; ++n) {
        const double next = std::sqrt(2.0 / (n + 1)) * xi * curr - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double triple_overlap(const TransverseMode& p, const TransverseMode& m, const TransverseMode& n) {
    p.validate();
    m.validate();
    n.validate();
    const double half = kDomainWidths * std::max({p.width, m.width, n.width});
    const auto integrand = [&](double x) { return hermite_gauss(p, x) * hermite_gauss(m, x) * hermite_gauss(n, x); };
    return integrate(integrand, -half, half, kAbsTolerance);
}

NoiseLevels multimode_noise(std::span<const WeightedLevels> per_mode) {
    if (per_mode.empty()) fail(ErrorCode::Domain, "multimode mixing needs at least one mode");
    double weight_sum = 0.0;
    double minus = 0.0;
    double plus = 0.0;
    for (const auto& [levels, weight] : per_mode) {
        if (!(weight >= 0.0) || !std::isfinite(weight)) fail(ErrorCode::Domain, "mode weights must be nonnegative");
        weight_sum += weight;
        minus += weight * levels.r_minus();
        plus += weight * levels.r_plus();
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        fail(ErrorCode::Domain, "mode weights must sum to 1, got " + std::to_string(weight_sum));
    }
    return NoiseLevels(minus, plus);
}

}  // namespace sqz
