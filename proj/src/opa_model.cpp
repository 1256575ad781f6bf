#include "sqzchain/opa_model.hpp"

#include <cmath>
#include <string>

#include "sqzchain/error.hpp"

namespace sqz {

void OpaParams::validate() const {
    if (!(shg_coeff_per_watt >= 0.0) || !std::isfinite(shg_coeff_per_watt)) {
        fail(ErrorCode::Domain, "SHG coefficient must be nonnegative and finite");
    }
    check_loss_fraction(effective_loss, "effective loss");
    if (!(length_cm > 0.0)) fail(ErrorCode::Domain, "waveguide length must be positive");
    if (!(excess_loss_per_watt >= 0.0)) fail(ErrorCode::Domain, "pump-dependent loss must be nonnegative");
}

double loss_at_pump(double base_loss, double excess_loss_per_watt, double pump_w) {
    const double rho = base_loss + excess_loss_per_watt * pump_w;
    check_loss_fraction(rho, "pump-dependent loss");
    return rho;
}

NoiseLevels opa_output(double shg_coeff_per_watt, double pump_w, double rho) {
    if (!(shg_coeff_per_watt >= 0.0) || !std::isfinite(shg_coeff_per_watt)) {
        fail(ErrorCode::Domain, "SHG coefficient must be nonnegative and finite");
    }
    if (!(pump_w >= 0.0) || !std::isfinite(pump_w)) {
        fail(ErrorCode::Domain, "pump power must be nonnegative and finite, got " + std::to_string(pump_w));
    }
    check_loss_fraction(rho, "loss");
    const double squeeze = 2.0 * std::sqrt(shg_coeff_per_watt * pump_w);
    return NoiseLevels(rho + (1.0 - rho) * std::exp(-squeeze), rho + (1.0 - rho) * std::exp(squeeze));
}

double shg_coeff_from_normalized(double normalized_pct_per_w_cm2, double length_cm) {
    if (!(normalized_pct_per_w_cm2 >= 0.0)) fail(ErrorCode::Domain, "normalized efficiency must be nonnegative");
    if (!(length_cm > 0.0)) fail(ErrorCode::Domain, "length must be positive");
    return normalized_pct_per_w_cm2 * length_cm * length_cm;
}

double optimal_pump(double shg_coeff_per_watt, double g_power) {
    if (!(shg_coeff_per_watt > 0.0)) fail(ErrorCode::Domain, "optimal pump needs a positive SHG coefficient");
    if (!(g_power >= 1.0)) fail(ErrorCode::Domain, "detection gain must be >= 1");
    // d/ds [e^s + G^2 e^-s] = 0  at  s = ln G, with s = 2 sqrt(aP)
    const double log_gain = std::log(g_power);
    return log_gain * log_gain / (4.0 * shg_coeff_per_watt);
}

std::vector<SweepPoint> pump_sweep(const OpaParams& params, std::span<const double> pumps_w) {
    params.validate();
    std::vector<SweepPoint> out;
    out.reserve(pumps_w.size());
    for (double pump : pumps_w) {
        if (!(pump >= 0.0)) fail(ErrorCode::Domain, "pump powers must be nonnegative");
        const double rho = loss_at_pump(params.effective_loss, params.excess_loss_per_watt, pump);
        out.emplace_back(pump, opa_output(params.shg_coeff_per_watt, pump, rho));
    }
    return out;
}

}  // namespace sqz
