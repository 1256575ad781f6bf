#include "sqzchain/detection_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqzchain/error.hpp"

namespace sqz {

MeasuredLevels::MeasuredLevels(double rp_minus, double rp_plus) {
    if (!(rp_minus > 0.0) || !(rp_plus > 0.0) || !std::isfinite(rp_minus) || !std::isfinite(rp_plus)) {
        fail(ErrorCode::Domain, "measured levels must be positive and finite");
    }
    if (rp_plus < rp_minus) std::swap(rp_minus, rp_plus);
    rp_minus_ = rp_minus;
    rp_plus_ = rp_plus;
}

void ChainConfig::validate() const {
    generator.validate();
    if (!(detection_power_gain >= 1.0)) fail(ErrorCode::Domain, "detection power gain must be >= 1");
    check_loss_fraction(effective_chain_loss, "effective chain loss");
}

double antisqueeze_suppression(double g_power) {
    if (!(g_power >= 0.0)) fail(ErrorCode::Domain, "gain must be nonnegative");
    const double g = std::min(g_power, kMaxPowerGain);
    return 1.0 / (1.0 + g * g);
}

double mix_quadratures(double measured_axis, double conjugate_axis, double g_power) {
    const double leak = antisqueeze_suppression(g_power);
    return leak * conjugate_axis + (1.0 - leak) * measured_axis;
}

MeasuredLevels measured_levels(const NoiseLevels& levels, double g_power) {
    if (!(g_power >= 1.0)) fail(ErrorCode::Domain, "detection gain must be >= 1, got " + std::to_string(g_power));
    return MeasuredLevels(mix_quadratures(levels.r_minus(), levels.r_plus(), g_power),
                          mix_quadratures(levels.r_plus(), levels.r_minus(), g_power));
}

MeasuredLevels chain_forward(const ChainConfig& chain, double pump_w) {
    chain.validate();
    if (!(pump_w >= 0.0)) fail(ErrorCode::Domain, "pump power must be nonnegative");
    const double rho = loss_at_pump(chain.effective_chain_loss, chain.generator.excess_loss_per_watt, pump_w);
    return measured_levels(opa_output(chain.generator.shg_coeff_per_watt, pump_w, rho),
                           chain.detection_power_gain);
}

double infer_onchip(double measured_db, double detection_loss) {
    return to_decibels(remove_loss(from_decibels(measured_db), detection_loss));
}

double per_side_loss(double total_loss, double waveguide_loss) {
    check_loss_fraction(total_loss, "total loss");
    check_loss_fraction(waveguide_loss, "waveguide loss");
    if (total_loss < waveguide_loss) {
        fail(ErrorCode::Domain, "total loss is smaller than the waveguide loss alone");
    }
    return 1.0 - std::sqrt((1.0 - total_loss) / (1.0 - waveguide_loss));
}

}  // namespace sqz
