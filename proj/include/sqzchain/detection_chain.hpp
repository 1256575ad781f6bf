#pragma once

#include "sqzchain/noise_algebra.hpp"
#include "sqzchain/opa_model.hpp"

namespace sqz {

// Gains above this are treated as infinite.
inline constexpr double kMaxPowerGain = 1e12;

/// Detected intensity ratios I-/I0 and I+/I0 after the amplifying OPA.
class MeasuredLevels {
public:
    MeasuredLevels(double rp_minus, double rp_plus);

    double rp_minus() const noexcept { return rp_minus_; }
    double rp_plus() const noexcept { return rp_plus_; }

private:
    double rp_minus_;
    double rp_plus_;
};

/// Generation -> lumped loss -> detection. The lump sits between the middle of
/// the generating OPA and the middle of the detecting one; when present it
/// replaces generator.effective_loss, and detection_budget is only used for
/// inference and decomposition.
struct ChainConfig {
    OpaParams generator;
    double detection_power_gain = 1.0;
    double effective_chain_loss = 0.0;
    LossBudget detection_budget;

    void validate() const;
};

// Weight 1/(1 + G^2) that leaks the conjugate quadrature into a measurement.
double antisqueeze_suppression(double g_power);

// Finite-gain mixing of a (measured-axis, conjugate-axis) variance pair. No
// ordering is imposed on the inputs; g_power >= 0.
double mix_quadratures(double measured_axis, double conjugate_axis, double g_power);

MeasuredLevels measured_levels(const NoiseLevels& levels, double g_power);

MeasuredLevels chain_forward(const ChainConfig& chain, double pump_w);

/// On-chip squeezing (dB) after removing a detection loss from a measured level.
double infer_onchip(double measured_db, double detection_loss);

/// Per-side coupling loss such that waveguide + two equal sides compose to total.
double per_side_loss(double total_loss, double waveguide_loss);

}  // namespace sqz
