#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sqzchain/noise_algebra.hpp"

namespace sqz {

/// Generation-OPA parameters. The SHG coefficient is in W^-1 (823 %/W is
/// 8.23 W^-1); the CLI converts from %/W at its boundary.
struct OpaParams {
    double shg_coeff_per_watt = 0.0;
    double effective_loss = 0.0;
    double length_cm = 1.0;
    double center_wavelength_nm = 1545.3;
    /// Phase-matching half-width used by spectral synthesis, in nm. Informational
    /// at this level; the spectral envelope carries the actual slope.
    double pm_halfwidth_nm = 0.0;
    /// Additive pump-dependent loss, rho(P) = effective_loss + excess_loss_per_watt * P.
    /// Zero models a waveguide whose loss does not change under pumping.
    double excess_loss_per_watt = 0.0;

    void validate() const;
};

// Loss seen at a given pump power, including the optional pump-dependent term.
double loss_at_pump(double base_loss, double excess_loss_per_watt, double pump_w);

/// R+- = rho + (1 - rho) exp(+-2 sqrt(a P)).
NoiseLevels opa_output(double shg_coeff_per_watt, double pump_w, double rho);

/// Total SHG efficiency (%/W) from the normalized efficiency (%/(W cm^2)).
double shg_coeff_from_normalized(double normalized_pct_per_w_cm2, double length_cm);

/// Pump power minimizing the finite-gain measured squeezed level, (ln G)^2 / (4a).
/// Independent of loss: rho moves the floor but not the argmin.
double optimal_pump(double shg_coeff_per_watt, double g_power);

using SweepPoint = std::pair<double, NoiseLevels>;

std::vector<SweepPoint> pump_sweep(const OpaParams& params, std::span<const double> pumps_w);

}  // namespace sqz
