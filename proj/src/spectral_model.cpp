#include "sqzchain/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqzchain/error.hpp"

namespace sqz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPs2PerKmToS2PerM = 1e-27;

void check_wavelength(double nm) {
    if (!(nm > 0.0) || !std::isfinite(nm)) {
        fail(ErrorCode::Domain, "wavelength must be positive and finite, got " + std::to_string(nm));
    }
}

double optical_frequency_thz(double wavelength_nm) {
    return kSpeedOfLight * 1e-3 / wavelength_nm;
}

// Total output intensity of a phase-sensitive amplifier fed with vacuum, in
// units of the unamplified vacuum: (G^2 + 1) / G.
double amplified_vacuum(double g_power) {
    const double g = std::min(g_power, kMaxPowerGain);
    return (g * g + 1.0) / g;
}

}  // namespace

void SpectralGrid::validate() const {
    check_wavelength(center_wavelength_nm);
    for (double nm : wavelengths_nm) check_wavelength(nm);
    if (wavelengths_nm.size() < 2) return;
    const bool increasing = wavelengths_nm[1] > wavelengths_nm[0];
    for (std::size_t i = 1; i < wavelengths_nm.size(); ++i) {
        const bool step_up = wavelengths_nm[i] > wavelengths_nm[i - 1];
        if (wavelengths_nm[i] == wavelengths_nm[i - 1] || step_up != increasing) {
            fail(ErrorCode::Domain, "wavelength grid must be strictly monotone");
        }
    }
}

SpectralGrid SpectralGrid::uniform(double center_nm, double start_nm, double stop_nm, double step_nm) {
    if (!(step_nm > 0.0)) fail(ErrorCode::Domain, "wavelength step must be positive");
    if (!(stop_nm >= start_nm)) fail(ErrorCode::Domain, "wavelength stop must not precede start");
    SpectralGrid grid;
    grid.center_wavelength_nm = center_nm;
    const auto count = static_cast<std::size_t>(std::floor((stop_nm - start_nm) / step_nm + 1e-9)) + 1;
    grid.wavelengths_nm.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.wavelengths_nm.push_back(start_nm + static_cast<double>(i) * step_nm);
    }
    grid.validate();
    return grid;
}

void FiberSegment::validate() const {
    if (!(length_m >= 0.0) || !std::isfinite(length_m)) fail(ErrorCode::Domain, "fiber length must be >= 0");
    if (!std::isfinite(dispersion_ps_nm_km)) fail(ErrorCode::Domain, "fiber dispersion must be finite");
    if (!std::isfinite(static_phase_rad)) fail(ErrorCode::Domain, "fiber static phase must be finite");
    check_wavelength(reference_wavelength_nm);
}

void PhaseMatchingEnvelope::validate() const {
    check_wavelength(center_wavelength_nm);
    if (!(length_m > 0.0)) fail(ErrorCode::Domain, "interaction length must be positive");
    if (!std::isfinite(mismatch_slope_rad_per_m_per_nm)) fail(ErrorCode::Domain, "mismatch slope must be finite");
}

double PhaseMatchingEnvelope::delta_k(double wavelength_nm) const {
    return mismatch_slope_rad_per_m_per_nm * (wavelength_nm - center_wavelength_nm);
}

double PhaseMatchingEnvelope::value(double wavelength_nm) const {
    return qpm_envelope(delta_k(wavelength_nm), length_m);
}

void DetectorRolloff::validate() const {
    if (peak_gain_db && !(*peak_gain_db >= 0.0)) fail(ErrorCode::Domain, "detector peak gain must be >= 0 dB");
    envelope.validate();
}

double sideband_frequency(double wavelength_nm, double center_nm) {
    check_wavelength(wavelength_nm);
    check_wavelength(center_nm);
    return std::abs(optical_frequency_thz(wavelength_nm) - optical_frequency_thz(center_nm));
}

double qpm_envelope(double delta_k_rad_per_m, double length_m) {
    if (!(length_m > 0.0)) fail(ErrorCode::Domain, "interaction length must be positive");
    const double x = 0.5 * delta_k_rad_per_m * length_m;
    if (x == 0.0) return 1.0;
    const double sinc = std::sin(x) / x;
    return std::min(1.0, sinc * sinc);
}

double beta2_from_D(double dispersion_ps_nm_km, double wavelength_nm) {
    check_wavelength(wavelength_nm);
    const double c_nm_per_ps = kSpeedOfLight * 1e-3;
    return -dispersion_ps_nm_km * wavelength_nm * wavelength_nm / (kTwoPi * c_nm_per_ps);
}

double fiber_phase(double sideband_rad_per_s, const FiberSegment& segment) {
    segment.validate();
    const double beta2 = beta2_from_D(segment.dispersion_ps_nm_km, segment.reference_wavelength_nm) *
                         kPs2PerKmToS2PerM;
    return segment.static_phase_rad +
           0.5 * beta2 * sideband_rad_per_s * sideband_rad_per_s * segment.length_m;
}

double total_fiber_phase(std::span<const FiberSegment> fibers, double wavelength_nm, double center_nm) {
    const double omega = kTwoPi * sideband_frequency(wavelength_nm, center_nm) * 1e12;
    double theta = 0.0;
    for (const auto& fiber : fibers) theta += fiber_phase(omega, fiber);
    return theta;
}

std::vector<SpectrumRow> synthesize_spectrum(const ChainConfig& chain, const SpectralGrid& grid,
                                             const PhaseMatchingEnvelope& generation,
                                             std::span<const FiberSegment> fibers,
                                             const DetectorRolloff& rolloff, double pump_w) {
    chain.validate();
    grid.validate();
    generation.validate();
    rolloff.validate();
    for (const auto& fiber : fibers) fiber.validate();
    if (!(pump_w >= 0.0)) fail(ErrorCode::Domain, "pump power must be nonnegative");

    const double peak_gain =
        rolloff.peak_gain_db ? std::max(1.0, from_decibels(*rolloff.peak_gain_db)) : chain.detection_power_gain;
    const double rho = loss_at_pump(chain.effective_chain_loss, chain.generator.excess_loss_per_watt, pump_w);
    const double a = chain.generator.shg_coeff_per_watt;
    const double center_vacuum = amplified_vacuum(peak_gain);

    std::vector<SpectrumRow> rows;
    rows.reserve(grid.wavelengths_nm.size());
    for (double nm : grid.wavelengths_nm) {
        // Scaling a by the envelope scales the squeeze parameter by its square root.
        const NoiseLevels generated = opa_output(a * generation.value(nm), pump_w, rho);
        const double theta = total_fiber_phase(fibers, nm, grid.center_wavelength_nm);
        const double on_axis = project_phase(generated, theta);
        const double conjugate = project_phase(generated, theta + 0.5 * std::numbers::pi);

        // A phase-sensitive amplifier never de-amplifies its gain quadrature.
        const double gain = std::max(1.0, peak_gain * rolloff.envelope.value(nm));
        const double vacuum = amplified_vacuum(gain) / center_vacuum;

        rows.push_back({nm, sideband_frequency(nm, grid.center_wavelength_nm), vacuum,
                        vacuum * mix_quadratures(on_axis, conjugate, gain),
                        vacuum * mix_quadratures(conjugate, on_axis, gain)});
    }
    return rows;
}

}  // namespace sqz
