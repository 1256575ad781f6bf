#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sqzchain/detection_chain.hpp"

namespace sqz {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kDefaultDispersionPsNmKm = 17.0;

struct SpectralGrid {
    double center_wavelength_nm = 1545.3;
    std::vector<double> wavelengths_nm;

    void validate() const;

    static SpectralGrid uniform(double center_nm, double start_nm, double stop_nm, double step_nm);
};

struct FiberSegment {
    double length_m = 0.0;
    double dispersion_ps_nm_km = kDefaultDispersionPsNmKm;
    double reference_wavelength_nm = 1545.0;
    double static_phase_rad = 0.0;

    void validate() const;
};

// Linearized phase mismatch dk = slope * (lambda - center) over an
// interaction length. A zero slope gives a flat envelope.
struct PhaseMatchingEnvelope {
    double center_wavelength_nm = 1545.3;
    double mismatch_slope_rad_per_m_per_nm = 0.0;
    double length_m = 0.045;

    void validate() const;
    double delta_k(double wavelength_nm) const;
    double value(double wavelength_nm) const;
};

struct DetectorRolloff {
    // Unset means "use the chain's detection gain", which keeps the centre
    // row identical to chain_forward.
    std::optional<double> peak_gain_db;
    PhaseMatchingEnvelope envelope;

    void validate() const;
};

struct SpectrumRow {
    double wavelength_nm;
    double sideband_thz;
    // Intensities normalized to the amplified vacuum at the centre wavelength.
    double vacuum_level;
    double squeezed_level;
    double antisqueezed_level;
};

double sideband_frequency(double wavelength_nm, double center_nm);  // THz

// sinc^2(dk L / 2)
double qpm_envelope(double delta_k_rad_per_m, double length_m);

double beta2_from_D(double dispersion_ps_nm_km, double wavelength_nm);  // ps^2/km

// theta0 + (beta2 / 2) Omega^2 L, Omega in rad/s.
double fiber_phase(double sideband_rad_per_s, const FiberSegment& segment);

// Summed fiber phase at a wavelength.
double total_fiber_phase(std::span<const FiberSegment> fibers, double wavelength_nm, double center_nm);

std::vector<SpectrumRow> synthesize_spectrum(const ChainConfig& chain, const SpectralGrid& grid,
                                             const PhaseMatchingEnvelope& generation,
                                             std::span<const FiberSegment> fibers,
                                             const DetectorRolloff& rolloff, double pump_w);

}  // namespace sqz
