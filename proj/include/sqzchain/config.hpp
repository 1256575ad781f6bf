#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqz {

// Typed view of a run configuration. Every key is optional at parse time;
// commands call require() for what they need. Losses are fractions, gains dB,
// wavelengths nm, fiber lengths m, dispersion ps/(nm km), pump powers W.
struct RunConfig {
    struct Chain {
        std::optional<double> shg_coeff_pct_per_w;
        std::optional<double> shg_norm_pct_per_w_cm2;
        std::optional<double> length_cm;
        std::optional<double> rho;
        std::optional<double> excess_loss_per_w;
        std::optional<double> gain_db;
        std::optional<double> detection_power_gain;  // derived from gain_db
        std::optional<double> center_wavelength_nm;
    } chain;

    struct Sweep {
        std::optional<std::vector<double>> pumps_w;
        std::optional<double> pump_start_w;
        std::optional<double> pump_stop_w;
        std::optional<double> pump_count;
        std::optional<double> noise_sigma_db;
    } sweep;

    struct Spectrum {
        std::optional<double> wavelength_start_nm;
        std::optional<double> wavelength_stop_nm;
        std::optional<double> wavelength_step_nm;
        std::optional<double> pump_w;
        std::optional<double> gen_mismatch_slope;  // rad/(m nm)
        std::optional<double> gen_length_m;
        std::optional<double> det_mismatch_slope;
        std::optional<double> det_length_m;
        std::optional<double> det_peak_gain_db;
    } spectrum;

    struct Fibers {
        std::optional<std::vector<double>> length_m;
        std::optional<std::vector<double>> dispersion_ps_nm_km;
        std::optional<std::vector<double>> reference_wavelength_nm;
        std::optional<std::vector<double>> static_phase_rad;
    } fibers;

    struct Budget {
        std::optional<std::vector<double>> losses;
        std::optional<std::vector<std::string>> names;
        std::optional<double> total_loss;
        std::optional<double> waveguide_loss;
        std::optional<double> measured_db;
        std::optional<double> detection_loss;
        std::optional<std::vector<double>> detection_losses;
    } budget;
};

// `[section]` headers, `key = value` lines, `#` comments. List values are
// comma separated. Throws sqz::Error with a ConfigSyntax / ConfigUnknownKey /
// ConfigRange code; syntax errors carry the line number.
RunConfig parse_config(std::string_view text);

// Throws ConfigMissingKey naming `section.key` when the value is absent.
template <typename T>
const T& require(const std::optional<T>& value, std::string_view section, std::string_view key);

}  // namespace sqz

#include "sqzchain/error.hpp"

namespace sqz {

template <typename T>
const T& require(const std::optional<T>& value, std::string_view section, std::string_view key) {
    if (!value) {
        fail(ErrorCode::ConfigMissingKey,
             "missing required key " + std::string(key) + " in [" + std::string(section) + "]");
    }
    return *value;
}

}  // namespace sqz
