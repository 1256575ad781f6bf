#include "sqzchain/sqzchain.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "sqzchain/commands.hpp"
#include "sqzchain/config.hpp"
#include "sqzchain/detection_chain.hpp"
#include "sqzchain/error.hpp"
#include "sqzchain/estimation.hpp"
#include "sqzchain/modes.hpp"
#include "sqzchain/noise_algebra.hpp"
#include "sqzchain/opa_model.hpp"
#include "sqzchain/spectral_model.hpp"

struct sqz_config {
    sqz::RunConfig config;
};

struct sqz_result {
    std::string csv;
    std::string summary;
};

namespace {

thread_local std::string g_last_error;

sqz_status to_status(sqz::ErrorCode code) {
    switch (code) {
        case sqz::ErrorCode::Domain: return SQZ_E_DOMAIN;
        case sqz::ErrorCode::Nonphysical: return SQZ_E_NONPHYSICAL;
        case sqz::ErrorCode::Underdetermined: return SQZ_E_UNDERDETERMINED;
        case sqz::ErrorCode::Singular: return SQZ_E_SINGULAR;
        case sqz::ErrorCode::ConfigSyntax: return SQZ_E_CONFIG_SYNTAX;
        case sqz::ErrorCode::ConfigUnknownKey: return SQZ_E_CONFIG_UNKNOWN_KEY;
        case sqz::ErrorCode::ConfigMissingKey: return SQZ_E_CONFIG_MISSING_KEY;
        case sqz::ErrorCode::ConfigRange: return SQZ_E_CONFIG_RANGE;
        case sqz::ErrorCode::Data: return SQZ_E_DATA;
        case sqz::ErrorCode::Internal: return SQZ_E_INTERNAL;
    }
    return SQZ_E_INTERNAL;
}

template <typename F>
sqz_status guarded(F&& body) {
    g_last_error.clear();
    try {
        body();
        return SQZ_OK;
    } catch (const sqz::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SQZ_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SQZ_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return SQZ_E_INTERNAL;
    }
}

template <typename... Ptrs>
bool any_null(Ptrs... ptrs) {
    return ((ptrs == nullptr) || ...);
}

sqz_status null_argument() {
    g_last_error = "required pointer argument is NULL";
    return SQZ_E_NULL_ARGUMENT;
}

sqz::NoiseLevels from_c(sqz_levels v) { return sqz::NoiseLevels(v.minus, v.plus); }
sqz_levels to_c(const sqz::NoiseLevels& v) { return {v.r_minus(), v.r_plus()}; }
sqz_levels to_c(const sqz::MeasuredLevels& v) { return {v.rp_minus(), v.rp_plus()}; }

std::vector<sqz::SweepObservation> from_c(const sqz_observation* obs, size_t count) {
    std::vector<sqz::SweepObservation> out(count);
    for (size_t i = 0; i < count; ++i) {
        out[i] = {obs[i].pump_w, obs[i].measured_minus_db, obs[i].measured_plus_db, obs[i].weight};
    }
    return out;
}

}  // namespace

extern "C" {

const char* sqz_version(void) { return "0.1.0"; }

const char* sqz_last_error(void) { return g_last_error.c_str(); }

const char* sqz_status_name(sqz_status status) {
    switch (status) {
        case SQZ_OK: return "OK";
        case SQZ_E_DOMAIN: return sqz::error_code_name(sqz::ErrorCode::Domain);
        case SQZ_E_NONPHYSICAL: return sqz::error_code_name(sqz::ErrorCode::Nonphysical);
        case SQZ_E_UNDERDETERMINED: return sqz::error_code_name(sqz::ErrorCode::Underdetermined);
        case SQZ_E_SINGULAR: return sqz::error_code_name(sqz::ErrorCode::Singular);
        case SQZ_E_CONFIG_SYNTAX: return sqz::error_code_name(sqz::ErrorCode::ConfigSyntax);
        case SQZ_E_CONFIG_UNKNOWN_KEY: return sqz::error_code_name(sqz::ErrorCode::ConfigUnknownKey);
        case SQZ_E_CONFIG_MISSING_KEY: return sqz::error_code_name(sqz::ErrorCode::ConfigMissingKey);
        case SQZ_E_CONFIG_RANGE: return sqz::error_code_name(sqz::ErrorCode::ConfigRange);
        case SQZ_E_DATA: return sqz::error_code_name(sqz::ErrorCode::Data);
        case SQZ_E_INTERNAL: return sqz::error_code_name(sqz::ErrorCode::Internal);
        case SQZ_E_NULL_ARGUMENT: return "E_NULL_ARGUMENT";
    }
    return "E_INTERNAL";
}

int sqz_status_exit_code(sqz_status status) {
    switch (status) {
        case SQZ_OK: return 0;
        case SQZ_E_CONFIG_SYNTAX:
        case SQZ_E_CONFIG_UNKNOWN_KEY:
        case SQZ_E_CONFIG_MISSING_KEY:
        case SQZ_E_CONFIG_RANGE:
            return 2;
        default:
            return 3;
    }
}

sqz_status sqz_to_decibels(double ratio, double* out_db) {
    if (any_null(out_db)) return null_argument();
    return guarded([&] { *out_db = sqz::to_decibels(ratio); });
}

sqz_status sqz_from_decibels(double db, double* out_ratio) {
    if (any_null(out_ratio)) return null_argument();
    return guarded([&] { *out_ratio = sqz::from_decibels(db); });
}

sqz_status sqz_apply_loss(sqz_levels levels, double rho, sqz_levels* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = to_c(sqz::apply_loss(from_c(levels), rho)); });
}

sqz_status sqz_remove_loss(sqz_levels levels, double rho, sqz_levels* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = to_c(sqz::remove_loss(from_c(levels), rho)); });
}

sqz_status sqz_compose_losses(const double* fractions, size_t count, double* out_total) {
    if (any_null(out_total) || (count > 0 && fractions == nullptr)) return null_argument();
    return guarded([&] { *out_total = sqz::compose_losses(std::span<const double>(fractions, count)); });
}

sqz_status sqz_project_phase(sqz_levels levels, double theta, double* out_variance) {
    if (any_null(out_variance)) return null_argument();
    return guarded([&] { *out_variance = sqz::project_phase(from_c(levels), theta); });
}

sqz_status sqz_opa_output(double a_per_watt, double pump_w, double rho, sqz_levels* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = to_c(sqz::opa_output(a_per_watt, pump_w, rho)); });
}

sqz_status sqz_shg_coeff_from_normalized(double pct_per_w_cm2, double length_cm, double* out_pct_per_w) {
    if (any_null(out_pct_per_w)) return null_argument();
    return guarded([&] { *out_pct_per_w = sqz::shg_coeff_from_normalized(pct_per_w_cm2, length_cm); });
}

sqz_status sqz_optimal_pump(double a_per_watt, double g_power, double* out_pump_w) {
    if (any_null(out_pump_w)) return null_argument();
    return guarded([&] { *out_pump_w = sqz::optimal_pump(a_per_watt, g_power); });
}

sqz_status sqz_measured_levels(sqz_levels levels, double g_power, sqz_levels* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = to_c(sqz::measured_levels(from_c(levels), g_power)); });
}

sqz_status sqz_antisqueeze_suppression(double g_power, double* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = sqz::antisqueeze_suppression(g_power); });
}

sqz_status sqz_chain_forward(double a_per_watt, double chain_loss, double g_power, double pump_w, sqz_levels* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] {
        sqz::ChainConfig chain;
        chain.generator.shg_coeff_per_watt = a_per_watt;
        chain.generator.effective_loss = chain_loss;
        chain.effective_chain_loss = chain_loss;
        chain.detection_power_gain = g_power;
        *out = to_c(sqz::chain_forward(chain, pump_w));
    });
}

sqz_status sqz_infer_onchip(double measured_db, double detection_loss, double* out_db) {
    if (any_null(out_db)) return null_argument();
    return guarded([&] { *out_db = sqz::infer_onchip(measured_db, detection_loss); });
}

sqz_status sqz_per_side_loss(double total_loss, double waveguide_loss, double* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = sqz::per_side_loss(total_loss, waveguide_loss); });
}

sqz_status sqz_sideband_frequency(double wavelength_nm, double center_nm, double* out_thz) {
    if (any_null(out_thz)) return null_argument();
    return guarded([&] { *out_thz = sqz::sideband_frequency(wavelength_nm, center_nm); });
}

sqz_status sqz_qpm_envelope(double delta_k_rad_per_m, double length_m, double* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] { *out = sqz::qpm_envelope(delta_k_rad_per_m, length_m); });
}

sqz_status sqz_beta2_from_d(double dispersion_ps_nm_km, double wavelength_nm, double* out_ps2_per_km) {
    if (any_null(out_ps2_per_km)) return null_argument();
    return guarded([&] { *out_ps2_per_km = sqz::beta2_from_D(dispersion_ps_nm_km, wavelength_nm); });
}

sqz_status sqz_triple_overlap(int order_p, double width_p, int order_m, double width_m, int order_n, double width_n,
                              double* out) {
    if (any_null(out)) return null_argument();
    return guarded([&] {
        *out = sqz::triple_overlap({order_p, width_p}, {order_m, width_m}, {order_n, width_n});
    });
}

sqz_status sqz_synth_sweep(double a_per_watt, double rho, double g_power, const double* pumps_w, size_t count,
                           double noise_sigma_db, uint64_t seed, sqz_observation* out) {
    if (count > 0 && any_null(pumps_w, out)) return null_argument();
    return guarded([&] {
        const auto obs = sqz::synth_sweep(a_per_watt, rho, g_power, std::span<const double>(pumps_w, count),
                                          noise_sigma_db, seed);
        for (size_t i = 0; i < obs.size(); ++i) {
            out[i] = {obs[i].pump_w, obs[i].measured_minus_db, obs[i].measured_plus_db, obs[i].weight};
        }
    });
}

sqz_status sqz_residual_rms(const sqz_observation* observations, size_t count, double a_per_watt, double rho,
                            double g_power, double* out_db) {
    if (any_null(out_db) || (count > 0 && observations == nullptr)) return null_argument();
    return guarded([&] { *out_db = sqz::residual_rms(from_c(observations, count), a_per_watt, rho, g_power); });
}

sqz_status sqz_fit_opa_params(const sqz_observation* observations, size_t count, double g_power,
                              sqz_fit_result* out) {
    if (any_null(out) || (count > 0 && observations == nullptr)) return null_argument();
    return guarded([&] {
        const sqz::FitResult fit = sqz::fit_opa_params(from_c(observations, count), g_power);
        *out = {fit.a_per_watt,       fit.rho,      fit.residual_rms_db, fit.iterations,
                fit.converged ? 1 : 0, fit.a_stderr, fit.rho_stderr};
    });
}

sqz_status sqz_config_parse(const char* text, sqz_config** out) {
    if (any_null(text, out)) return null_argument();
    *out = nullptr;
    return guarded([&] { *out = new sqz_config{sqz::parse_config(text)}; });
}

void sqz_config_free(sqz_config* config) { delete config; }

sqz_status sqz_config_detection_power_gain(const sqz_config* config, double* out) {
    if (any_null(config, out)) return null_argument();
    return guarded([&] { *out = sqz::require(config->config.chain.detection_power_gain, "chain", "gain_db"); });
}

sqz_status sqz_run(const sqz_config* config, const char* command, const char* data_csv, uint64_t seed,
                   sqz_result** out) {
    if (any_null(config, command, out)) return null_argument();
    *out = nullptr;
    return guarded([&] {
        std::optional<std::string_view> data;
        if (data_csv != nullptr) data = data_csv;
        auto result = sqz::run_command(command, config->config, data, seed);
        *out = new sqz_result{std::move(result.csv), std::move(result.summary)};
    });
}

const char* sqz_result_csv(const sqz_result* result) { return result ? result->csv.c_str() : ""; }

const char* sqz_result_summary(const sqz_result* result) { return result ? result->summary.c_str() : ""; }

void sqz_result_free(sqz_result* result) { delete result; }

}  // extern "C"
