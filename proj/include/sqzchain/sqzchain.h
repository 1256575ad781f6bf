/*
 * C interface to the sqzchain squeezed-light chain toolkit.
 *
 * Every fallible function returns an sqz_status; on failure the message is
 * available from sqz_last_error() on the calling thread until the next call
 * into the library from that thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function.
 */
#ifndef SQZCHAIN_H
#define SQZCHAIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SQZ_BUILDING_LIBRARY)
#    define SQZ_API __declspec(dllexport)
#  else
#    define SQZ_API __declspec(dllimport)
#  endif
#else
#  define SQZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqz_status {
    SQZ_OK = 0,
    SQZ_E_DOMAIN = 1,
    SQZ_E_NONPHYSICAL = 2,
    SQZ_E_UNDERDETERMINED = 3,
    SQZ_E_SINGULAR = 4,
    SQZ_E_CONFIG_SYNTAX = 10,
    SQZ_E_CONFIG_UNKNOWN_KEY = 11,
    SQZ_E_CONFIG_MISSING_KEY = 12,
    SQZ_E_CONFIG_RANGE = 13,
    SQZ_E_DATA = 14,
    SQZ_E_INTERNAL = 20,
    SQZ_E_NULL_ARGUMENT = 21
} sqz_status;

/* Linear variances relative to vacuum; minus <= plus. */
typedef struct sqz_levels {
    double minus;
    double plus;
} sqz_levels;

typedef struct sqz_observation {
    double pump_w;
    double measured_minus_db;
    double measured_plus_db;
    double weight;
} sqz_observation;

typedef struct sqz_fit_result {
    double a_per_watt;
    double rho;
    double residual_rms_db;
    int iterations;
    int converged;
    double a_stderr;
    double rho_stderr;
} sqz_fit_result;

typedef struct sqz_config sqz_config;
typedef struct sqz_result sqz_result;

SQZ_API const char* sqz_version(void);
SQZ_API const char* sqz_last_error(void);
/* Stable machine-readable name, e.g. "E_NONPHYSICAL". */
SQZ_API const char* sqz_status_name(sqz_status status);
/* 0 for SQZ_OK, 2 for configuration errors, 3 otherwise. */
SQZ_API int sqz_status_exit_code(sqz_status status);

/* noise algebra */
SQZ_API sqz_status sqz_to_decibels(double ratio, double* out_db);
SQZ_API sqz_status sqz_from_decibels(double db, double* out_ratio);
SQZ_API sqz_status sqz_apply_loss(sqz_levels levels, double rho, sqz_levels* out);
SQZ_API sqz_status sqz_remove_loss(sqz_levels levels, double rho, sqz_levels* out);
SQZ_API sqz_status sqz_compose_losses(const double* fractions, size_t count, double* out_total);
SQZ_API sqz_status sqz_project_phase(sqz_levels levels, double theta, double* out_variance);

/* generation OPA */
SQZ_API sqz_status sqz_opa_output(double a_per_watt, double pump_w, double rho, sqz_levels* out);
SQZ_API sqz_status sqz_shg_coeff_from_normalized(double pct_per_w_cm2, double length_cm, double* out_pct_per_w);
SQZ_API sqz_status sqz_optimal_pump(double a_per_watt, double g_power, double* out_pump_w);

/* detection chain */
SQZ_API sqz_status sqz_measured_levels(sqz_levels levels, double g_power, sqz_levels* out);
SQZ_API sqz_status sqz_antisqueeze_suppression(double g_power, double* out);
SQZ_API sqz_status sqz_chain_forward(double a_per_watt, double chain_loss, double g_power, double pump_w,
                                     sqz_levels* out);
SQZ_API sqz_status sqz_infer_onchip(double measured_db, double detection_loss, double* out_db);
SQZ_API sqz_status sqz_per_side_loss(double total_loss, double waveguide_loss, double* out);

/* spectral model */
SQZ_API sqz_status sqz_sideband_frequency(double wavelength_nm, double center_nm, double* out_thz);
SQZ_API sqz_status sqz_qpm_envelope(double delta_k_rad_per_m, double length_m, double* out);
SQZ_API sqz_status sqz_beta2_from_d(double dispersion_ps_nm_km, double wavelength_nm, double* out_ps2_per_km);

/* transverse modes */
SQZ_API sqz_status sqz_triple_overlap(int order_p, double width_p, int order_m, double width_m, int order_n,
                                      double width_n, double* out);

/* estimation; `out` must hold `count` observations */
SQZ_API sqz_status sqz_synth_sweep(double a_per_watt, double rho, double g_power, const double* pumps_w, size_t count,
                                   double noise_sigma_db, uint64_t seed, sqz_observation* out);
SQZ_API sqz_status sqz_residual_rms(const sqz_observation* observations, size_t count, double a_per_watt, double rho,
                                    double g_power, double* out_db);
SQZ_API sqz_status sqz_fit_opa_params(const sqz_observation* observations, size_t count, double g_power,
                                      sqz_fit_result* out);

/* configuration documents and commands */
SQZ_API sqz_status sqz_config_parse(const char* text, sqz_config** out);
SQZ_API void sqz_config_free(sqz_config* config);
/* Detection power gain from [chain] gain_db; SQZ_E_CONFIG_MISSING_KEY when absent. */
SQZ_API sqz_status sqz_config_detection_power_gain(const sqz_config* config, double* out);

/* command: sweep, fit, spectrum, budget, infer. data_csv may be NULL. */
SQZ_API sqz_status sqz_run(const sqz_config* config, const char* command, const char* data_csv, uint64_t seed,
                           sqz_result** out);
SQZ_API const char* sqz_result_csv(const sqz_result* result);
SQZ_API const char* sqz_result_summary(const sqz_result* result);
SQZ_API void sqz_result_free(sqz_result* result);

#ifdef __cplusplus
}
#endif

#endif /* SQZCHAIN_H */
