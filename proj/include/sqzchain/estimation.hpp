#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sqz {

struct SweepObservation {
    double pump_w = 0.0;
    double measured_minus_db = 0.0;
    double measured_plus_db = 0.0;
    double weight = 1.0;
};

struct FitResult {
    double a_per_watt = 0.0;
    double rho = 0.0;
    double residual_rms_db = 0.0;
    int iterations = 0;
    bool converged = false;
    double a_stderr = 0.0;
    double rho_stderr = 0.0;
};

struct FitOptions {
    int max_iterations = 200;
    double step_tolerance = 1e-9;
    double fd_relative_step = 1e-6;
};

// SplitMix64 with a Box-Muller normal transform. The algorithm is fixed so
// that a seed reproduces the same noise everywhere.
class NoiseRng {
public:
    explicit NoiseRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept;
    double next_unit() noexcept;  // [0, 1), 53-bit
    double next_normal() noexcept;

private:
    std::uint64_t state_;
};

std::vector<SweepObservation> synth_sweep(double a_per_watt, double rho, double g_power,
                                          std::span<const double> pumps_w, double noise_sigma_db,
                                          std::uint64_t seed);

double residual_rms(std::span<const SweepObservation> observations, double a_per_watt, double rho,
                    double g_power);

FitResult fit_opa_params(std::span<const SweepObservation> observations, double g_power,
                         const FitOptions& options = {});

}  // namespace sqz
