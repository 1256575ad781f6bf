#include "sqzchain/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sqzchain/detection_chain.hpp"
#include "sqzchain/error.hpp"

namespace sqz {

std::uint64_t NoiseRng::next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double NoiseRng::next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseRng::next_normal() noexcept {
    const double u1 = 1.0 - next_unit();  // (0, 1]
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

struct ModelDb {
    double minus;
    double plus;
};

ModelDb chain_model_db(double a, double rho, double g_power, double pump_w) {
    const MeasuredLevels m = measured_levels(opa_output(a, pump_w, rho), g_power);
    return {to_decibels(m.rp_minus()), to_decibels(m.rp_plus())};
}

void check_observations(std::span<const SweepObservation> observations) {
    for (const auto& obs : observations) {
        if (!(obs.pump_w >= 0.0) || !std::isfinite(obs.pump_w)) {
            fail(ErrorCode::Domain, "observation pump power must be nonnegative and finite");
        }
        if (!std::isfinite(obs.measured_minus_db) || !std::isfinite(obs.measured_plus_db)) {
            fail(ErrorCode::Domain, "observation levels must be finite");
        }
        if (!(obs.weight >= 0.0) || !std::isfinite(obs.weight)) {
            fail(ErrorCode::Domain, "observation weights must be nonnegative and finite");
        }
    }
}

double logistic(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// Unconstrained coordinates: a = exp(u), rho = logistic(v).
struct Point {
    double u;
    double v;

    double a() const { return std::exp(u); }
    double rho() const { return logistic(v); }
};

class Problem {
public:
    Problem(std::span<const SweepObservation> obs, double g_power) : obs_(obs), g_power_(g_power) {}

    std::size_t size() const { return 2 * obs_.size(); }

    // Weighted dB residuals, both branches stacked.
    void residuals(double a, double rho, std::vector<double>& out) const {
        out.resize(size());
        for (std::size_t i = 0; i < obs_.size(); ++i) {
            const ModelDb m = chain_model_db(a, rho, g_power_, obs_[i].pump_w);
            const double sw = std::sqrt(obs_[i].weight);
            out[2 * i] = sw * (m.minus - obs_[i].measured_minus_db);
            out[2 * i + 1] = sw * (m.plus - obs_[i].measured_plus_db);
        }
    }

    double cost(const Point& p, std::vector<double>& scratch) const {
        const double rho = p.rho();
        if (!(rho < 1.0) || !std::isfinite(p.a())) return std::numeric_limits<double>::infinity();
        residuals(p.a(), rho, scratch);
        double sum = 0.0;
        for (double r : scratch) sum += r * r;
        return 0.5 * sum;
    }

private:
    std::span<const SweepObservation> obs_;
    double g_power_;
};

struct LocalFit {
    Point point;
    double cost;
    int iterations;
    bool converged;
};

// Forward-difference Jacobian in (u, v), column-major pair.
void jacobian(const Problem& problem, const Point& p, const std::vector<double>& r0, double rel_step,
              std::array<std::vector<double>, 2>& jac) {
    std::vector<double> shifted;
    for (int j = 0; j < 2; ++j) {
        Point q = p;
        double& coord = j == 0 ? q.u : q.v;
        const double h = rel_step * std::max(1.0, std::abs(coord));
        coord += h;
        problem.residuals(q.a(), q.rho(), shifted);
        jac[j].resize(r0.size());
        for (std::size_t i = 0; i < r0.size(); ++i) jac[j][i] = (shifted[i] - r0[i]) / h;
    }
}

bool step_is_small(const Point& from, const Point& to, double tol) {
    const double da = std::abs(to.a() - from.a()) / from.a();
    // rho lives in [0, 1); below 1e-3 the step is measured on that absolute scale.
    const double drho = std::abs(to.rho() - from.rho()) / std::max(from.rho(), 1e-3);
    return std::max(da, drho) < tol;
}

LocalFit levenberg_marquardt(const Problem& problem, Point p, const FitOptions& options) {
    std::vector<double> r;
    std::vector<double> trial_r;
    std::array<std::vector<double>, 2> jac;
    double cost = problem.cost(p, r);
    double damping = 1e-3;

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        if (cost == 0.0) return {p, cost, iter - 1, true};
        jacobian(problem, p, r, options.fd_relative_step, jac);

        double a00 = 0.0, a01 = 0.0, a11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            a00 += jac[0][i] * jac[0][i];
            a01 += jac[0][i] * jac[1][i];
            a11 += jac[1][i] * jac[1][i];
            g0 += jac[0][i] * r[i];
            g1 += jac[1][i] * r[i];
        }

        bool accepted = false;
        while (damping < 1e16) {
            const double d00 = a00 + damping * std::max(a00, 1e-30);
            const double d11 = a11 + damping * std::max(a11, 1e-30);
            const double det = d00 * d11 - a01 * a01;
            if (det > 0.0 && std::isfinite(det)) {
                const Point trial{p.u + (-g0 * d11 + g1 * a01) / det, p.v + (-g1 * d00 + g0 * a01) / det};
                const double trial_cost = problem.cost(trial, trial_r);
                if (trial_cost < cost) {
                    const bool small = step_is_small(p, trial, options.step_tolerance);
                    p = trial;
                    cost = trial_cost;
                    std::swap(r, trial_r);
                    damping = std::max(damping * 0.1, 1e-12);
                    accepted = true;
                    if (small) return {p, cost, iter, true};
                    break;
                }
            }
            damping *= 10.0;
        }
        if (!accepted) {
            // No downhill step at any damping: the point is a local minimum to
            // working precision.
            return {p, cost, iter, true};
        }
    }
    return {p, cost, options.max_iterations, false};
}

}  // namespace

std::vector<SweepObservation> synth_sweep(double a_per_watt, double rho, double g_power,
                                          std::span<const double> pumps_w, double noise_sigma_db,
                                          std::uint64_t seed) {
    if (!(noise_sigma_db >= 0.0) || !std::isfinite(noise_sigma_db)) {
        fail(ErrorCode::Domain, "noise sigma must be nonnegative and finite");
    }
    NoiseRng rng(seed);
    std::vector<SweepObservation> out;
    out.reserve(pumps_w.size());
    for (double pump : pumps_w) {
        const ModelDb m = chain_model_db(a_per_watt, rho, g_power, pump);
        const double n_minus = rng.next_normal();
        const double n_plus = rng.next_normal();
        out.push_back({pump, m.minus + noise_sigma_db * n_minus, m.plus + noise_sigma_db * n_plus, 1.0});
    }
    return out;
}

double residual_rms(std::span<const SweepObservation> observations, double a_per_watt, double rho,
                    double g_power) {
    if (observations.empty()) fail(ErrorCode::Domain, "residual RMS needs at least one observation");
    check_observations(observations);
    double weighted = 0.0;
    double total_weight = 0.0;
    for (const auto& obs : observations) {
        const ModelDb m = chain_model_db(a_per_watt, rho, g_power, obs.pump_w);
        const double dm = m.minus - obs.measured_minus_db;
        const double dp = m.plus - obs.measured_plus_db;
        weighted += obs.weight * (dm * dm + dp * dp);
        total_weight += 2.0 * obs.weight;
    }
    if (!(total_weight > 0.0)) fail(ErrorCode::Domain, "all observation weights are zero");
    return std::sqrt(weighted / total_weight);
}

FitResult fit_opa_params(std::span<const SweepObservation> observations, double g_power,
                         const FitOptions& options) {
    check_observations(observations);
    if (!(g_power >= 1.0)) fail(ErrorCode::Domain, "detection gain must be >= 1");

    std::vector<double> positive;
    for (const auto& obs : observations) {
        if (obs.pump_w > 0.0) positive.push_back(obs.pump_w);
    }
    if (!observations.empty() && positive.empty()) {
        fail(ErrorCode::Singular, "all observations are at zero pump; they carry no information on (a, rho)");
    }
    std::sort(positive.begin(), positive.end());
    positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
    if (positive.size() < 2) {
        fail(ErrorCode::Underdetermined, "fit needs at least two distinct positive pump powers, got " +
                                             std::to_string(positive.size()));
    }

    const Problem problem(observations, g_power);
    const double max_pump = positive.back();
    std::vector<double> scratch;

    // Coarse scan of a*P_max over [1e-3, 1e2] keeps the start grid scale-free.
    constexpr int kScanPoints = 61;
    bool have_best = false;
    LocalFit best{};
    for (double rho0 : {0.05, 0.2, 0.5}) {
        const double v0 = std::log(rho0 / (1.0 - rho0));
        Point start{0.0, v0};
        double start_cost = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kScanPoints; ++k) {
            const double ap = std::pow(10.0, -3.0 + 5.0 * k / (kScanPoints - 1));
            const Point candidate{std::log(ap / max_pump), v0};
            const double c = problem.cost(candidate, scratch);
            if (c < start_cost) {
                start_cost = c;
                start = candidate;
            }
        }
        const LocalFit local = levenberg_marquardt(problem, start, options);
        const double tie = 1e-12 * std::max(best.cost, 1e-300);
        const bool better = !have_best || local.cost < best.cost - tie ||
                            (std::abs(local.cost - best.cost) <= tie && local.point.rho() < best.point.rho());
        if (better) {
            best = local;
            have_best = true;
        }
    }

    FitResult result;
    result.a_per_watt = best.point.a();
    result.rho = best.point.rho();
    result.iterations = best.iterations;
    result.converged = best.converged;
    result.residual_rms_db = residual_rms(observations, result.a_per_watt, result.rho, g_power);

    // Covariance in natural parameters from the (u, v) Jacobian by the chain rule.
    std::vector<double> r;
    problem.residuals(result.a_per_watt, result.rho, r);
    std::array<std::vector<double>, 2> jac;
    jacobian(problem, best.point, r, options.fd_relative_step, jac);
    const double du_da = 1.0 / result.a_per_watt;
    const double dv_drho = 1.0 / (result.rho * (1.0 - result.rho));
    double n00 = 0.0, n01 = 0.0, n11 = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double ja = jac[0][i] * du_da;
        const double jr = jac[1][i] * dv_drho;
        n00 += ja * ja;
        n01 += ja * jr;
        n11 += jr * jr;
        sum_sq += r[i] * r[i];
    }
    const double dof = static_cast<double>(r.size()) - 2.0;
    const double variance = dof > 0.0 ? sum_sq / dof : std::numeric_limits<double>::infinity();
    const double det = n00 * n11 - n01 * n01;
    if (det > 0.0 && std::isfinite(det)) {
        result.a_stderr = std::sqrt(variance * n11 / det);
        result.rho_stderr = std::sqrt(variance * n00 / det);
    } else {
        result.a_stderr = std::numeric_limits<double>::infinity();
        result.rho_stderr = std::numeric_limits<double>::infinity();
    }
    return result;
}

}  // namespace sqz
