#include "sqzchain/commands.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "sqzchain/csv.hpp"
#include "sqzchain/detection_chain.hpp"
#include "sqzchain/error.hpp"
#include "sqzchain/estimation.hpp"
#include "sqzchain/spectral_model.hpp"

namespace sqz {

namespace {

double loss_db(double fraction) { return 0.0 - to_decibels(1.0 - fraction); }

std::string percent(double fraction) { return fmt::format("{:.1f}%", 100.0 * fraction); }

ChainConfig chain_from(const RunConfig& config) {
    const auto& c = config.chain;
    ChainConfig chain;
    if (c.shg_coeff_pct_per_w) {
        chain.generator.shg_coeff_per_watt = *c.shg_coeff_pct_per_w / 100.0;
    } else if (c.shg_norm_pct_per_w_cm2 && c.length_cm) {
        chain.generator.shg_coeff_per_watt = shg_coeff_from_normalized(*c.shg_norm_pct_per_w_cm2, *c.length_cm) / 100.0;
    } else {
        require(c.shg_coeff_pct_per_w, "chain", "shg_coeff_pct_per_w");
    }
    chain.generator.effective_loss = require(c.rho, "chain", "rho");
    chain.generator.length_cm = c.length_cm.value_or(4.5);
    chain.generator.center_wavelength_nm = c.center_wavelength_nm.value_or(1545.3);
    chain.generator.excess_loss_per_watt = c.excess_loss_per_w.value_or(0.0);
    chain.effective_chain_loss = chain.generator.effective_loss;
    chain.detection_power_gain = require(c.detection_power_gain, "chain", "gain_db");
    return chain;
}

std::vector<double> pumps_from(const RunConfig::Sweep& sweep) {
    if (sweep.pumps_w) return *sweep.pumps_w;
    if (sweep.pump_start_w || sweep.pump_stop_w || sweep.pump_count) {
        const double start = require(sweep.pump_start_w, "sweep", "pump_start_w");
        const double stop = require(sweep.pump_stop_w, "sweep", "pump_stop_w");
        const auto count = static_cast<int>(require(sweep.pump_count, "sweep", "pump_count"));
        if (stop < start) fail(ErrorCode::ConfigRange, "sweep.pump_stop_w is below sweep.pump_start_w");
        std::vector<double> pumps;
        for (int i = 0; i < count; ++i) {
            pumps.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
        }
        return pumps;
    }
    return require(sweep.pumps_w, "sweep", "pumps_w");
}

std::string chain_summary(const ChainConfig& chain) {
    const double a = chain.generator.shg_coeff_per_watt;
    return fmt::format("a = {:.4g} W^-1 ({:.4g} %/W), rho = {:.4g} ({}, {:.2f} dB), G = {:.4g} ({:.2f} dB)\n", a,
                       100.0 * a, chain.effective_chain_loss, percent(chain.effective_chain_loss),
                       loss_db(chain.effective_chain_loss), chain.detection_power_gain,
                       to_decibels(chain.detection_power_gain));
}

CommandOutput run_sweep(const RunConfig& config, std::uint64_t seed) {
    const ChainConfig chain = chain_from(config);
    chain.validate();
    const std::vector<double> pumps = pumps_from(config.sweep);
    const double sigma = config.sweep.noise_sigma_db.value_or(0.0);

    Table table;
    table.headers = {"pump_w", "r_minus_db", "r_plus_db", "rp_minus_db", "rp_plus_db"};
    NoiseRng rng(seed);
    double best_db = 0.0;
    double best_pump = 0.0;
    for (const auto& [pump, levels] : pump_sweep(chain.generator, pumps)) {
        const MeasuredLevels measured = chain_forward(chain, pump);
        double rp_minus = to_decibels(measured.rp_minus());
        double rp_plus = to_decibels(measured.rp_plus());
        if (sigma > 0.0) {
            rp_minus += sigma * rng.next_normal();
            rp_plus += sigma * rng.next_normal();
        }
        if (rp_minus < best_db) {
            best_db = rp_minus;
            best_pump = pump;
        }
        table.rows.push_back({pump, to_decibels(levels.r_minus()), to_decibels(levels.r_plus()), rp_minus, rp_plus});
    }

    CommandOutput out;
    out.csv = write_csv(table);
    out.summary = "sweep: " + chain_summary(chain);
    out.summary += fmt::format("points: {}, noise sigma: {:.3g} dB, seed: {}\n", pumps.size(), sigma, seed);
    out.summary += fmt::format("best measured squeezing: {:.2f} dB at {:.4g} W\n", best_db, best_pump);
    if (chain.generator.shg_coeff_per_watt > 0.0) {
        const double p_opt = optimal_pump(chain.generator.shg_coeff_per_watt, chain.detection_power_gain);
        out.summary += fmt::format("optimal pump: {:.4g} W ({:.2f} dB)\n", p_opt,
                                   to_decibels(chain_forward(chain, p_opt).rp_minus()));
    }
    return out;
}

CommandOutput run_fit(const RunConfig& config, std::optional<std::string_view> data_csv) {
    if (!data_csv) fail(ErrorCode::ConfigMissingKey, "fit needs sweep data (--data <csv>)");
    const double gain = require(config.chain.detection_power_gain, "chain", "gain_db");
    const auto observations = observations_from_csv(*data_csv);
    const FitResult fit = fit_opa_params(observations, gain);

    Table table;
    table.headers = {"a_per_watt", "rho", "residual_rms_db", "converged", "a_stderr", "rho_stderr", "iterations"};
    table.rows.push_back({fit.a_per_watt, fit.rho, fit.residual_rms_db, fit.converged ? 1.0 : 0.0, fit.a_stderr,
                          fit.rho_stderr, static_cast<double>(fit.iterations)});

    CommandOutput out;
    out.csv = write_csv(table);
    out.summary = fmt::format("fit: {} observations, G = {:.4g} ({:.2f} dB)\n", observations.size(), gain,
                              to_decibels(gain));
    out.summary += fmt::format("a = {:.6g} W^-1 ({:.4g} %/W) +- {:.2g}\n", fit.a_per_watt, 100.0 * fit.a_per_watt,
                               fit.a_stderr);
    out.summary += fmt::format("rho = {:.6g} ({}, {:.2f} dB) +- {:.2g}\n", fit.rho, percent(fit.rho),
                               loss_db(fit.rho), fit.rho_stderr);
    out.summary += fmt::format("residual rms: {:.4g} dB, iterations: {}, converged: {}\n", fit.residual_rms_db,
                               fit.iterations, fit.converged ? "yes" : "no");
    return out;
}

std::vector<FiberSegment> fibers_from(const RunConfig::Fibers& f) {
    if (!f.length_m) {
        for (const auto* list : {&f.dispersion_ps_nm_km, &f.reference_wavelength_nm, &f.static_phase_rad}) {
            if (*list) require(f.length_m, "fibers", "length_m");
        }
        return {};
    }
    const std::size_t count = f.length_m->size();
    auto pick = [count](const std::optional<std::vector<double>>& list, const char* key, double fallback,
                        std::size_t i) {
        if (!list) return fallback;
        if (list->size() == 1) return list->front();
        if (list->size() != count) {
            fail(ErrorCode::ConfigRange,
                 fmt::format("fibers.{} has {} entries for {} fibers", key, list->size(), count));
        }
        return (*list)[i];
    };
    std::vector<FiberSegment> fibers;
    for (std::size_t i = 0; i < count; ++i) {
        FiberSegment seg;
        seg.length_m = (*f.length_m)[i];
        seg.dispersion_ps_nm_km = pick(f.dispersion_ps_nm_km, "dispersion_ps_nm_km", kDefaultDispersionPsNmKm, i);
        seg.reference_wavelength_nm = pick(f.reference_wavelength_nm, "reference_wavelength_nm", 1545.0, i);
        seg.static_phase_rad = pick(f.static_phase_rad, "static_phase_rad", 0.0, i);
        fibers.push_back(seg);
    }
    return fibers;
}

CommandOutput run_spectrum(const RunConfig& config) {
    const ChainConfig chain = chain_from(config);
    const auto& s = config.spectrum;
    const double center = require(config.chain.center_wavelength_nm, "chain", "center_wavelength_nm");
    const SpectralGrid grid = SpectralGrid::uniform(center, require(s.wavelength_start_nm, "spectrum", "wavelength_start_nm"),
                                                    require(s.wavelength_stop_nm, "spectrum", "wavelength_stop_nm"),
                                                    require(s.wavelength_step_nm, "spectrum", "wavelength_step_nm"));
    const double pump = require(s.pump_w, "spectrum", "pump_w");
    const double default_length_m = chain.generator.length_cm / 100.0;

    PhaseMatchingEnvelope generation{center, s.gen_mismatch_slope.value_or(0.0), s.gen_length_m.value_or(default_length_m)};
    DetectorRolloff rolloff;
    rolloff.peak_gain_db = s.det_peak_gain_db;
    rolloff.envelope = {center, s.det_mismatch_slope.value_or(0.0), s.det_length_m.value_or(default_length_m)};
    const std::vector<FiberSegment> fibers = fibers_from(config.fibers);

    const auto rows = synthesize_spectrum(chain, grid, generation, fibers, rolloff, pump);
    Table table;
    table.comments = {"qualitative model: ripple positions depend on fiber lengths and dispersion; "
                      "levels in dB relative to the amplified vacuum at the center wavelength"};
    table.headers = {"wavelength_nm", "sideband_thz", "vacuum_db", "squeezed_db", "antisqueezed_db"};
    double worst_relative = -1e300;
    for (const auto& row : rows) {
        table.rows.push_back({row.wavelength_nm, row.sideband_thz, to_decibels(row.vacuum_level),
                              to_decibels(row.squeezed_level), to_decibels(row.antisqueezed_level)});
        worst_relative = std::max(worst_relative, to_decibels(row.squeezed_level / row.vacuum_level));
    }

    CommandOutput out;
    out.csv = write_csv(table);
    out.summary = "spectrum (qualitative model): " + chain_summary(chain);
    out.summary += fmt::format("band: {:.2f}-{:.2f} nm around {:.2f} nm, {} rows, {} fibers, pump {:.4g} W\n",
                               grid.wavelengths_nm.front(), grid.wavelengths_nm.back(), center, rows.size(),
                               fibers.size(), pump);
    out.summary += fmt::format("highest squeezed-quadrature level relative to local vacuum: {:.2f} dB\n", worst_relative);
    return out;
}

CommandOutput run_budget(const RunConfig& config) {
    const auto& b = config.budget;
    const bool decompose = b.total_loss || b.waveguide_loss;
    if (!b.losses && !decompose) require(b.losses, "budget", "losses");

    CommandOutput out;
    Table table;
    std::vector<Cell> row;
    if (b.losses) {
        if (b.names && b.names->size() != b.losses->size()) {
            fail(ErrorCode::ConfigRange, fmt::format("budget.names has {} entries for {} losses", b.names->size(),
                                                     b.losses->size()));
        }
        LossBudget budget;
        for (std::size_t i = 0; i < b.losses->size(); ++i) {
            budget.emplace_back(b.names ? (*b.names)[i] : fmt::format("stage{}", i + 1), (*b.losses)[i]);
        }
        for (const auto& element : budget) {
            out.summary += fmt::format("{}: {} ({:.3f} dB)\n", element.name, percent(element.fraction),
                                       loss_db(element.fraction));
        }
        const double total = compose_losses(budget);
        out.summary += fmt::format("total: {} ({:.3f} dB)\n", percent(total), loss_db(total));
        table.headers.insert(table.headers.end(), {"total_loss", "total_loss_db"});
        row.insert(row.end(), {total, loss_db(total)});
    }
    if (decompose) {
        const double total = require(b.total_loss, "budget", "total_loss");
        const double waveguide = require(b.waveguide_loss, "budget", "waveguide_loss");
        const double side = per_side_loss(total, waveguide);
        out.summary += fmt::format("per-side: {} ({:.3f} dB) from total {} and waveguide {}\n", percent(side),
                                   loss_db(side), percent(total), percent(waveguide));
        table.headers.push_back("per_side_loss");
        row.push_back(side);
    }
    table.rows.push_back(std::move(row));
    out.csv = write_csv(table);
    return out;
}

CommandOutput run_infer(const RunConfig& config) {
    const auto& b = config.budget;
    const double measured = require(b.measured_db, "budget", "measured_db");
    double detection = 0.0;
    if (b.detection_losses) {
        detection = compose_losses(*b.detection_losses);
    } else {
        detection = require(b.detection_loss, "budget", "detection_loss");
    }
    const double onchip = infer_onchip(measured, detection);

    Table table;
    table.headers = {"measured_db", "detection_loss", "onchip_db"};
    table.rows.push_back({measured, detection, onchip});
    CommandOutput out;
    out.csv = write_csv(table);
    out.summary = fmt::format("measured: {:.2f} dB\ndetection loss: {} ({:.3f} dB)\non-chip: {:.2f} dB\n", measured,
                              percent(detection), loss_db(detection), onchip);
    return out;
}

}  // namespace

CommandOutput run_command(std::string_view name, const RunConfig& config, std::optional<std::string_view> data_csv,
                          std::uint64_t seed) {
    if (name == "sweep") return run_sweep(config, seed);
    if (name == "fit") return run_fit(config, data_csv);
    if (name == "spectrum") return run_spectrum(config);
    if (name == "budget") return run_budget(config);
    if (name == "infer") return run_infer(config);
    fail(ErrorCode::ConfigSyntax, fmt::format("unknown command '{}'", name));
}

}  // namespace sqz
