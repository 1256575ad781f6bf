#include "sqzchain/spectral_model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "property.hpp"
#include "spectrum_oracles.hpp"
#include "sqzchain/error.hpp"

using namespace sqz;
using sqz::testing::Gen;
using sqz::testing::kPropertyCases;
using sqz::testing::rel_diff;

namespace {

ChainConfig paper_chain() {
    ChainConfig chain;
    chain.generator.shg_coeff_per_watt = 8.23;
    chain.generator.effective_loss = 0.21;
    chain.effective_chain_loss = 0.21;
    chain.detection_power_gain = 100.0;
    return chain;
}

std::vector<FiberSegment> pigtails(double length_each_m) {
    return {{length_each_m, 17.0, 1545.0, 0.0}, {length_each_m, 17.0, 1545.0, 0.0}};
}

}  // namespace

TEST(SidebandFrequency, Examples) {
    EXPECT_EQ(sideband_frequency(1545.3, 1545.3), 0.0);
    EXPECT_NEAR(sideband_frequency(1595.0, 1545.3), 6.0451, 5e-4);
    EXPECT_NEAR(sideband_frequency(1545.0, 1545.3), 0.03767, 5e-6);
    EXPECT_EQ(sideband_frequency(1595.0, 1545.3), sideband_frequency(1545.3, 1595.0));
    EXPECT_THROW(sideband_frequency(0.0, 1545.3), Error);
    EXPECT_THROW(sideband_frequency(1545.0, -1.0), Error);
}

TEST(QpmEnvelope, Examples) {
    EXPECT_EQ(qpm_envelope(0.0, 0.045), 1.0);
    EXPECT_NEAR(qpm_envelope(2.0 * std::numbers::pi / 0.045, 0.045), 0.0, 1e-30);

    // Bisection for sinc^2(x) = 1/2 on (1, 2).
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double s = std::sin(mid) / mid;
        (s * s > 0.5 ? lo : hi) = mid;
    }
    EXPECT_NEAR(lo, 1.39156, 5e-6);
    EXPECT_NEAR(qpm_envelope(2.0 * 1.39156 / 0.045, 0.045), 0.5, 1e-5);
    EXPECT_THROW(qpm_envelope(1.0, 0.0), Error);
}

TEST(Beta2FromD, Examples) {
    EXPECT_EQ(beta2_from_D(0.0, 1545.3), 0.0);
    EXPECT_NEAR(beta2_from_D(17.0, 1545.3), -21.55, 0.005);
    EXPECT_DOUBLE_EQ(beta2_from_D(34.0, 1545.3), 2.0 * beta2_from_D(17.0, 1545.3));
    EXPECT_GT(beta2_from_D(-5.0, 1300.0), 0.0);
    EXPECT_THROW(beta2_from_D(17.0, 0.0), Error);
}

TEST(FiberPhase, Examples) {
    const FiberSegment seg{10.0, 17.0, 1545.3, 0.4};
    EXPECT_EQ(fiber_phase(0.0, seg), 0.4);
    const double omega = 2.0 * std::numbers::pi * 6e12;
    const double shift = fiber_phase(omega, seg) - 0.4;
    EXPECT_NEAR(fiber_phase(2.0 * omega, seg) - 0.4, 4.0 * shift, 1e-9);
    // Unit-tracking oracle: 0.5 * (-2.155e-26 s^2/m) * (2 pi 6 THz)^2 * 10 m
    const double d_si = 17.0e-12 / (1e-9 * 1e3);
    const double beta2 = -d_si * 1545.3e-9 * 1545.3e-9 / (2.0 * std::numbers::pi * 299792458.0);
    const double oracle = 0.5 * beta2 * omega * omega * 10.0;
    EXPECT_NEAR(oracle, -153.146, 5e-3);
    EXPECT_LE(rel_diff(shift, oracle), 1e-12);
}

TEST(TotalFiberPhase, MatchesSiOracle) {
    const auto fibers = pigtails(1.5);
    for (double nm : {1490.0, 1520.0, 1545.3, 1580.0, 1600.0}) {
        const double oracle = 2.0 * sqz::testing::si_fiber_phase(nm, 1545.3, 17.0, 1545.0, 1.5);
        EXPECT_NEAR(total_fiber_phase(fibers, nm, 1545.3), oracle, 1e-9 * std::max(1.0, std::abs(oracle)));
    }
}

TEST(SpectralGrid, UniformAndValidation) {
    const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1490.0, 1600.0, 0.1);
    EXPECT_EQ(grid.wavelengths_nm.size(), 1101u);
    EXPECT_NEAR(grid.wavelengths_nm.back(), 1600.0, 1e-9);
    SpectralGrid bad{1545.3, {1500.0, 1510.0, 1505.0}};
    EXPECT_THROW(bad.validate(), Error);
    SpectralGrid dup{1545.3, {1500.0, 1500.0}};
    EXPECT_THROW(dup.validate(), Error);
    SpectralGrid descending{1545.3, {1600.0, 1550.0, 1500.0}};
    EXPECT_NO_THROW(descending.validate());
}

TEST(SynthesizeSpectrum, FlatWithoutDispersionOrRolloff) {
    const ChainConfig chain = paper_chain();
    const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1490.0, 1600.0, 0.5);
    const std::vector<FiberSegment> fibers{{3.0, 0.0, 1545.0, 0.0}};
    const auto rows = synthesize_spectrum(chain, grid, PhaseMatchingEnvelope{}, fibers, DetectorRolloff{}, 0.6442);
    const MeasuredLevels ref = chain_forward(chain, 0.6442);
    for (const auto& row : rows) {
        EXPECT_NEAR(row.vacuum_level, 1.0, 1e-12);
        EXPECT_LE(rel_diff(row.squeezed_level, ref.rp_minus()), 1e-12);
        EXPECT_LE(rel_diff(row.antisqueezed_level, ref.rp_plus()), 1e-12);
    }
}

TEST(SynthesizeSpectrum, CenterRowEqualsChainForward) {
    const ChainConfig chain = paper_chain();
    const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1540.3, 1550.3, 0.5);
    ASSERT_EQ(grid.wavelengths_nm[10], 1545.3);
    PhaseMatchingEnvelope gen{1545.3, 0.8, 0.045};
    DetectorRolloff rolloff;
    rolloff.envelope = {1545.3, 0.8, 0.045};
    const auto rows = synthesize_spectrum(chain, grid, gen, pigtails(2.0), rolloff, 0.5);
    const MeasuredLevels ref = chain_forward(chain, 0.5);
    EXPECT_EQ(rows[10].sideband_thz, 0.0);
    EXPECT_EQ(rows[10].vacuum_level, 1.0);
    EXPECT_EQ(rows[10].squeezed_level, ref.rp_minus());
    EXPECT_EQ(rows[10].antisqueezed_level, ref.rp_plus());
}

TEST(SynthesizeSpectrum, RolloffLowersVacuumAwayFromCenter) {
    const ChainConfig chain = paper_chain();
    const SpectralGrid grid{1545.3, {1545.3, 1570.0, 1595.0}};
    DetectorRolloff rolloff;
    rolloff.envelope = {1545.3, 0.77, 0.045};
    const auto rows = synthesize_spectrum(chain, grid, PhaseMatchingEnvelope{}, {}, rolloff, 0.5);
    EXPECT_GT(rows[0].vacuum_level, rows[1].vacuum_level);
    EXPECT_GT(rows[1].vacuum_level, rows[2].vacuum_level);
    // Relative squeezing survives because the reduced gain is still large.
    EXPECT_LT(to_decibels(rows[2].squeezed_level / rows[2].vacuum_level), -5.0);
}

TEST(SynthesizeSpectrum, CrossingCountDoublesWithFiberLength) {
    const ChainConfig chain = paper_chain();
    const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1490.0, 1600.0, 0.05);
    auto analytic_count = [&](double each_m) {
        std::vector<double> theta;
        for (double nm : grid.wavelengths_nm) {
            theta.push_back(2.0 * sqz::testing::si_fiber_phase(nm, 1545.3, 17.0, 1545.0, each_m));
        }
        return sqz::testing::count_odd_half_pi_crossings(theta);
    };
    // Squeezed trace peaks (theta at odd multiples of pi/2) counted from the synthesized rows.
    auto spectrum_peaks = [&](double each_m) {
        const auto rows = synthesize_spectrum(chain, grid, PhaseMatchingEnvelope{}, pigtails(each_m), DetectorRolloff{}, 0.6442);
        int peaks = 0;
        for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
            const double r = rows[i].squeezed_level;
            if (r > rows[i - 1].squeezed_level && r >= rows[i + 1].squeezed_level && r > rows[i].antisqueezed_level) ++peaks;
        }
        return peaks;
    };
    const int base = analytic_count(1.0);
    const int doubled = analytic_count(2.0);
    EXPECT_GT(base, 10);
    EXPECT_LE(std::abs(doubled - 2 * base), 1);
    EXPECT_LE(std::abs(spectrum_peaks(1.0) - base), 1);
    EXPECT_LE(std::abs(spectrum_peaks(2.0) - doubled), 1);
}

TEST(SynthesizeSpectrum, SqueezedRowWithinLocalChainBounds) {
    Gen gen(41);
    const ChainConfig chain = paper_chain();
    for (int trial = 0; trial < 20; ++trial) {
        const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1490.0, 1600.0, 0.25);
        const PhaseMatchingEnvelope pm{1545.3, gen.uniform(0.0, 2.0), 0.045};
        DetectorRolloff rolloff;
        rolloff.envelope = {1545.3, gen.uniform(0.0, 2.0), 0.045};
        const std::vector<FiberSegment> fibers{{gen.uniform(0.0, 5.0), 17.0, 1545.0, gen.uniform(-3.0, 3.0)}};
        const double pump = gen.uniform(0.0, 1.0);
        const auto rows = synthesize_spectrum(chain, grid, pm, fibers, rolloff, pump);
        for (const auto& row : rows) {
            const double gain = std::max(1.0, 100.0 * rolloff.envelope.value(row.wavelength_nm));
            const MeasuredLevels local =
                measured_levels(opa_output(8.23 * pm.value(row.wavelength_nm), pump, 0.21), gain);
            const double relative = row.squeezed_level / row.vacuum_level;
            ASSERT_GE(relative, local.rp_minus() * (1 - 1e-12));
            ASSERT_LE(relative, local.rp_plus() * (1 + 1e-12));
        }
    }
}

TEST(SynthesizeSpectrum, DeterministicAcrossCalls) {
    const ChainConfig chain = paper_chain();
    const SpectralGrid grid = SpectralGrid::uniform(1545.3, 1490.0, 1600.0, 0.5);
    const auto a = synthesize_spectrum(chain, grid, PhaseMatchingEnvelope{}, pigtails(1.0), DetectorRolloff{}, 0.5);
    const auto b = synthesize_spectrum(chain, grid, PhaseMatchingEnvelope{}, pigtails(1.0), DetectorRolloff{}, 0.5);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].squeezed_level, b[i].squeezed_level);
        EXPECT_EQ(a[i].antisqueezed_level, b[i].antisqueezed_level);
    }
}

TEST(SpectralProperties, SidebandAndEnvelope) {
    Gen gen(42);
    for (int i = 0; i < kPropertyCases; ++i) {
        const double a = gen.uniform(1000.0, 2000.0);
        const double b = gen.uniform(1000.0, 2000.0);
        ASSERT_EQ(sideband_frequency(a, b), sideband_frequency(b, a));
        if (a != b) ASSERT_GT(sideband_frequency(a, b), 0.0);
        const double dk = gen.uniform(1.0, 5000.0);
        const double len = gen.uniform(0.001, 0.1);
        const double env = qpm_envelope(dk, len);
        ASSERT_LT(env, 1.0);
        ASSERT_GE(env, 0.0);
        ASSERT_EQ(env, qpm_envelope(-dk, len));
    }
}
