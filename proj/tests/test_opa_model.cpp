#include "sqzchain/opa_model.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "property.hpp"
#include "sqzchain/detection_chain.hpp"
#include "sqzchain/error.hpp"

using namespace sqz;
using sqz::testing::Gen;
using sqz::testing::kPropertyCases;
using sqz::testing::rel_diff;

namespace {

// Brute-force argmin of the measured squeezed level: dense scan then golden
// section, straight from the two variance formulas.
double numeric_optimal_pump(double a, double g, double rho) {
    auto measured_minus = [&](double p) {
        const double s = 2.0 * std::sqrt(a * p);
        const double rm = rho + (1 - rho) * std::exp(-s);
        const double rp = rho + (1 - rho) * std::exp(s);
        return (g * g * rm + rp) / (1 + g * g);
    };
    double best = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double p = 3.0 * i / 20000;
        if (measured_minus(p) < measured_minus(best)) best = p;
    }
    double lo = std::max(0.0, best - 3e-4);
    double hi = best + 3e-4;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
        const double x1 = hi - phi * (hi - lo);
        const double x2 = lo + phi * (hi - lo);
        if (measured_minus(x1) < measured_minus(x2)) hi = x2; else lo = x1;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(OpaOutput, ZeroPumpIsVacuum) {
    for (double rho : {0.0, 0.21, 0.9}) {
        EXPECT_EQ(opa_output(8.23, 0.0, rho), NoiseLevels::vacuum());
    }
}

TEST(OpaOutput, UnitSqueezeParameter) {
    const NoiseLevels v = opa_output(4.0, 0.25, 0.0);  // sqrt(aP) = 1
    EXPECT_NEAR(v.r_minus(), 0.13534, 5e-6);
    EXPECT_NEAR(v.r_plus(), 7.38906, 5e-6);
    EXPECT_NEAR(v.product(), 1.0, 1e-14);
}

TEST(OpaOutput, FittedDeviceAtOptimalPump) {
    const NoiseLevels v = opa_output(8.23, 0.6442, 0.21);
    EXPECT_NEAR(v.r_minus(), 0.21790, 5e-6);
    EXPECT_NEAR(v.r_plus(), 79.210, 5e-3);
    EXPECT_NEAR(to_decibels(v.r_minus()), -6.62, 0.005);
    EXPECT_NEAR(to_decibels(v.r_plus()), 18.99, 0.005);
}

TEST(OpaOutput, RejectsNegativeInputs) {
    EXPECT_THROW(opa_output(-1.0, 0.1, 0.1), Error);
    EXPECT_THROW(opa_output(1.0, -0.1, 0.1), Error);
    EXPECT_THROW(opa_output(1.0, 0.1, 1.0), Error);
}

TEST(ShgScaling, Examples) {
    EXPECT_NEAR(shg_coeff_from_normalized(40.0, 4.5), 810.0, 1e-10);
    EXPECT_EQ(shg_coeff_from_normalized(17.5, 1.0), 17.5);
    EXPECT_EQ(shg_coeff_from_normalized(370.0, 1.0), 370.0);
    EXPECT_NEAR(shg_coeff_from_normalized(10.0, 3.0), 4.0 * shg_coeff_from_normalized(10.0, 1.5), 1e-12);
    EXPECT_THROW(shg_coeff_from_normalized(-1.0, 1.0), Error);
    EXPECT_THROW(shg_coeff_from_normalized(1.0, 0.0), Error);
}

TEST(OptimalPump, MatchesNumericMinimization) {
    const double closed = optimal_pump(8.23, 100.0);
    EXPECT_NEAR(closed, 0.6442, 5e-5);
    EXPECT_NEAR(closed, numeric_optimal_pump(8.23, 100.0, 0.21), 1e-6);
    EXPECT_NEAR(closed, numeric_optimal_pump(8.23, 100.0, 0.0), 1e-6);
    EXPECT_NEAR(optimal_pump(3.0, 40.0), numeric_optimal_pump(3.0, 40.0, 0.5), 1e-6);
}

TEST(OptimalPump, EdgeCasesAndScaling) {
    EXPECT_EQ(optimal_pump(8.23, 1.0), 0.0);
    EXPECT_NEAR(optimal_pump(16.46, 100.0), 0.5 * optimal_pump(8.23, 100.0), 1e-15);
    EXPECT_THROW(optimal_pump(0.0, 100.0), Error);
    EXPECT_THROW(optimal_pump(8.23, 0.5), Error);
}

TEST(OptimalPump, StationaryPointOfMeasuredLevel) {
    ChainConfig chain;
    chain.generator.shg_coeff_per_watt = 8.23;
    chain.effective_chain_loss = 0.21;
    chain.detection_power_gain = 100.0;
    const double p = optimal_pump(8.23, 100.0);
    const double h = 1e-5;
    const double slope = (chain_forward(chain, p + h).rp_minus() - chain_forward(chain, p - h).rp_minus()) / (2 * h);
    EXPECT_NEAR(slope, 0.0, 1e-6);
}

TEST(PumpSweep, Examples) {
    OpaParams params;
    params.shg_coeff_per_watt = 8.23;
    params.effective_loss = 0.21;
    const std::vector<double> zero{0.0};
    const auto single = pump_sweep(params, zero);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].first, 0.0);
    EXPECT_EQ(single[0].second, NoiseLevels::vacuum());

    const std::vector<double> at_opt{0.6442};
    EXPECT_EQ(pump_sweep(params, at_opt)[0].second, opa_output(8.23, 0.6442, 0.21));

    std::vector<double> pumps;
    for (int i = 0; i <= 50; ++i) pumps.push_back(0.02 * i);
    const auto sweep = pump_sweep(params, pumps);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        EXPECT_EQ(sweep[i].first, pumps[i]);
        EXPECT_LT(sweep[i].second.r_minus(), sweep[i - 1].second.r_minus());
        EXPECT_GT(sweep[i].second.r_plus(), sweep[i - 1].second.r_plus());
    }
    const std::vector<double> bad{0.1, -0.2};
    EXPECT_THROW(pump_sweep(params, bad), Error);
}

TEST(PumpSweep, PumpIndependentLossByDefault) {
    OpaParams params;
    params.shg_coeff_per_watt = 8.23;
    params.effective_loss = 0.21;
    EXPECT_EQ(loss_at_pump(params.effective_loss, params.excess_loss_per_watt, 0.9), 0.21);

    // With the hook engaged, the floor rises with pump power.
    params.excess_loss_per_watt = 0.1;
    const std::vector<double> pumps{2.0};
    const NoiseLevels v = pump_sweep(params, pumps)[0].second;
    EXPECT_EQ(v, opa_output(8.23, 2.0, 0.21 + 0.1 * 2.0));
    EXPECT_GT(v.r_minus(), opa_output(8.23, 2.0, 0.21).r_minus());
}

TEST(OpaProperties, UncertaintyProduct) {
    Gen gen(21);
    for (int i = 0; i < kPropertyCases; ++i) {
        const double a = gen.log_uniform(0.01, 50.0);
        const double p = gen.coin() ? 0.0 : gen.log_uniform(1e-4, 2.0);
        const double rho = gen.coin() ? 0.0 : gen.uniform(1e-3, 0.99);
        const NoiseLevels v = opa_output(a, p, rho);
        if (rho == 0.0 || p == 0.0) {
            ASSERT_NEAR(v.product(), 1.0, 1e-10);
        } else {
            // Closed form: rho^2 + 2 rho (1 - rho) cosh(s) + (1 - rho)^2
            const double s = 2.0 * std::sqrt(a * p);
            const double expected = rho * rho + 2.0 * rho * (1 - rho) * std::cosh(s) + (1 - rho) * (1 - rho);
            ASSERT_LE(rel_diff(v.product(), expected), 1e-10);
            ASSERT_GT(v.product(), 1.0);
        }
    }
}

TEST(OpaProperties, FactorsThroughLossChannel) {
    Gen gen(22);
    for (int i = 0; i < kPropertyCases; ++i) {
        const double a = gen.log_uniform(0.01, 50.0);
        const double p = gen.log_uniform(1e-4, 2.0);
        const double rho = gen.uniform(0.0, 0.99);
        const NoiseLevels direct = opa_output(a, p, rho);
        const NoiseLevels composed = apply_loss(opa_output(a, p, 0.0), rho);
        ASSERT_LE(rel_diff(direct.r_minus(), composed.r_minus()), 1e-12);
        ASSERT_LE(rel_diff(direct.r_plus(), composed.r_plus()), 1e-12);
        ASSERT_GE(direct.r_minus(), rho);
    }
}
