#include "sqzchain/sqzchain.h"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

TEST(CApi, Version) { EXPECT_STREQ(sqz_version(), "0.1.0"); }

TEST(CApi, StatusNamesAndExitCodes) {
    EXPECT_STREQ(sqz_status_name(SQZ_OK), "OK");
    EXPECT_STREQ(sqz_status_name(SQZ_E_NONPHYSICAL), "E_NONPHYSICAL");
    EXPECT_STREQ(sqz_status_name(SQZ_E_CONFIG_RANGE), "E_CONFIG_RANGE");
    EXPECT_EQ(sqz_status_exit_code(SQZ_OK), 0);
    EXPECT_EQ(sqz_status_exit_code(SQZ_E_CONFIG_SYNTAX), 2);
    EXPECT_EQ(sqz_status_exit_code(SQZ_E_CONFIG_MISSING_KEY), 2);
    EXPECT_EQ(sqz_status_exit_code(SQZ_E_DOMAIN), 3);
    EXPECT_EQ(sqz_status_exit_code(SQZ_E_SINGULAR), 3);
}

TEST(CApi, NullOutputsAreRejected) {
    EXPECT_EQ(sqz_to_decibels(2.0, nullptr), SQZ_E_NULL_ARGUMENT);
    EXPECT_EQ(sqz_compose_losses(nullptr, 2, nullptr), SQZ_E_NULL_ARGUMENT);
    EXPECT_EQ(sqz_config_parse(nullptr, nullptr), SQZ_E_NULL_ARGUMENT);
    sqz_config_free(nullptr);
    sqz_result_free(nullptr);
}

TEST(CApi, ScalarOperations) {
    double v = 0.0;
    const double losses[] = {0.06, 0.07, 0.06};
    ASSERT_EQ(sqz_compose_losses(losses, 3, &v), SQZ_OK);
    EXPECT_NEAR(v, 0.178252, 1e-6);
    ASSERT_EQ(sqz_compose_losses(nullptr, 0, &v), SQZ_OK);
    EXPECT_EQ(v, 0.0);
    ASSERT_EQ(sqz_infer_onchip(-6.4, 0.15, &v), SQZ_OK);
    EXPECT_NEAR(v, -10.3132, 1e-3);
    ASSERT_EQ(sqz_optimal_pump(8.23, 100.0, &v), SQZ_OK);
    EXPECT_NEAR(v, 0.644216, 1e-5);
    sqz_levels out{};
    ASSERT_EQ(sqz_chain_forward(8.23, 0.21, 100.0, v, &out), SQZ_OK);
    EXPECT_NEAR(10.0 * std::log10(out.minus), -6.4628, 1e-3);
    ASSERT_EQ(sqz_triple_overlap(0, 1.0, 0, 1.0, 0, 1.0, &v), SQZ_OK);
    EXPECT_NEAR(v, 0.613291, 1e-5);
    ASSERT_EQ(sqz_sideband_frequency(1595.0, 1545.3, &v), SQZ_OK);
    EXPECT_NEAR(v, 6.0451, 1e-3);
}

TEST(CApi, ErrorsSetStatusAndMessage) {
    sqz_levels out{};
    EXPECT_EQ(sqz_remove_loss({0.1, 10.0}, 0.5, &out), SQZ_E_NONPHYSICAL);
    EXPECT_NE(std::string(sqz_last_error()).size(), 0u);
    double v = 0.0;
    EXPECT_EQ(sqz_to_decibels(-1.0, &v), SQZ_E_DOMAIN);
    EXPECT_EQ(sqz_compose_losses(nullptr, 3, &v), SQZ_E_NULL_ARGUMENT);
}

TEST(CApi, SweepAndFit) {
    std::vector<double> pumps;
    for (int i = 0; i < 30; ++i) pumps.push_back(0.02 + 0.02 * i);
    std::vector<sqz_observation> obs(pumps.size());
    ASSERT_EQ(sqz_synth_sweep(8.23, 0.21, 100.0, pumps.data(), pumps.size(), 0.0, 1, obs.data()), SQZ_OK);
    double rms = 1.0;
    ASSERT_EQ(sqz_residual_rms(obs.data(), obs.size(), 8.23, 0.21, 100.0, &rms), SQZ_OK);
    EXPECT_LT(rms, 1e-12);
    sqz_fit_result fit{};
    ASSERT_EQ(sqz_fit_opa_params(obs.data(), obs.size(), 100.0, &fit), SQZ_OK);
    EXPECT_EQ(fit.converged, 1);
    EXPECT_NEAR(fit.a_per_watt, 8.23, 8.23e-6);
    EXPECT_NEAR(fit.rho, 0.21, 0.21e-6);

    std::vector<sqz_observation> dark(3, sqz_observation{0.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(sqz_fit_opa_params(dark.data(), dark.size(), 100.0, &fit), SQZ_E_SINGULAR);
}

TEST(CApi, ConfigAndRun) {
    sqz_config* config = nullptr;
    ASSERT_EQ(sqz_config_parse("[chain]\ngain_db = 20\n[budget]\nmeasured_db = -6.4\ndetection_loss = 0.15\n", &config),
              SQZ_OK);
    double g = 0.0;
    ASSERT_EQ(sqz_config_detection_power_gain(config, &g), SQZ_OK);
    EXPECT_NEAR(g, 100.0, 1e-12);

    sqz_result* result = nullptr;
    ASSERT_EQ(sqz_run(config, "infer", nullptr, 0, &result), SQZ_OK);
    EXPECT_NE(std::string(sqz_result_summary(result)).find("on-chip: -10.31 dB"), std::string::npos);
    EXPECT_EQ(std::string(sqz_result_csv(result)).rfind("measured_db,", 0), 0u);
    sqz_result_free(result);

    result = nullptr;
    EXPECT_EQ(sqz_run(config, "fit", nullptr, 0, &result), SQZ_E_CONFIG_MISSING_KEY);
    EXPECT_EQ(result, nullptr);
    sqz_config_free(config);

    config = nullptr;
    EXPECT_EQ(sqz_config_parse("[chain]\nrho = 1.2\n", &config), SQZ_E_CONFIG_RANGE);
    EXPECT_EQ(config, nullptr);
    EXPECT_EQ(sqz_config_parse("[chain]\nbogus = 1\n", &config), SQZ_E_CONFIG_UNKNOWN_KEY);
    EXPECT_EQ(sqz_config_parse("[chain]\nrho 1\n", &config), SQZ_E_CONFIG_SYNTAX);
}
