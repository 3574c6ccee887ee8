// SPDX-License-Identifier: Apache-2.0

#include "thzcov/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace thzcov;

NetworkConfig low_ris_fixture(double h_r = 1.2) {
    auto cfg = default_paper_config();
    cfg.h_r = h_r;
    return finalize(cfg);
}

TEST(Association, PartitionOfUnity) {
    const auto cfg = default_paper_config();
    for (double r0 : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        const auto a = association(cfg, r0);
        EXPECT_NEAR(a.direct + a.ris + a.composite + a.none, 1.0, 1e-12);
        EXPECT_GE(a.direct, 0.0);
        EXPECT_GE(a.ris, 0.0);
        EXPECT_GE(a.composite, 0.0);
        EXPECT_GE(a.none, 0.0);
    }
}

TEST(Association, NoBlockagesMeansComposite) {
    auto cfg = default_paper_config();
    cfg.lambda_b = 0.0;
    cfg = finalize(cfg);
    const auto a = association(cfg, 3.0);
    EXPECT_DOUBLE_EQ(a.direct, 0.0);
    EXPECT_DOUBLE_EQ(a.ris, 0.0);
    EXPECT_DOUBLE_EQ(a.composite, 1.0);
    EXPECT_DOUBLE_EQ(a.none, 0.0);
}

TEST(Association, FarServingApLimit) {
    const auto cfg = default_paper_config();
    const auto a = association(cfg, 1e6);
    const double p_ris = 0.53406805774418914;  // exp(-beta_r v0)
    EXPECT_NEAR(a.direct, 0.0, 1e-300);
    EXPECT_NEAR(a.ris, p_ris, 1e-13);
    EXPECT_NEAR(a.composite, 0.0, 1e-300);
    EXPECT_NEAR(a.none, 1.0 - p_ris, 1e-13);
}

TEST(Association, ScenarioDispatchIsGuarded) {
    EXPECT_THROW(association(low_ris_fixture(), 1.0), ScenarioMismatchError);
    EXPECT_THROW(association_low_ris(default_paper_config(), 1.0, 1.0), ScenarioMismatchError);
}

TEST(AssociationLowRis, ReducesToHighRisAtZeroApRisBlockage) {
    // h_r = h_b classifies low with beta_ar = 0; the formulas must then agree
    // with the high-RIS ones evaluated with the same betas.
    auto cfg = default_paper_config();
    cfg.h_r = cfg.h_b;
    cfg = finalize(cfg);
    ASSERT_EQ(cfg.regime, RisRegime::low);
    ASSERT_DOUBLE_EQ(cfg.beta_ar, 0.0);
    for (double r0 : {0.2, 1.0, 3.0}) {
        const auto split = association_low_ris_split(cfg, r0, 2.0);
        const double pd = std::exp(-cfg.beta_d * r0);
        const double pr = std::exp(-cfg.beta_r * cfg.v0);
        EXPECT_DOUBLE_EQ(split.direct_ap_ris_blocked, 0.0);
        EXPECT_NEAR(split.direct_ris_ue_blocked, pd * (1.0 - pr), 1e-15);
        EXPECT_NEAR(split.ris, (1.0 - pd) * pr, 1e-15);
        EXPECT_NEAR(split.composite, pd * pr, 1e-15);
    }
}

TEST(AssociationLowRis, PartitionAndBounds) {
    const auto cfg = low_ris_fixture();
    for (double r0 : {0.5, 2.0}) {
        for (double z0 : {0.5, 2.0, 6.0}) {
            const auto a = association_low_ris(cfg, r0, z0);
            EXPECT_NEAR(a.direct + a.ris + a.composite + a.none, 1.0, 1e-12);
            for (double c : {a.direct, a.ris, a.composite, a.none}) {
                EXPECT_GE(c, 0.0);
                EXPECT_LE(c, 1.0);
            }
        }
    }

    auto clear = low_ris_fixture();
    clear.lambda_b = 0.0;
    clear = finalize(clear);
    const auto a = association_low_ris(clear, 1.0, 2.0);
    EXPECT_DOUBLE_EQ(a.composite, 1.0);
}

TEST(LaplaceTransforms, UnitAtZeroAndMonotone) {
    const auto cfg = default_paper_config();
    LaplaceEvaluator lt(cfg);
    EXPECT_DOUBLE_EQ(lt.direct(0.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(lt.ris(0.0, 1.0), 1.0);

    double prev_d = 1.0;
    double prev_r = 1.0;
    for (double s = 1e-2; s < 1e12; s *= 100.0) {
        const double ld = lt.direct(s, 1.0);
        const double lr = lt.ris(s, 1.0);
        EXPECT_GT(ld, 0.0);
        EXPECT_LE(ld, prev_d);
        EXPECT_GT(lr, 0.0);
        EXPECT_LE(lr, prev_r);
        prev_d = ld;
        prev_r = lr;
    }
}

TEST(LaplaceTransforms, NoInterferersLimit) {
    auto cfg = default_paper_config();
    cfg.lambda_a = 1e-12;
    cfg = finalize(cfg);
    LaplaceEvaluator lt(cfg);
    EXPECT_NEAR(lt.direct(1e6, 0.5), 1.0, 1e-9);
    EXPECT_NEAR(lt.ris(1e6, 0.5), 1.0, 1e-9);
}

TEST(LaplaceTransforms, DirectExponentMatchesDenseSimpson) {
    // independent re-evaluation of the L_ID exponent with a fixed-grid
    // Simpson rule
    const auto cfg = default_paper_config();
    const double r0 = 1.0;
    const double s = cfg.tau * kappa_d(cfg) / (cfg.p_a * pathloss_direct(cfg, r0));
    const double kd = kappa_d(cfg);

    auto integrand = [&](double r) {
        const double t = s * cfg.p_a * pathloss_direct(cfg, r);
        return t / (kd + t) * p_los_direct(cfg, r) * r;
    };
    const int n = 200000;  // even
    const double h = (cfg.radius - r0) / n;
    double acc = integrand(r0) + integrand(cfg.radius);
    for (int i = 1; i < n; ++i) {
        acc += integrand(r0 + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double simpson = acc * h / 3.0;
    const double expected = std::exp(-2.0 * M_PI * cfg.lambda_a * simpson);

    EXPECT_NEAR(lt_interference_direct(cfg, s, r0), expected, 5e-7);
}

TEST(LaplaceTransforms, CompositeProductIdentity) {
    const auto cfg = default_paper_config();
    LaplaceEvaluator lt(cfg);
    for (double r0 : {0.3, 1.5}) {
        for (double s : {1e-1, 1e2, 1e5, 1e8}) {
            const double prod = lt.direct(s, r0) * lt.ris(s, r0);
            const double comp = lt.composite(s, r0);
            EXPECT_NEAR(comp, prod, prod * 1e-10 + 1e-300);
        }
    }
}

TEST(LaplaceTransforms, ThinningCanOnlyHelp) {
    const auto cfg = low_ris_fixture();
    LaplaceEvaluator lt(cfg);
    for (double s : {1e2, 1e5, 1e9, 1e13}) {
        const double plain = lt.ris(s, 0.5);
        const double thinned = lt.ris_low(s, 0.5);
        EXPECT_GE(thinned, plain - 1e-9);
        EXPECT_DOUBLE_EQ(lt.ris_low(0.0, 0.5), 1.0);
    }
}

TEST(LaplaceTransforms, ThinnedReducesAtZeroBeta) {
    auto cfg = default_paper_config();
    cfg.h_r = cfg.h_b;  // low regime with beta_ar exactly 0
    cfg = finalize(cfg);
    LaplaceEvaluator lt(cfg);
    for (double s : {1e3, 1e8}) {
        const double a = lt.ris(s, 1.0);
        const double b = lt.ris_low(s, 1.0);
        EXPECT_NEAR(a, b, 1e-5 * a + 1e-12);
    }
}

TEST(ConditionalCoverage, NoInterferenceLimit) {
    auto cfg = default_paper_config();
    cfg.lambda_a = 1e-12;
    cfg = finalize(cfg);
    const auto p = conditional_coverage(cfg, 1.0, M_PI / 2.0);
    EXPECT_NEAR(p.direct, 1.0, 1e-9);
    EXPECT_NEAR(p.ris, 1.0, 1e-9);
    EXPECT_NEAR(p.composite, 1.0, 1e-9);
}

TEST(ConditionalCoverage, HugeThresholdKillsCoverage) {
    auto cfg = default_paper_config();
    cfg.tau = 1e9;
    cfg = finalize(cfg);
    const auto p = conditional_coverage(cfg, 1.0, M_PI / 2.0);
    EXPECT_LT(p.direct, 1e-10);
    EXPECT_LT(p.ris, 1e-10);
    EXPECT_LT(p.composite, 1e-10);
}

TEST(Coverage, VanishingThresholdRecoversServiceProbability) {
    auto cfg = default_paper_config();
    cfg.tau = 1e-12;
    cfg = finalize(cfg);
    const auto cov = coverage(cfg);
    // association integral evaluated with 50-digit arithmetic
    EXPECT_NEAR(cov.total, 0.94074711758569837, 5e-4);

    const auto mass = association_mass(cfg);
    EXPECT_NEAR(cov.total, mass.direct + mass.ris + mass.composite, 5e-4);
}

TEST(Coverage, DenseBlockageFieldKillsCoverage) {
    auto cfg = default_paper_config();
    cfg.lambda_b = 50.0;
    cfg = finalize(cfg);
    EXPECT_LT(coverage(cfg).total, 0.05);
}

TEST(Coverage, ContributionsPartitionTotal) {
    const auto cfg = default_paper_config();
    const auto cov = coverage(cfg);
    EXPECT_DOUBLE_EQ(cov.total, cov.contrib_direct + cov.contrib_ris + cov.contrib_composite);
    EXPECT_GE(cov.total, 0.0);
    EXPECT_LE(cov.total, 1.0);
    EXPECT_GT(cov.evaluations, 0);

    // each contribution is bounded by its association mass
    const auto mass = association_mass(cfg);
    EXPECT_LE(cov.contrib_direct, mass.direct + 1e-6);
    EXPECT_LE(cov.contrib_ris, mass.ris + 1e-6);
    EXPECT_LE(cov.contrib_composite, mass.composite + 1e-6);
}

TEST(Coverage, MonotoneInThreshold) {
    double prev = 1.0;
    for (double tau_db : {-6.0, 2.0, 8.0}) {
        auto cfg = default_paper_config();
        cfg.tau = std::pow(10.0, tau_db / 10.0);
        cfg = finalize(cfg);
        const double total = coverage(cfg).total;
        EXPECT_LE(total, prev + 2e-4);
        prev = total;
    }
}

TEST(Coverage, ScenarioGuards) {
    EXPECT_THROW(coverage(low_ris_fixture()), ScenarioMismatchError);
    EXPECT_THROW(coverage_low_ris(default_paper_config()), ScenarioMismatchError);
    EXPECT_DOUBLE_EQ(coverage_auto(default_paper_config()).total,
                     coverage(default_paper_config()).total);
}

TEST(Coverage, LowRisReducesToHighRisAtBoundary) {
    auto low = default_paper_config();
    low.h_r = low.h_b;
    low = finalize(low);
    auto high = default_paper_config();
    high.h_r = high.h_b + 1e-9;
    high = finalize(high);
    ASSERT_EQ(low.regime, RisRegime::low);
    ASSERT_EQ(high.regime, RisRegime::high);

    const auto a = coverage_low_ris(low);
    const auto b = coverage(high);
    EXPECT_NEAR(a.total, b.total, 1e-6 + a.quad_error_estimate + b.quad_error_estimate);
}

TEST(Coverage, TighterToleranceStaysWithinReportedError) {
    const auto cfg = default_paper_config();
    QuadratureOptions loose;
    const auto a = coverage(cfg, loose);
    QuadratureOptions tight = loose;
    tight.tol_outer = loose.tol_outer / 2.0;
    const auto b = coverage(cfg, tight);
    EXPECT_LE(std::abs(a.total - b.total), a.quad_error_estimate);
}

TEST(AssociationMass, SumsToOne) {
    for (const auto& cfg : {default_paper_config(), low_ris_fixture()}) {
        const auto mass = association_mass(cfg);
        EXPECT_NEAR(mass.direct + mass.ris + mass.composite + mass.none, 1.0, 1e-6);
    }
}

}  // namespace
