// SPDX-License-Identifier: Apache-2.0

#include "thzcov/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace thzcov;

TEST(Quadrature, PolynomialIsExact) {
    const auto res = integrate_1d([](double x) { return x; }, 0.0, 1.0, 1e-10);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.value, 0.5, 1e-14);
    EXPECT_LE(res.error_estimate, 1e-10);
}

TEST(Quadrature, MatchesClosedFormExponentialMoment) {
    // int_0^Rt exp(-b r) r dr = (1 - exp(-b Rt)(1 + b Rt)) / b^2
    const double b = 0.2772;
    const double rt = std::sqrt(140.0);
    const double expected = (1.0 - std::exp(-b * rt) * (1.0 + b * rt)) / (b * b);
    const auto res =
        integrate_1d([&](double r) { return std::exp(-b * r) * r; }, 0.0, rt, 1e-10);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.value, expected, 1e-9);
}

TEST(Quadrature, EmptyInterval) {
    const auto res = integrate_1d([](double x) { return x * x; }, 2.0, 2.0, 1e-10);
    EXPECT_TRUE(res.converged);
    EXPECT_DOUBLE_EQ(res.value, 0.0);
    EXPECT_DOUBLE_EQ(res.error_estimate, 0.0);
    EXPECT_EQ(res.evaluations, 0);
}

TEST(Quadrature, ZeroIntegrand) {
    const auto res = integrate_1d([](double) { return 0.0; }, 0.0, 1.0, 1e-12);
    EXPECT_TRUE(res.converged);
    EXPECT_DOUBLE_EQ(res.value, 0.0);
    EXPECT_DOUBLE_EQ(res.error_estimate, 0.0);
}

TEST(Quadrature, Rect2dConstant) {
    const auto res = integrate_2d([](double, double) { return 1.0; }, 0.0, 1.0, 0.0, 1.0, 1e-9);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.value, 1.0, 1e-9);
}

TEST(Quadrature, Rect2dSeparable) {
    // int exp(-x) dx on [0,1] times int cos^2(y) dy on [0,pi]
    const double expected = (1.0 - std::exp(-1.0)) * (M_PI / 2.0);
    const auto res = integrate_2d(
        [](double x, double y) { return std::exp(-x) * std::cos(y) * std::cos(y); }, 0.0, 1.0,
        0.0, M_PI, 1e-9);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.value, expected, 1e-8);
}

TEST(Quadrature, Linearity) {
    auto f = [](double x) { return std::exp(-0.8 * x); };
    auto g = [](double x) { return std::cos(x) * x; };
    const double alpha = 1.7;
    const double beta = -0.4;
    const double tol = 1e-9;
    const auto fi = integrate_1d(f, 0.0, 3.0, tol);
    const auto gi = integrate_1d(g, 0.0, 3.0, tol);
    const auto combo =
        integrate_1d([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 3.0, tol);
    EXPECT_NEAR(combo.value, alpha * fi.value + beta * gi.value, 2.0 * tol * (1.0 + alpha - beta));
}

TEST(Quadrature, TighterToleranceDoesNotWorsenError) {
    auto f = [](double x) { return std::exp(-x * x) * std::sin(3.0 * x + 0.3); };
    double prev = 1e300;
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto res = integrate_1d(f, 0.0, 4.0, tol);
        EXPECT_TRUE(res.converged);
        EXPECT_LE(res.error_estimate, prev);
        prev = res.error_estimate;
    }
}

TEST(Quadrature, DeterministicNodeSequence) {
    auto f = [](double x) { return std::exp(-x) / (1.0 + x * x); };
    const auto a = integrate_1d(f, 0.0, 10.0, 1e-9);
    const auto b = integrate_1d(f, 0.0, 10.0, 1e-9);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_estimate, b.error_estimate);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Quadrature, BudgetExhaustionReportsNonConvergence) {
    const auto res = integrate_1d([](double x) { return std::sin(1000.0 * x) * x; }, 0.0, 50.0,
                                  1e-14, 600);
    EXPECT_FALSE(res.converged);
    EXPECT_LE(res.evaluations, 600);
}

TEST(Quadrature, VectorVariantSharesNodes) {
    const auto res = integrate_1d_vec<2>(
        [](double x) {
            return std::array<double, 2>{x, x * x};
        },
        0.0, 1.0, 1e-10);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.value[0], 0.5, 1e-13);
    EXPECT_NEAR(res.value[1], 1.0 / 3.0, 1e-13);
}

TEST(LogSumExp, SingleElementIsExact) {
    EXPECT_DOUBLE_EQ(log_sum_exp({-3.75}), -3.75);
    EXPECT_DOUBLE_EQ(log_sum_exp({123.0}), 123.0);
}

TEST(LogSumExp, TwoZeros) {
    EXPECT_NEAR(log_sum_exp({0.0, 0.0}), std::log(2.0), 1e-15);
}

TEST(LogSumExp, AgreesWithDirectComputation) {
    const std::array<double, 3> xs = {-1.0, -2.5, -7.0};
    const double direct = std::log(std::exp(xs[0]) + std::exp(xs[1]) + std::exp(xs[2]));
    const double stable = log_sum_exp(std::span<const double>(xs));
    EXPECT_NEAR(stable, direct, std::abs(direct) * 1e-12);
}

TEST(LogSumExp, SurvivesExtremeScales) {
    const double v = log_sum_exp({-700.0, -700.0});
    EXPECT_NEAR(v, -700.0 + std::log(2.0), 1e-10);
}

}  // namespace
