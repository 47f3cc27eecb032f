#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "expser/funcseries.hpp"

namespace {

using namespace expser::fs;
using expser::cplx;

TEST(GeneratingFunction, TrivialAndKnownValues) {
  const ExpansionResult r0 = gf_eval(1.3, 0.0, std::size_t{10});
  EXPECT_EQ(r0.final.real(), 1.0);
  EXPECT_EQ(r0.partial_sums.size(), 11u);
  EXPECT_EQ(r0.terms, 11u);
  const ExpansionResult r1 = gf_eval(1.0, 1.0, std::size_t{60});
  EXPECT_NEAR(r1.final.real(), 0.17937, 1e-5);
  EXPECT_NEAR(r1.final.real(), std::exp(1.0 - std::numbers::e), 1e-13);
  const ExpansionResult a = gf_eval(1.0, 0.5);
  EXPECT_TRUE(a.converged);
  EXPECT_LE(std::abs(a.final.real() - std::exp(1.0 - std::exp(0.5))), 1e-10);
  EXPECT_LE(a.residual, 1e-10);
}

TEST(GeneratingFunction, ResidualGrid) {
  for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const ExpansionResult r = gf_eval(x, t);
      EXPECT_TRUE(r.converged);
      EXPECT_LE(r.residual, 1e-9) << x << " " << t;
      EXPECT_EQ(r.final, r.partial_sums.back());
    }
  }
}

TEST(GeneratingFunction, FixedMTrajectoryApproachesReference) {
  const ExpansionResult r = gf_eval(2.0, 1.0, std::size_t{80});
  const double ref = r.reference->real();
  EXPECT_GT(std::abs(r.partial_sums[3].real() - ref), 1e-3);
  EXPECT_LE(r.residual, 1e-12);
  EXPECT_THROW((void)gf_eval(1.0, 1.0, std::size_t{100000}), expser::DomainError);
}

TEST(SymmetricGf, TrivialAndKnownValues) {
  EXPECT_EQ(symmetric_gf_eval(1.7, 0.0).final.real(), 1.0);
  // y = 1: sum S_m(x) (ln 2)^m / m! = e^{-x}
  EXPECT_NEAR(symmetric_gf_eval(1.4, 1.0).final.real(), std::exp(-1.4), 1e-12);
  // x = 1: sum S_m(1) (ln(y+1))^m / m! = e^{-y}
  EXPECT_NEAR(symmetric_gf_eval(1.0, 0.6).final.real(), std::exp(-0.6), 1e-12);
  EXPECT_THROW((void)symmetric_gf_eval(1.0, -1.0), expser::DomainError);
  EXPECT_THROW((void)symmetric_gf_eval(1.0, -2.0, std::size_t{10}), expser::DomainError);
}

TEST(SymmetricGf, SwapProperty) {
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const double x = 0.25 * i, y = 0.25 * j;
      const ExpansionResult a = symmetric_gf_eval(x, y);
      const ExpansionResult b = symmetric_gf_eval(y, x);
      EXPECT_LE(std::abs(a.final - b.final), 2e-8) << x << " " << y;
      EXPECT_LE(a.residual, 1e-8);
      EXPECT_LE(b.residual, 1e-8);
    }
  }
}

TEST(TrigSeries, ReferencePoints) {
  const ExpansionResult s0 = sin_series(0.0), c0 = cos_series(0.0);
  EXPECT_EQ(s0.final.real(), 0.0);
  EXPECT_EQ(c0.final.real(), 1.0);
  TrigOptions opt;
  opt.tol = 1e-8;
  EXPECT_NEAR(sin_series(1.0, opt).final.real(), 0.8414709848, 1e-8);
  EXPECT_NEAR(cos_series(1.0, opt).final.real(), 0.5403023059, 1e-8);
  const ExpansionResult edge = sin_series(std::numbers::pi / 2.0 - 0.05, opt);
  EXPECT_TRUE(edge.converged);
  EXPECT_LE(edge.residual, 1e-8);
  EXPECT_LE(2 * edge.terms - 1, 200u);
}

TEST(TrigSeries, DomainAndReduction) {
  EXPECT_THROW((void)sin_series(-0.1), expser::DomainError);
  EXPECT_THROW((void)cos_series(std::numbers::pi / 2.0), expser::DomainError);
  TrigOptions opt;
  opt.quadrant_reduction = true;
  for (double x : {-3.0, -1.0, 1.8, 2.5, 3.1, 4.0, 5.5, 10.0}) {
    EXPECT_NEAR(sin_series(x, opt).final.real(), std::sin(x), 1e-8) << x;
    EXPECT_NEAR(cos_series(x, opt).final.real(), std::cos(x), 1e-8) << x;
  }
}

TEST(TrigSeries, MaxErrorAndPythagoras) {
  TrigOptions opt;
  opt.tol = 1e-8;
  double worst = 0.0, worst_pyth = 0.0;
  for (double x = 0.0; x <= std::numbers::pi / 2.0 - 0.05; x += 0.01) {
    const double s = sin_series(x, opt).final.real();
    const double c = cos_series(x, opt).final.real();
    worst = std::max({worst, std::abs(s - std::sin(x)), std::abs(c - std::cos(x))});
    worst_pyth = std::max(worst_pyth, std::abs(s * s + c * c - 1.0));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_LE(worst_pyth, 2e-8);
}

TEST(ComplexPhaseExp, Values) {
  EXPECT_EQ(exp_series_complexphase(0.0, 1, 10).final, cplx(1.0, 0.0));
  const ExpansionResult r = exp_series_complexphase(0.5, 1, 60);
  EXPECT_LE(std::abs(r.final - std::exp(cplx(0.5, -0.5))), 1e-8);
  const ExpansionResult m = exp_series_complexphase(0.5, -1, 60);
  EXPECT_LE(std::abs(m.final - std::exp(cplx(0.5, 0.5))), 1e-8);
  // e^{-x} times the series is the pure phase e^{-i sign x}
  EXPECT_LE(std::abs(std::exp(-0.5) * r.final - std::exp(cplx(0.0, -0.5))), 1e-8);
  EXPECT_THROW((void)exp_series_complexphase(0.5, 0, 10), expser::DomainError);
}

TEST(TrigFromSymmetric, RealArguments) {
  auto [s0, c0] = trig_from_symmetric(cplx(0.0, 0.0), 20);
  EXPECT_EQ(s0.final, cplx(0.0, 0.0));
  EXPECT_EQ(c0.final, cplx(1.0, 0.0));
  auto [s, c] = trig_from_symmetric(cplx(1.0, 0.0), 60);
  EXPECT_NEAR(s.final.real(), 0.8414709848, 1e-7);
  EXPECT_NEAR(c.final.real(), 0.5403023059, 1e-7);
  EXPECT_LE(std::abs(s.final.imag()), 1e-9);
  EXPECT_LE(std::abs(c.final.imag()), 1e-9);
  // The S_m(-iz) half carries imaginary parts that the other half cancels.
  double carried = 0.0;
  for (double v : s.term_imag) carried = std::max(carried, std::abs(v));
  EXPECT_GT(carried, 1e-3);
  EXPECT_EQ(s.term_imag.size(), s.terms);
}

TEST(TrigFromSymmetric, ComplexArgumentsRightHalfDisk) {
  for (const cplx z : {cplx(0.5, 0.5), cplx(1.0, -1.2), cplx(0.0, 2.0), cplx(1.9, 0.3), cplx(1.2, 1.5)}) {
    auto [s, c] = trig_from_symmetric(z, 120);
    EXPECT_LE(std::abs(s.final - std::sin(z)), 1e-10 * std::max(1.0, std::abs(std::sin(z)))) << z;
    EXPECT_LE(std::abs(c.final - std::cos(z)), 1e-10 * std::max(1.0, std::abs(std::cos(z)))) << z;
  }
}

TEST(Gaussian, SeriesAndOneTerm) {
  EXPECT_EQ(gaussian_series(0.0).final.real(), 1.0);
  EXPECT_EQ(gaussian_one_term(0.0), 1.0);
  const ExpansionResult r = gaussian_series(0.5);
  EXPECT_NEAR(r.final.real(), 0.7788007831, 1e-6);
  EXPECT_LE(r.terms, 201u);
  EXPECT_NEAR(gaussian_one_term(0.5), 0.7972674, 1e-6);
  const double err = std::abs(gaussian_one_term(0.5) - std::exp(-0.25));
  EXPECT_NEAR(err, 0.019, 0.0019);
  EXPECT_DOUBLE_EQ(gaussian_partial(0.5, 1).final.real(), gaussian_one_term(0.5));
  EXPECT_THROW((void)gaussian_series(-1.0), expser::DomainError);
  EXPECT_THROW((void)gaussian_one_term(-1.5), expser::DomainError);
}

TEST(Gaussian, IntervalAccuracy) {
  for (double x = 0.0; x <= 0.9 + 1e-12; x += 0.05) {
    const ExpansionResult r = gaussian_series(x);
    EXPECT_LE(std::abs(r.final.real() - std::exp(-x * x)), 1e-6) << x;
    EXPECT_LE(r.terms, 201u);
  }
}

TEST(SummationIdentities, ResidualsOnInterval) {
  for (double x = 0.0; x <= 2.0 + 1e-12; x += 0.25) {
    const auto res = summation_identity_residuals(x);
    EXPECT_GE(res.size(), 7u);
    for (const auto& r : res) EXPECT_LE(r.residual, 1e-8) << r.name << " at x = " << x;
  }
  const auto at0 = summation_identity_residuals(0.0);
  EXPECT_EQ(at0.at(2).residual, 0.0);  // every S_{m+1}(0) vanishes
  for (const auto& r : summation_identity_residuals(1.0)) {
    if (r.name.rfind("sum S_m/m!", 0) == 0) EXPECT_LE(r.residual, 1e-10);
  }
}

TEST(AsymptoticComparison, Rows) {
  const auto rows = asymptotic_comparison(1.6, {0.5, 2.0, 3.0, 4.0, 5.0, 6.0});
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_TRUE(rows[0].error.has_value());
  EXPECT_GT(rows[1].f, rows[1].exp_neg_x);
  EXPECT_GT(rows[1].err_simple, 0.0);
  EXPECT_GT(rows[1].err_two_term, 0.0);
  EXPECT_LT(rows[3].err_simple, rows[3].err_two_term);
  const auto far = asymptotic_comparison(2.0, {10.0});
  EXPECT_NEAR(far[0].f, far[0].exp_neg_x, 1e-12);
  // The second term over-corrects by e^{-x} 2^{-x alpha} ((x/2) ln^2 2 - 1), about 6e-11 here.
  const double predicted = std::exp(-10.0) * std::pow(2.0, -20.0) * (5.0 * std::log(2.0) * std::log(2.0) - 1.0);
  EXPECT_NEAR(far[0].err_two_term, predicted, 0.05 * predicted);
}

TEST(DoubleSum, TransformedAlphaOneTimesExp) {
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const auto r = expser::f_transformed(expser::SeriesQuery{cplx(x, 0.0), 1.0, 1e-8});
    const double tol = std::max(1e-6, std::numeric_limits<double>::epsilon() * r.cancellation);
    EXPECT_NEAR(std::exp(x) * r.value.real(), 1.0 / (1.0 - std::exp(-x)), tol * std::exp(x)) << x;
  }
}

}  // namespace
