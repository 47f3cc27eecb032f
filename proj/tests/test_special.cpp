#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "expser/special.hpp"

namespace {

namespace sp = expser::special;

// Independent oracle: Kahan-summed direct series to a large cutoff plus the
// closed-form tail integral and the trapezoid end correction.
double oracle_log_power_sum(double s, int p, long cutoff = 10'000'000) {
  double sum = 0.0, comp = 0.0;
  for (long k = cutoff - 1; k >= 2; --k) {
    const double L = std::log(static_cast<double>(k));
    const double term = std::pow(L, p) * std::pow(static_cast<double>(k), -s);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (p == 0) sum += 1.0;
  const double K = static_cast<double>(cutoff);
  const double L = std::log(K);
  const double a = s - 1.0;
  double integral = std::pow(K, -a);
  if (p == 0) integral /= a;
  if (p == 2) integral *= L * L / a + 2.0 * L / (a * a) + 2.0 / (a * a * a);
  return sum + integral + 0.5 * std::pow(L, p) * std::pow(K, -s);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Zeta, ClassicalValues) {
  const double pi = std::numbers::pi;
  EXPECT_LE(rel(sp::zeta(2.0), pi * pi / 6.0), 1e-12);
  EXPECT_LE(rel(sp::zeta(4.0), std::pow(pi, 4) / 90.0), 1e-12);
  EXPECT_NEAR(sp::zeta(2.0), 1.644934066848, 1e-12);
  EXPECT_NEAR(sp::zeta(4.0), 1.082323233711, 1e-12);
}

TEST(Zeta, AgreesWithDirectSummationOracle) {
  for (double s : {1.5, 2.0, 3.2}) EXPECT_LE(rel(sp::zeta(s), oracle_log_power_sum(s, 0)), 1e-12) << s;
}

TEST(Zeta, PoleAndGuard) {
  EXPECT_THROW(sp::zeta(1.0), expser::DomainError);
  EXPECT_THROW(sp::zeta(1.04), expser::DomainError);
  EXPECT_THROW(sp::zeta(-3.0), expser::DomainError);
  EXPECT_THROW(sp::zeta(std::nan("")), expser::DomainError);
  EXPECT_NO_THROW(sp::zeta(1.06));
  sp::ZetaConfig bad;
  bad.cutoff = 1;
  EXPECT_THROW(sp::zeta(2.0, bad), expser::DomainError);
}

TEST(Zeta, MonotoneAndLimit) {
  double prev = sp::zeta(1.06);
  for (double s = 1.1; s < 60.0; s += 0.37) {
    const double z = sp::zeta(s);
    // Past s ~ 52, zeta(s) - 1 drops below half an ulp of 1.
    if (s < 50.0)
      EXPECT_LT(z, prev) << s;
    else
      EXPECT_LE(z, prev) << s;
    prev = z;
  }
  EXPECT_LE(rel(sp::zeta(40.0) - 1.0, std::pow(2.0, -40.0)), 1e-6);
}

TEST(Zeta, CutoffDoublingIsStable) {
  sp::ZetaConfig doubled;
  doubled.cutoff *= 2;
  for (double s : {1.1, 1.5, 2.0, 3.2, 7.0}) {
    EXPECT_LE(rel(sp::zeta(s, doubled), sp::zeta(s)), sp::ZetaConfig{}.target_rel_err) << s;
    EXPECT_LE(rel(sp::zeta_d2(s, doubled), sp::zeta_d2(s)), sp::ZetaConfig{}.target_rel_err) << s;
  }
}

TEST(ZetaD2, LargeArgumentDominatedBySecondTerm) {
  const double l2 = std::log(2.0);
  EXPECT_LE(rel(sp::zeta_d2(50.0), l2 * l2 * std::pow(2.0, -50.0)), 1e-6);
}

TEST(ZetaD2, AgreesWithDirectSummationOracle) {
  for (double s : {2.0, 3.2}) EXPECT_LE(rel(sp::zeta_d2(s), oracle_log_power_sum(s, 2)), 1e-12) << s;
}

TEST(ZetaD2, GuardAndSign) {
  sp::ZetaConfig cfg;
  EXPECT_THROW(sp::zeta_d2(1.01, cfg), expser::DomainError);
  for (double s = 1.1; s < 40.0; s += 0.9) EXPECT_GE(sp::zeta_d2(s), 0.0);
}

TEST(ZetaD2, MatchesFiniteDifferences) {
  const double h = 1e-4;
  for (double s : {2.0, 3.0, 5.0}) {
    const double fd = (sp::zeta(s + h) - 2.0 * sp::zeta(s) + sp::zeta(s - h)) / (h * h);
    EXPECT_LE(rel(fd, sp::zeta_d2(s)), 1e-6) << s;
    const double fd1 = (sp::zeta(s + h) - sp::zeta(s - h)) / (2.0 * h);
    EXPECT_LE(rel(fd1, sp::zeta_d1(s)), 1e-7) << s;
  }
}

TEST(ZetaTail, HeadPlusTailIsZeta) {
  double head = 0.0;
  for (int k = 1; k < 50; ++k) head += std::pow(k, -2.5);
  EXPECT_LE(rel(head + sp::zeta_tail(2.5, 50), sp::zeta(2.5)), 1e-13);
  EXPECT_THROW(sp::zeta_tail(2.5, 1), expser::DomainError);
}

}  // namespace
