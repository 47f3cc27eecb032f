#include <gtest/gtest.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "expser/polycore.hpp"

namespace {

using expser::BigInt;
using expser::PolyS;

std::vector<BigInt> big(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

// Rows S_0..S_8 as printed in the published triangle.
const std::vector<std::vector<BigInt>>& published_rows() {
  static const std::vector<std::vector<BigInt>> rows{
      big({1}),
      big({0, -1}),
      big({0, -1, 1}),
      big({0, -1, 3, -1}),
      big({0, -1, 7, -6, 1}),
      big({0, -1, 15, -25, 10, -1}),
      big({0, -1, 31, -90, 65, -15, 1}),
      big({0, -1, 63, -301, 350, -140, 21, -1}),
      big({0, -1, 127, -966, 1701, -1050, 266, -28, 1}),
  };
  return rows;
}

// Independent oracle: count set partitions of {0..n-1} into exactly m blocks
// by enumerating restricted growth strings.
std::int64_t count_partitions(int n, int m) {
  if (n == 0) return m == 0 ? 1 : 0;
  std::vector<int> a(n, 0);
  std::int64_t count = 0;
  // a[0] = 0; a[i] <= 1 + max(a[0..i-1])
  auto rec = [&](auto&& self, int i, int maxv) -> void {
    if (i == n) {
      if (maxv + 1 == m) ++count;
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(maxv, v));
    }
  };
  rec(rec, 1, 0);
  return count;
}

// Closed form: (1/m!) sum_i (-1)^{m-i} C(m,i) i^n.
BigInt stirling_closed_form(unsigned n, unsigned m) {
  BigInt acc = 0;
  BigInt binom = 1;
  for (unsigned i = 0; i <= m; ++i) {
    if (i > 0) binom = binom * (m - i + 1) / i;
    BigInt term = binom * boost::multiprecision::pow(BigInt(i), n);
    if ((m - i) % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  BigInt fact = 1;
  for (unsigned k = 2; k <= m; ++k) fact *= k;
  return acc / fact;
}

TEST(Stirling, Examples) {
  EXPECT_EQ(expser::stirling2(0, 0), 1);
  EXPECT_EQ(expser::stirling2(4, 2), 7);
  EXPECT_EQ(expser::stirling2(8, 3), 966);
}

TEST(Stirling, DomainErrors) {
  EXPECT_THROW(expser::stirling2(3, 4), expser::DomainError);
  EXPECT_THROW(expser::stirling2(-1, 0), expser::DomainError);
  EXPECT_THROW(expser::stirling2(2, -1), expser::DomainError);
}

TEST(Stirling, MatchesPartitionEnumeration) {
  for (int n = 0; n <= 9; ++n)
    for (int m = 0; m <= n; ++m) EXPECT_EQ(expser::stirling2(n, m), count_partitions(n, m)) << n << "," << m;
}

TEST(Stirling, MatchesClosedFormUpTo20) {
  const expser::StirlingTable table(20);
  for (unsigned n = 0; n <= 20; ++n)
    for (unsigned m = 0; m <= n; ++m) {
      EXPECT_EQ(table(n, m), stirling_closed_form(n, m));
      EXPECT_EQ(expser::stirling2(n, m), table(n, m));
    }
}

TEST(Stirling, TableInvariants) {
  const expser::StirlingTable t(40);
  EXPECT_EQ(t(0, 0), 1);
  for (std::size_t n = 1; n <= 40; ++n) {
    EXPECT_EQ(t(n, 0), 0);
    EXPECT_EQ(t(n, 1), 1);
    EXPECT_EQ(t(n, n), 1);
  }
  for (std::size_t n = 1; n < 40; ++n)
    for (std::size_t m = 1; m <= n; ++m) EXPECT_EQ(t(n + 1, m), BigInt(m) * t(n, m) + t(n, m - 1));
  EXPECT_THROW((void)t(41, 1), expser::DomainError);
  EXPECT_THROW((void)t(3, 4), expser::DomainError);
}

TEST(Stirling, ExceedsMachineWords) {
  // S2(30, 15) does not fit in 64 bits.
  EXPECT_EQ(expser::stirling2(30, 15), BigInt("12879868072770626040000"));
  EXPECT_GT(expser::stirling2(60, 30), BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(Triangle, PublishedRows) {
  const auto rows = expser::triangle(8);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t m = 0; m <= 8; ++m) {
    EXPECT_EQ(rows[m].m, m);
    EXPECT_EQ(rows[m].coeffs, published_rows()[m]) << "row " << m;
  }
}

TEST(Triangle, SmallExamples) {
  const auto r1 = expser::triangle(1);
  ASSERT_EQ(r1.size(), 2u);
  EXPECT_EQ(r1[0].coeffs, big({1}));
  EXPECT_EQ(r1[1].coeffs, big({0, -1}));
  EXPECT_EQ(expser::triangle(4)[4].coeffs, big({0, -1, 7, -6, 1}));
  EXPECT_EQ(expser::triangle(5)[5].coeffs, big({0, -1, 15, -25, 10, -1}));
  EXPECT_EQ(expser::triangle(0).size(), 1u);
}

TEST(Construction, Examples) {
  EXPECT_EQ(expser::poly_explicit(0).coeffs, big({1}));
  EXPECT_EQ(expser::poly_explicit(3).coeffs, big({0, -1, 3, -1}));
  EXPECT_EQ(expser::poly_explicit(6).coeffs, big({0, -1, 31, -90, 65, -15, 1}));

  const expser::StirlingTable st(10);
  EXPECT_EQ(expser::poly_from_stirling(1, st).coeffs, big({0, -1}));
  EXPECT_EQ(expser::poly_from_stirling(2, st).coeffs, big({0, -1, 1}));
  EXPECT_EQ(expser::poly_from_stirling(7, st).coeffs, published_rows()[7]);
  EXPECT_THROW(expser::poly_from_stirling(11, st), expser::DomainError);

  EXPECT_EQ(expser::poly_from_c_recursion(1).coeffs, big({0, -1}));
  EXPECT_EQ(expser::poly_from_c_recursion(2).coeffs, big({0, -1, 1}));
  EXPECT_EQ(expser::poly_from_c_recursion(8).coeffs, published_rows()[8]);
  EXPECT_THROW(expser::poly_from_c_recursion(0), expser::DomainError);
}

TEST(Construction, PolyNext) {
  EXPECT_EQ(expser::poly_next(PolyS{}).coeffs, big({0, -1}));
  EXPECT_EQ(expser::poly_next(PolyS{2, big({0, -1, 1})}).coeffs, big({0, -1, 3, -1}));
  EXPECT_EQ(expser::poly_next(PolyS{7, published_rows()[7]}).coeffs, published_rows()[8]);
  EXPECT_EQ(expser::poly_next(PolyS{7, published_rows()[7]}).m, 8u);
}

TEST(Construction, FourWayEquivalenceAndInvariants) {
  constexpr std::size_t kMax = 60;
  const auto rows = expser::triangle(kMax);
  const expser::StirlingTable st(kMax);
  PolyS chained{};
  for (std::size_t m = 0; m <= kMax; ++m) {
    const PolyS explicit_form = expser::poly_explicit(m);
    EXPECT_EQ(rows[m], explicit_form) << m;
    EXPECT_EQ(expser::poly_from_stirling(m, st), explicit_form) << m;
    if (m >= 1) EXPECT_EQ(expser::poly_from_c_recursion(m), explicit_form) << m;
    EXPECT_EQ(chained, explicit_form) << m;
    EXPECT_TRUE(expser::satisfies_invariants(rows[m])) << m;
    chained = expser::poly_next(chained);
  }
}

TEST(Construction, InvariantCheckerRejectsBadRows) {
  EXPECT_FALSE(expser::satisfies_invariants(PolyS{2, big({0, 1, 1})}));
  EXPECT_FALSE(expser::satisfies_invariants(PolyS{3, big({0, -1, 3, 1})}));
  EXPECT_FALSE(expser::satisfies_invariants(PolyS{2, big({1, -1, 1})}));
}

TEST(Eval, Examples) {
  const auto rows = expser::triangle(5);
  EXPECT_EQ(expser::poly_eval(rows[2], 1.0), 0.0);
  const std::complex<double> i(0.0, 1.0);
  EXPECT_EQ(expser::poly_eval(rows[1], i), -i);
  // Row-5 coefficients sum: -1 + 15 - 25 + 10 - 1.
  EXPECT_EQ(expser::poly_eval(rows[5], 1.0), -2.0);
}

TEST(Eval, SharedTableAgreesWithExactEvaluation) {
  const auto& table = expser::shared_table();
  const auto rows = expser::triangle(30);
  for (std::size_t m = 0; m <= 30; ++m) {
    for (double x : {0.0, 0.5, 1.0, 2.5}) {
      const double exact = expser::poly_eval(rows[m], x);
      EXPECT_DOUBLE_EQ(table.eval(m, x), exact);
    }
  }
  EXPECT_DOUBLE_EQ(table.eval_normalized(4, 2.0), (16.0 - 48.0 + 28.0 - 2.0) / 24.0);
  EXPECT_DOUBLE_EQ(table.eval_normalized_over_x(4, 2.0), (8.0 - 24.0 + 14.0 - 1.0) / 24.0);
  EXPECT_DOUBLE_EQ(table.envelope_normalized(4, 1.0), 15.0 / 24.0);
  EXPECT_THROW((void)table.row(expser::kSharedTableDepth + 1), expser::DomainError);
}

TEST(Diagonals, Examples) {
  EXPECT_EQ(expser::diagonal_L(1, 5), -1);
  EXPECT_EQ(expser::diagonal_L(2, 4), -6);
  EXPECT_EQ(expser::diagonal_L(3, 6), 65);
  EXPECT_EQ(expser::diagonal_K(0, 7), -1);
  EXPECT_EQ(expser::diagonal_K(2, 6), -90);
  EXPECT_EQ(expser::diagonal_K(3, 6), 65);
  EXPECT_THROW(expser::diagonal_L(0, 3), expser::DomainError);
  EXPECT_THROW(expser::diagonal_L(5, 3), expser::DomainError);
  EXPECT_THROW(expser::diagonal_K(3, 3), expser::DomainError);
  EXPECT_THROW(expser::diagonal_K(-1, 3), expser::DomainError);
}

TEST(Diagonals, ClosedFormSpecialisations) {
  for (std::int64_t m = 0; m <= 40; ++m) {
    const PolyS p = expser::poly_explicit(static_cast<std::size_t>(m));
    const BigInt sign = (m % 2 == 0) ? 1 : -1;
    EXPECT_EQ(expser::diagonal_L(1, m), sign);
    for (std::int64_t n = 1; n <= m + 1; ++n) EXPECT_EQ(expser::diagonal_L(n, m), p.coeffs[m - n + 1]);
    for (std::int64_t n = 0; n <= m - 1; ++n) EXPECT_EQ(expser::diagonal_K(n, m), p.coeffs[n + 1]);
    if (m >= 2) {
      EXPECT_EQ(expser::diagonal_L(2, m), -sign * BigInt(m * (m - 1) / 2));
      EXPECT_EQ(expser::diagonal_K(1, m), (BigInt(1) << (m - 1)) - 1);
    }
    const BigInt p2 = BigInt(1) << m;
    const BigInt p3m1 = m >= 1 ? boost::multiprecision::pow(BigInt(3), unsigned(m - 1)) : BigInt(0);
    if (m >= 3) EXPECT_EQ(expser::diagonal_K(2, m) * 2, p2 - 1 - p3m1);
    if (m >= 4) {
      const BigInt lhs = expser::diagonal_K(3, m) * 6;
      const BigInt rhs = 3 * (BigInt(1) << (m - 1)) - 1 - boost::multiprecision::pow(BigInt(3), unsigned(m)) +
                         boost::multiprecision::pow(BigInt(4), unsigned(m - 1));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(WeightedIntegral, AlternatingSign) {
  EXPECT_EQ(expser::exact_weighted_integral(0), 1);
  EXPECT_EQ(expser::exact_weighted_integral(1), -1);
  EXPECT_EQ(expser::exact_weighted_integral(9), -1);
  for (std::size_t m = 0; m <= 60; ++m) EXPECT_EQ(expser::exact_weighted_integral(m), (m % 2 == 0) ? 1 : -1);
}

TEST(Identities, SmallCases) {
  const auto r2 = expser::verify_polynomial_identities(2);
  EXPECT_TRUE(r2.all_passed());
  const auto r1 = expser::verify_polynomial_identities(1);
  bool saw_alt = false;
  for (const auto& c : r1.checks)
    if (c.name == "antiderivative_alternating" && c.m == 1) saw_alt = c.pass;
  EXPECT_TRUE(saw_alt);
}

TEST(Identities, AllPassTo40) {
  const auto report = expser::verify_polynomial_identities(40);
  EXPECT_TRUE(report.all_passed()) << report.failures() << " failures";
  // Nine identity families per index, telescoping starts at m = 1.
  EXPECT_EQ(report.checks.size(), 41u * 9u - 1u);
}

TEST(IntPoly, DivXRejectsConstantTerm) {
  EXPECT_THROW(expser::IntPoly(big({1, 2})).div_x(), expser::DomainError);
  EXPECT_EQ(expser::IntPoly(big({0, 2, 3})).div_x(), expser::IntPoly(big({2, 3})));
}

}  // namespace
