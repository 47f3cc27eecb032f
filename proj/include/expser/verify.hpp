#pragma once

// Named invariant suites run by `expser verify`. Each check reports its worst
// residual against a fixed limit; exact checks report 0 or 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "expser/ceoperator.hpp"
#include "expser/funcseries.hpp"
#include "expser/polycore.hpp"
#include "expser/serieseval.hpp"
#include "expser/special.hpp"

namespace expser::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double limit = 0.0;
};

using Results = std::vector<CheckResult>;

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"poly", "operator", "series", "funcseries"};
  return names;
}

namespace detail {

inline void add(Results& out, std::string_view suite, std::string name, double residual, double limit) {
  out.push_back({std::string(suite), std::move(name), residual <= limit, residual, limit});
}

inline void add_exact(Results& out, std::string_view suite, std::string name, bool ok) {
  out.push_back({std::string(suite), std::move(name), ok, ok ? 0.0 : 1.0, 0.0});
}

inline std::vector<BigInt> big(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

/// Rows S_0..S_8 of the coefficient triangle.
inline const std::vector<std::vector<BigInt>>& reference_rows() {
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

using Series = ce::TruncatedSeries<double>;

inline Series sub(const Series& a, const Series& b) {
  const std::size_t n = std::max(a.order(), b.order()) + 1;
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i <= a.order(); ++i) d[i] += a[i];
  for (std::size_t i = 0; i <= b.order(); ++i) d[i] -= b[i];
  return Series(std::move(d));
}

}  // namespace detail

inline Results verify_poly() {
  constexpr std::string_view S = "poly";
  Results out;
  const auto rows = triangle(60);
  bool ok = true;
  for (std::size_t m = 0; m <= 8; ++m) ok = ok && rows[m].coeffs == detail::reference_rows()[m];
  detail::add_exact(out, S, "triangle rows 0-8 match reference", ok);

  const StirlingTable st(60);
  ok = true;
  PolyS chained{};
  for (std::size_t m = 0; m <= 60; ++m) {
    const PolyS e = poly_explicit(m);
    ok = ok && rows[m] == e && poly_from_stirling(m, st) == e && chained == e;
    if (m >= 1) ok = ok && poly_from_c_recursion(m) == e;
    chained = poly_next(chained);
  }
  detail::add_exact(out, S, "four-way construction equivalence m <= 60", ok);

  ok = true;
  for (std::size_t m = 0; m <= 60; ++m) ok = ok && exact_weighted_integral(m) == ((m % 2 == 0) ? 1 : -1);
  detail::add_exact(out, S, "weighted integral sum c_k k! = (-1)^m, m <= 60", ok);

  ok = true;
  for (std::int64_t m = 2; m <= 40; ++m) {
    const BigInt sign = (m % 2 == 0) ? 1 : -1;
    ok = ok && diagonal_L(1, m) == sign && diagonal_L(2, m) == -sign * BigInt(m * (m - 1) / 2);
    ok = ok && diagonal_K(1, m) == (BigInt(1) << (m - 1)) - 1;
    if (m >= 3) {
      const BigInt p3 = boost::multiprecision::pow(BigInt(3), unsigned(m - 1));
      ok = ok && diagonal_K(2, m) * 2 == (BigInt(1) << m) - 1 - p3;
    }
  }
  detail::add_exact(out, S, "diagonal closed forms m <= 40", ok);

  const IdentityReport ids = verify_polynomial_identities(40);
  detail::add_exact(out, S, "polynomial identities m <= 40 (" + std::to_string(ids.checks.size()) + " checks)",
                    ids.all_passed());
  return out;
}

inline Results verify_operator() {
  constexpr std::string_view S = "operator";
  using detail::Series;
  Results out;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0), ub(-0.8, 0.8);
  auto random_series = [&](std::size_t order) {
    std::vector<double> a(order + 1);
    for (auto& v : a) v = u(rng);
    return Series(std::move(a));
  };

  double comp = 0.0, inv = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Series s = random_series(16);
    const double b1 = ub(rng), b2 = ub(rng);
    comp = std::max(comp, ce::max_relative_difference(ce::ce_exp_apply(b1, ce::ce_exp_apply(b2, s)),
                                                      ce::ce_exp_apply(b1 + b2, s)));
    inv = std::max(inv, ce::max_relative_difference(ce::ce_exp_apply(-b1, ce::ce_exp_apply(b1, s)), s));
  }
  detail::add(out, S, "exp(b1 xD) exp(b2 xD) = exp((b1+b2) xD)", comp, 1e-12);
  detail::add(out, S, "exp(-b xD) exp(b xD) = identity", inv, 1e-12);

  double c1 = 0.0, c2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Series s = random_series(20);
    c1 = std::max(c1, ce::max_relative_difference(detail::sub(ce::derivative(ce::mul_x(s)), ce::mul_x(ce::derivative(s))), s));
    const Series a = ce::mul_x(ce::derivative(ce::derivative(ce::mul_x(s))));
    const Series comm = detail::sub(a, ce::derivative(ce::mul_x(ce::mul_x(ce::derivative(s)))));
    for (std::size_t n = 0; n <= comm.order(); ++n)
      if (a[n] != 0.0) c2 = std::max(c2, std::abs(comm[n]) / std::abs(a[n]));
  }
  detail::add(out, S, "[D, x] = identity", c1, 1e-12);
  detail::add(out, S, "[xD, Dx] = 0", c2, 1e-12);

  double pow_inv = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(17);
    a[0] = 0.0;
    for (std::size_t n = 1; n < a.size(); ++n) a[n] = u(rng);
    const Series s(a);
    pow_inv = std::max(pow_inv, ce::max_relative_difference(ce::ce_int_apply(3, 1.0, ce::ce_pow_apply(3, s)), s));
  }
  detail::add(out, S, "(int dx/x)^m inverts (xD)^m", pow_inv, 1e-12);

  const auto rows = triangle(90);
  constexpr std::size_t N = 24;
  double shift = 0.0;
  for (std::size_t m = 0; m <= 10; ++m) {
    const auto base = ce::exp_poly_series(rows[m], N);
    for (std::size_t j = 0; m + j <= 10; ++j)
      shift = std::max(shift, ce::max_relative_difference(ce::ce_pow_apply(j, base), ce::exp_poly_series(rows[m + j], N)));
  }
  detail::add(out, S, "(xD)^j e^-x S_m = e^-x S_{m+j}, m+j <= 10, N = 24", shift, 1e-9);

  double scaling = 0.0;
  for (double beta : {-0.5, -0.2, 0.3, 0.9}) {
    for (std::size_t m = 0; m <= 10; ++m) {
      const auto lhs = ce::ce_exp_apply(-beta, ce::exp_poly_series(rows[m], N));
      const auto rhs = ce::scaled_exp_poly_series(rows[m], N, beta);
      scaling = std::max(scaling, ce::max_relative_difference(lhs, rhs));
      if (std::abs(beta) > 0.3) continue;
      std::vector<double> acc(N + 1, 0.0);
      double w = 1.0;
      for (std::size_t j = 0; m + j <= 90; ++j) {
        if (j > 0) w *= -beta / static_cast<double>(j);
        const auto t = ce::exp_poly_series(rows[m + j], N);
        for (std::size_t n = 0; n <= N; ++n) acc[n] += w * t[n];
      }
      scaling = std::max(scaling, ce::max_relative_difference(Series(acc), rhs));
    }
  }
  detail::add(out, S, "exp(-b xD) e^-x S_m = e^{-x e^-b} S_m(x e^-b), m <= 10, N = 24", scaling, 1e-9);

  const auto z = ce::zeta_op_apply(2.0, ce::LaurentNegSeries<double>::power(1));
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  detail::add(out, S, "zeta(-2 xD) x^-1 = zeta(2) x^-1", std::abs(z.at(1) - pi2_6) / pi2_6, 1e-12);
  return out;
}

inline Results verify_series() {
  constexpr std::string_view S = "series";
  Results out;
  double a1 = 0.0;
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const double closed = f_closed_alpha1(x);
    const double direct = f_direct(x, 1.0).value.real();
    const EvalReport t = f_transformed(SeriesQuery{cplx(x, 0.0), 1.0, 1e-8});
    const double scale = std::max(1.0, std::numeric_limits<double>::epsilon() * t.cancellation / 1e-6);
    a1 = std::max({a1, std::abs(direct - closed), std::abs(t.value.real() - closed) / scale});
  }
  detail::add(out, S, "alpha = 1: direct, transformed, closed form agree", a1, 1e-6);

  double cross = 0.0;
  for (double alpha : {1.0, 1.6, 2.0, 2.8}) {
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
      const EvalReport t = f_transformed(SeriesQuery{cplx(x, 0.0), alpha, 1e-8});
      const double scale = std::max(1.0, std::numeric_limits<double>::epsilon() * t.cancellation / 1e-6);
      cross = std::max(cross, std::abs(t.value.real() - f_direct(x, alpha).value.real()) / scale);
    }
  }
  detail::add(out, S, "transformed = direct on x in [0.5, 3], alpha in [1, 2.8]", cross, 1e-6);

  bool mono = true;
  for (double x : {0.5, 1.0, 2.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {0.5, 1.0, 1.6, 2.0, 2.8}) {
      const double v = f_direct(x, alpha).value.real();
      mono = mono && v < prev && v > std::exp(-x);
      prev = v;
    }
  }
  detail::add_exact(out, S, "f strictly decreasing in alpha and above e^-x", mono);

  double conj = 0.0;
  for (double alpha : {1.0, 2.8}) {
    const ComplexGrid g = f_complex_grid(GridSpec{0.1, 2.0, -2.0, 2.0, 41}, alpha);
    for (std::size_t i = 0; i < g.steps; ++i) {
      for (std::size_t j = 0; j < g.steps; ++j) {
        const auto& a = g.points[i * g.steps + j];
        const auto& b = g.points[i * g.steps + (g.steps - 1 - j)];
        if (a.value && b.value) conj = std::max(conj, std::abs(*b.value - std::conj(*a.value)) / std::abs(*a.value));
      }
    }
  }
  detail::add(out, S, "conjugate symmetry on 41x41 grids, alpha in {1, 2.8}", conj, 1e-13);

  double integ = 0.0, improper = 0.0;
  for (double alpha : {1.5, 2.0, 3.0}) {
    for (double x : {1.0, 2.0}) integ = std::max(integ, integral_identity_residual(x, alpha));
    const double z = special::zeta(alpha);
    improper = std::max(improper, std::abs(integral_of_series_to_infinity(alpha) - z) / z);
  }
  detail::add(out, S, "int_0^x f = zeta(alpha) - sum e^{-x k^alpha}/k^alpha", integ, 1e-6);
  detail::add(out, S, "int_0^inf f = zeta(alpha)", improper, 1e-6);

  const double h = 1e-5, x = 2.0;
  const double fd = (f_direct(x + h, 1.6, 1e-15).value.real() - f_direct(x - h, 1.6, 1e-15).value.real()) / (2 * h);
  detail::add(out, S, "derivative series vs central difference, x = 2, alpha = 1.6",
              std::abs(f_derivative(SeriesQuery{cplx(x, 0.0), 1.6, 1e-8}).value.real() - fd), 1e-5);

  int wins = 0;
  for (const auto& row : fs::asymptotic_comparison(1.6, {2.0, 3.0, 4.0, 5.0, 6.0}))
    if (!row.error && row.err_simple < row.err_two_term) ++wins;
  out.push_back({std::string(S), "e^-x beats the two-term form in >= 4 of 5 points (alpha = 1.6)", wins >= 4,
                 5.0 - wins, 1.0});
  return out;
}

inline Results verify_funcseries() {
  constexpr std::string_view S = "funcseries";
  Results out;
  double gf = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.0, 4.0})
    for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) gf = std::max(gf, fs::gf_eval(x, t).residual);
  detail::add(out, S, "generating function residual, 25-point grid", gf, 1e-9);

  double swap = 0.0, sref = 0.0;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const auto a = fs::symmetric_gf_eval(0.25 * i, 0.25 * j);
      const auto b = fs::symmetric_gf_eval(0.25 * j, 0.25 * i);
      swap = std::max(swap, std::abs(a.final - b.final));
      sref = std::max({sref, a.residual, b.residual});
    }
  }
  detail::add(out, S, "symmetric generating function swap on [0,2]^2", swap, 2e-8);
  detail::add(out, S, "symmetric generating function vs e^-xy on [0,2]^2", sref, 1e-8);

  fs::TrigOptions opt;
  opt.tol = 1e-8;
  double trig = 0.0, pyth = 0.0;
  for (double x = 0.0; x <= std::numbers::pi / 2.0 - 0.05; x += 0.01) {
    const double s = fs::sin_series(x, opt).final.real(), c = fs::cos_series(x, opt).final.real();
    trig = std::max({trig, std::abs(s - std::sin(x)), std::abs(c - std::cos(x))});
    pyth = std::max(pyth, std::abs(s * s + c * c - 1.0));
  }
  detail::add(out, S, "sin/cos series on [0, pi/2 - 0.05]", trig, 1e-8);
  detail::add(out, S, "sin^2 + cos^2 from the series", pyth, 2e-8);

  auto [s1, c1] = fs::trig_from_symmetric(cplx(1.0, 0.0), 60);
  detail::add(out, S, "sin/cos from the symmetric form at z = 1",
              std::max(s1.residual, c1.residual), 1e-7);

  double gauss = 0.0;
  bool gauss_terms = true;
  for (double x = 0.0; x <= 0.9 + 1e-12; x += 0.05) {
    const auto r = fs::gaussian_series(x);
    gauss = std::max(gauss, r.residual);
    gauss_terms = gauss_terms && r.terms <= 201;
  }
  detail::add(out, S, "Gaussian series on [0, 0.9]", gauss_terms ? gauss : 1.0, 1e-6);
  const double one = std::abs(fs::gaussian_one_term(0.5) - std::exp(-0.25));
  detail::add(out, S, "one-term Gaussian error at 0.5 near 0.019", std::abs(one - 0.019) / 0.019, 0.1);

  double sums = 0.0;
  for (double x = 0.0; x <= 2.0 + 1e-12; x += 0.25)
    for (const auto& r : fs::summation_identity_residuals(x)) sums = std::max(sums, r.residual);
  detail::add(out, S, "summation identities on [0, 2]", sums, 1e-8);
  return out;
}

/// "poly", "operator", "series", "funcseries" or "all".
inline Results run_suite(std::string_view name) {
  if (name == "poly") return verify_poly();
  if (name == "operator") return verify_operator();
  if (name == "series") return verify_series();
  if (name == "funcseries") return verify_funcseries();
  if (name == "all") {
    Results out;
    for (auto s : suite_names()) {
      Results r = run_suite(s);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  throw DomainError("unknown verify suite: " + std::string(name));
}

inline bool all_passed(const Results& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
}

}  // namespace expser::verify
