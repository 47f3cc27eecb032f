#pragma once

// Function expansions in the polynomials S_m: the generating function
// sum_m S_m(x) t^m / m! = e^{x - x e^t}, its symmetric form with t = ln(1 + y),
// and the exp / sin / cos / Gaussian series that follow from them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expser/compensated.hpp"
#include "expser/errors.hpp"
#include "expser/polycore.hpp"
#include "expser/serieseval.hpp"

namespace expser::fs {

/// Running partial sums of one expansion. Trajectories are always kept.
struct ExpansionResult {
  std::vector<cplx> partial_sums;  ///< value after each added term
  cplx final{0.0, 0.0};
  std::size_t terms = 0;
  bool converged = true;
  std::optional<cplx> reference;
  double residual = std::numeric_limits<double>::quiet_NaN();  ///< |final - reference|
  /// trig_from_symmetric only: imaginary part carried by each term of the
  /// S_m(-iz) half, cancelled by the matching term of the S_m(iz) half.
  std::vector<double> term_imag;

  void push(cplx v) {
    partial_sums.push_back(v);
    final = v;
    terms = partial_sums.size();
  }
  void set_reference(cplx ref) {
    reference = ref;
    residual = std::abs(final - ref);
  }
};

/// Stopping rule shared by the adaptive expansions, matching the inner rule of
/// f_transformed: at least 8 terms, three consecutive terms below
/// tol * |running sum|, and a decreasing envelope.
struct AdaptivePolicy {
  double tol = 1e-13;
  std::size_t m_cap = 300;
};

namespace detail {

inline constexpr std::size_t kMinTerms = 8;

/// term(m) and envelope(m) for m = 0, 1, ...; records every partial sum.
template <typename TermFn, typename EnvFn>
ExpansionResult adaptive_sum(const AdaptivePolicy& p, TermFn&& term, EnvFn&& envelope) {
  NeumaierSum<cplx> acc;
  ExpansionResult r;
  double prev_env = std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (std::size_t m = 0; m <= p.m_cap; ++m) {
    const cplx t = term(m);
    acc += t;
    r.push(acc.value());
    const double env = envelope(m);
    small_run = (std::abs(t) <= p.tol * std::abs(r.final)) ? small_run + 1 : 0;
    const bool decreasing = env < prev_env || env == 0.0;
    prev_env = env;
    if (m >= kMinTerms && small_run >= 3 && decreasing) return r;
  }
  r.converged = false;
  return r;
}

inline void check_depth(const PolyTable& table, std::size_t m) {
  expser::detail::require(m <= table.depth(), "expansion needs more rows than the table holds");
}

/// (m + j)! / m!
inline double rising(std::size_t m, std::size_t j) {
  double v = 1.0;
  for (std::size_t i = 1; i <= j; ++i) v *= static_cast<double>(m + i);
  return v;
}

}  // namespace detail

/// sum_{m<=M} S_m(x) t^m / m!, reference e^{x - x e^t}.
inline ExpansionResult gf_eval(double x, double t, std::size_t M, const PolyTable& table = shared_table()) {
  detail::check_depth(table, M);
  NeumaierSum<double> acc;
  ExpansionResult r;
  double tp = 1.0;
  for (std::size_t m = 0; m <= M; ++m) {
    if (m > 0) tp *= t;
    acc += tp * table.eval_normalized(m, x);
    r.push(acc.value());
  }
  r.set_reference(std::exp(x - x * std::exp(t)));
  return r;
}

/// Adaptive-M generating function.
inline ExpansionResult gf_eval(double x, double t, const AdaptivePolicy& p = {},
                               const PolyTable& table = shared_table()) {
  detail::check_depth(table, p.m_cap);
  auto term = [&](std::size_t m) { return cplx(std::pow(t, static_cast<double>(m)) * table.eval_normalized(m, x)); };
  auto env = [&](std::size_t m) {
    return std::pow(std::abs(t), static_cast<double>(m)) * table.envelope_normalized(m, std::abs(x));
  };
  ExpansionResult r = detail::adaptive_sum(p, term, env);
  r.set_reference(std::exp(x - x * std::exp(t)));
  return r;
}

namespace detail {
inline double log1p_checked(double y) {
  expser::detail::require(y > -1.0, "symmetric generating function needs y > -1");
  return std::log1p(y);
}
}  // namespace detail

/// sum_{m<=M} S_m(x) (ln(1 + y))^m / m!, reference e^{-xy}.
inline ExpansionResult symmetric_gf_eval(double x, double y, std::size_t M, const PolyTable& table = shared_table()) {
  ExpansionResult r = gf_eval(x, detail::log1p_checked(y), M, table);
  r.set_reference(std::exp(-x * y));
  return r;
}

inline ExpansionResult symmetric_gf_eval(double x, double y, const AdaptivePolicy& p = {},
                                         const PolyTable& table = shared_table()) {
  ExpansionResult r = gf_eval(x, detail::log1p_checked(y), p, table);
  r.set_reference(std::exp(-x * y));
  return r;
}

/// sum_{m<=M} (pi/2)^m S_m(x) (sign i)^m / m!, reference e^{x (1 - sign i)}.
inline ExpansionResult exp_series_complexphase(double x, int sign, std::size_t M,
                                               const PolyTable& table = shared_table()) {
  expser::detail::require(sign == 1 || sign == -1, "exp_series_complexphase: sign must be +1 or -1");
  detail::check_depth(table, M);
  const cplx unit(0.0, static_cast<double>(sign));
  NeumaierSum<cplx> acc;
  ExpansionResult r;
  cplx w(1.0, 0.0);
  for (std::size_t m = 0; m <= M; ++m) {
    if (m > 0) w *= unit * (std::numbers::pi / 2.0);
    acc += w * table.eval_normalized(m, x);
    r.push(acc.value());
  }
  r.set_reference(std::exp(cplx(x, -sign * x)));
  return r;
}

struct TrigOptions {
  double tol = 1e-8;
  std::size_t m_cap = 200;        ///< highest polynomial index used
  bool quadrant_reduction = false;  ///< off: arguments must lie in [0, pi/2)
};

namespace detail {

/// sin: -e^{-x} sum_j S_{2j+1}(x) (pi/2)^{2j+1} (-1)^j / (2j+1)!
/// cos:  e^{-x} sum_j S_{2j}(x) (pi/2)^{2j} (-1)^j / (2j)!
/// Terms are added until two consecutive partial sums lie within tol of the
/// reference, or the index cap is reached.
inline ExpansionResult trig_core(bool want_sin, double x, double sign, double reference, const TrigOptions& opt,
                                 const PolyTable& table) {
  check_depth(table, opt.m_cap);
  const double ex = std::exp(-x);
  const double half_pi = std::numbers::pi / 2.0;
  NeumaierSum<double> acc;
  ExpansionResult r;
  int close = 0;
  for (std::size_t m = want_sin ? 1 : 0; m <= opt.m_cap; m += 2) {
    const std::size_t j = m / 2;
    const double alt = (j % 2 == 0) ? 1.0 : -1.0;
    const double term = (want_sin ? -ex : ex) * alt * std::pow(half_pi, static_cast<double>(m)) *
                        table.eval_normalized(m, x);
    acc += term;
    r.push(sign * acc.value());
    close = (std::abs(r.final.real() - reference) <= opt.tol) ? close + 1 : 0;
    if (close >= 2) {
      r.set_reference(reference);
      return r;
    }
  }
  r.converged = false;
  r.set_reference(reference);
  return r;
}

/// Maps x to r in [0, pi/2) with sin x = s_sin * f(r), cos x = s_cos * g(r);
/// swap means f = cos, g = sin.
struct Reduced {
  double r;
  double s_sin, s_cos;
  bool swap;
};

inline Reduced reduce_quadrant(double x) {
  const double pi = std::numbers::pi;
  double r = std::remainder(x, 2.0 * pi);  // [-pi, pi]
  double s_sin = 1.0;
  if (r < 0.0) {
    r = -r;
    s_sin = -1.0;
  }
  if (r < pi / 2.0) return {r, s_sin, 1.0, false};
  // sin(pi/2 + q) = cos q, cos(pi/2 + q) = -sin q
  double q = r - pi / 2.0;
  if (q >= pi / 2.0) q = std::nextafter(pi / 2.0, 0.0);
  return {q, s_sin, -1.0, true};
}

inline ExpansionResult trig_series(bool want_sin, double x, const TrigOptions& opt, const PolyTable& table) {
  const double reference = want_sin ? std::sin(x) : std::cos(x);
  if (!opt.quadrant_reduction) {
    if (!(x >= 0.0 && x < std::numbers::pi / 2.0))
      throw DomainError("trig series: x must lie in [0, pi/2) unless quadrant reduction is enabled");
    return trig_core(want_sin, x, 1.0, reference, opt, table);
  }
  const Reduced red = reduce_quadrant(x);
  const bool use_sin = red.swap ? !want_sin : want_sin;
  const double sign = want_sin ? red.s_sin : red.s_cos;
  return trig_core(use_sin, red.r, sign, reference, opt, table);
}

}  // namespace detail

/// First K terms of the sin (or cos) series, for approximation plots.
inline ExpansionResult trig_partial(bool want_sin, double x, std::size_t K, const PolyTable& table = shared_table()) {
  expser::detail::require(K >= 1, "trig_partial: needs at least one term");
  TrigOptions opt;
  opt.tol = -1.0;  // never met: run to the cap
  opt.m_cap = 2 * K - (want_sin ? 1 : 2);
  ExpansionResult r = detail::trig_core(want_sin, x, 1.0, want_sin ? std::sin(x) : std::cos(x), opt, table);
  r.converged = true;
  return r;
}

inline ExpansionResult sin_series(double x, const TrigOptions& opt = {}, const PolyTable& table = shared_table()) {
  return detail::trig_series(true, x, opt, table);
}

inline ExpansionResult cos_series(double x, const TrigOptions& opt = {}, const PolyTable& table = shared_table()) {
  return detail::trig_series(false, x, opt, table);
}

/// sin z = (1/2i) sum_m (S_m(-iz) - S_m(iz)) (ln 2)^m / m!,
/// cos z = (1/2)  sum_m (S_m(-iz) + S_m(iz)) (ln 2)^m / m!.
/// Both follow from the symmetric generating function at y = 1, where
/// sum_m S_m(w) (ln 2)^m / m! = e^{-w}.
inline std::pair<ExpansionResult, ExpansionResult> trig_from_symmetric(cplx z, std::size_t M,
                                                                       const PolyTable& table = shared_table()) {
  detail::check_depth(table, M);
  const cplx i(0.0, 1.0);
  const cplx a = -i * z, b = i * z;
  const double ln2 = std::numbers::ln2;
  NeumaierSum<cplx> s_acc, c_acc;
  ExpansionResult s, c;
  double lp = 1.0;
  for (std::size_t m = 0; m <= M; ++m) {
    if (m > 0) lp *= ln2;
    const cplx pa = lp * table.eval_normalized(m, a);
    const cplx pb = lp * table.eval_normalized(m, b);
    const cplx sin_a = pa / (2.0 * i), cos_a = pa / 2.0;
    s_acc += sin_a - pb / (2.0 * i);
    c_acc += cos_a + pb / 2.0;
    s.push(s_acc.value());
    c.push(c_acc.value());
    s.term_imag.push_back(sin_a.imag());
    c.term_imag.push_back(cos_a.imag());
  }
  s.set_reference(std::sin(z));
  c.set_reference(std::cos(z));
  return {std::move(s), std::move(c)};
}

/// e^{-x^2} = sum_m S_m(x) (ln(x + 1))^m / m!, adaptive in M.
inline ExpansionResult gaussian_series(double x, const AdaptivePolicy& p = {}, const PolyTable& table = shared_table()) {
  expser::detail::require(x > -1.0, "gaussian_series: x must exceed -1");
  ExpansionResult r = gf_eval(x, std::log1p(x), p, table);
  r.set_reference(std::exp(-x * x));
  return r;
}

/// Partial sum through S_K; K = 1 is the one-term form.
inline ExpansionResult gaussian_partial(double x, std::size_t K, const PolyTable& table = shared_table()) {
  expser::detail::require(x > -1.0, "gaussian_partial: x must exceed -1");
  ExpansionResult r = gf_eval(x, std::log1p(x), K, table);
  r.set_reference(std::exp(-x * x));
  return r;
}

/// 1 - x ln(x + 1)
inline double gaussian_one_term(double x) {
  expser::detail::require(x > -1.0, "gaussian_one_term: x must exceed -1");
  return 1.0 - x * std::log1p(x);
}

struct NamedResidual {
  std::string name;
  double residual;
  std::size_t terms;
};

/// Summation identities at t = 1 of the generating function, each as
/// |adaptive partial sum - closed form|. G = e^{-x(e-1)}.
inline std::vector<NamedResidual> summation_identity_residuals(double x, const AdaptivePolicy& p = {},
                                                      const PolyTable& table = shared_table()) {
  detail::check_depth(table, p.m_cap + 3);
  const double e = std::numbers::e;
  const double G = std::exp(-x * (e - 1.0));
  const double ax = std::abs(x);
  std::vector<NamedResidual> out;

  auto run = [&](const std::string& name, double closed, auto&& term, auto&& env) {
    ExpansionResult r = detail::adaptive_sum(p, term, env);
    out.push_back({name, std::abs(r.final.real() - closed), r.terms});
  };
  // S_{m+j}(x) / m! and its envelope.
  auto shifted = [&](std::size_t m, std::size_t j) { return detail::rising(m, j) * table.eval_normalized(m + j, x); };
  auto shifted_env = [&](std::size_t m, std::size_t j) {
    return detail::rising(m, j) * table.envelope_normalized(m + j, ax);
  };
  // S_{m+j}(x) / (x m!)
  auto shifted_over_x = [&](std::size_t m, std::size_t j) {
    return detail::rising(m, j) * table.eval_normalized_over_x(m + j, x);
  };

  run("sum S_m/m! = G", G, [&](std::size_t m) { return cplx(shifted(m, 0)); },
      [&](std::size_t m) { return shifted_env(m, 0); });
  run("sum S'_m/m! = -(e-1)G", -(e - 1.0) * G,
      [&](std::size_t m) { return cplx(table.eval_normalized_derivative(m, x)); },
      [&](std::size_t m) { return shifted_env(m, 0) * static_cast<double>(m + 1); });
  run("sum S_{m+1}/m! = -ex G", -e * x * G, [&](std::size_t m) { return cplx(shifted(m, 1)); },
      [&](std::size_t m) { return shifted_env(m, 1); });
  run("sum S_{m+2}/m! = (-xe + x^2 e^2) G", (-x * e + x * x * e * e) * G,
      [&](std::size_t m) { return cplx(shifted(m, 2)); }, [&](std::size_t m) { return shifted_env(m, 2); });
  run("sum S_{m+3}/m! = ex(3ex - 1 - e^2 x^2) G", e * x * (3.0 * e * x - 1.0 - e * e * x * x) * G,
      [&](std::size_t m) { return cplx(shifted(m, 3)); }, [&](std::size_t m) { return shifted_env(m, 3); });
  run("sum (S_{m+1} + ex S_m)/m! = 0", 0.0,
      [&](std::size_t m) { return cplx(shifted(m, 1) + e * x * shifted(m, 0)); },
      [&](std::size_t m) { return shifted_env(m, 1) + e * ax * shifted_env(m, 0); });
  run("sum (e S_{m+1} + e S_m + S_{m+2}/x)/m! = 0", 0.0,
      [&](std::size_t m) { return cplx(e * shifted(m, 1) + e * shifted(m, 0) + shifted_over_x(m, 2)); },
      [&](std::size_t m) { return e * shifted_env(m, 1) + e * shifted_env(m, 0) + shifted_env(m, 2); });
  if (x != 0.0) {
    run("sum ((1 - ex) S_m + S_{m+2}/(ex))/m! = 0", 0.0,
        [&](std::size_t m) { return cplx((1.0 - e * x) * shifted(m, 0) + shifted_over_x(m, 2) / e); },
        [&](std::size_t m) { return (1.0 + e * ax) * shifted_env(m, 0) + shifted_env(m, 2) / (e * ax); });
  }

  // x d/dx (e^{-x} S'_m) = e^{-x} ((1 - 1/x) S_{m+1} + S_{m+2}/x), checked per m
  // after dividing by m!; the worst residual over m <= 40 is reported.
  if (x != 0.0) {
    double worst = 0.0;
    const std::size_t M = std::min<std::size_t>(40, table.depth() - 2);
    for (std::size_t m = 0; m <= M; ++m) {
      const double d1 = table.eval_normalized_derivative(m, x, 1);
      const double d2 = table.eval_normalized_derivative(m, x, 2);
      const double lhs = x * std::exp(-x) * (d2 - d1);
      const double rhs = std::exp(-x) * ((1.0 - 1.0 / x) * shifted(m, 1) + shifted_over_x(m, 2));
      const double scale = std::max({1.0, std::abs(lhs), std::exp(-x) * shifted_env(m, 2) / ax});
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    out.push_back({"x d/dx (e^-x S'_m) = e^-x ((1 - 1/x) S_{m+1} + S_{m+2}/x)", worst, M + 1});
  }
  return out;
}

struct AsymptoticRow {
  double x = 0.0;
  double f = std::numeric_limits<double>::quiet_NaN();
  double exp_neg_x = std::numeric_limits<double>::quiet_NaN();
  double two_term = std::numeric_limits<double>::quiet_NaN();
  double err_simple = std::numeric_limits<double>::quiet_NaN();
  double err_two_term = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::string> error;
};

/// For each x: f from direct summation, the bare e^{-x}, and the two-term
/// large-x approximation, with both absolute errors.
inline std::vector<AsymptoticRow> asymptotic_comparison(double alpha, const std::vector<double>& xs) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    AsymptoticRow row;
    row.x = x;
    try {
      row.two_term = f_asymptotic(x, alpha);
      row.f = f_direct(x, alpha, 1e-15).value.real();
      row.exp_neg_x = std::exp(-x);
      row.err_simple = std::abs(row.exp_neg_x - row.f);
      row.err_two_term = std::abs(row.two_term - row.f);
    } catch (const std::exception& e) {
      row = AsymptoticRow{};
      row.x = x;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace expser::fs
