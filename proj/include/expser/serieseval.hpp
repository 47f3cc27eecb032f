#pragma once

// Evaluation of the generalized exponential power series
//
//   f(z, alpha) = sum_{k>=1} exp(-z k^alpha),   Re z > 0, alpha > 0,
//
// directly, through the nested polynomial form
//
//   f(x, alpha) = e^{-x} sum_k sum_m (alpha ln k)^m S_m(x) / m!,
//
// through the two-term large-x approximation, and in closed form at alpha = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "expser/compensated.hpp"
#include "expser/errors.hpp"
#include "expser/polycore.hpp"
#include "expser/special.hpp"

namespace expser {

using cplx = std::complex<double>;

enum class Method { direct, transformed, asymptotic, closed_alpha1 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct:
      return "direct";
    case Method::transformed:
      return "transformed";
    case Method::asymptotic:
      return "asymptotic";
    case Method::closed_alpha1:
      return "closed_alpha1";
  }
  return "unknown";
}

/// Result of one evaluation together with the evidence for its accuracy.
struct EvalReport {
  cplx value{0.0, 0.0};
  std::size_t terms_used = 0;  ///< outer (k) terms summed
  double tail_bound = 0.0;     ///< bound on the magnitude of the omitted outer terms
  double cancellation = 1.0;   ///< max |partial sum| / |value|
  Method method = Method::direct;
  std::vector<std::string> warnings;
};

/// Convergence failure that still carries the best available estimate.
class SeriesConvergenceError : public ConvergenceError {
 public:
  SeriesConvergenceError(const std::string& what, EvalReport best)
      : ConvergenceError(what), best_(std::move(best)) {}
  [[nodiscard]] const EvalReport& best_estimate() const { return best_; }

 private:
  EvalReport best_;
};

struct SeriesQuery {
  cplx z{1.0, 0.0};
  double alpha = 1.0;
  double tol = 1e-12;
  std::size_t k_cap = 10'000'000;
  std::size_t m_cap = 300;

  void validate() const {
    detail::require(tol > 0.0, "SeriesQuery: tol must be positive");
    detail::require(k_cap >= 2, "SeriesQuery: k_cap must be >= 2");
    detail::require(m_cap >= 4, "SeriesQuery: m_cap must be >= 4");
    detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()), "SeriesQuery: z must be finite");
    detail::require(z.real() > 0.0, "SeriesQuery: Re(z) must be positive, the series diverges otherwise");
    detail::require(alpha > 0.0 && std::isfinite(alpha), "SeriesQuery: alpha must be positive");
  }
};

namespace detail {

/// Magnitudes |t_k| = k^{alpha p} exp(-a k^alpha) of the outer terms and a
/// rigorous bound on sum_{j > K} |t_j|.
///
/// For alpha >= 1 the sequence is log-concave, so once its ratio r drops below
/// one the tail is bounded by the geometric series t_{K+1} / (1 - r). For
/// alpha < 1 the ratio tends to one and the integral of the decreasing
/// envelope is used instead: (1/alpha) a^{-p-1/alpha} Gamma(p + 1/alpha, a K^alpha).
struct TailModel {
  double a;
  double alpha;
  int p;  // 0 or 1

  [[nodiscard]] double magnitude(double k) const {
    const double ka = std::pow(k, alpha);
    return (p == 0 ? 1.0 : ka) * std::exp(-a * ka);
  }

  [[nodiscard]] double bound(std::size_t K) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double k = static_cast<double>(K);
    if (alpha >= 1.0) {
      const double t1 = magnitude(k + 1.0);
      if (t1 == 0.0) return 0.0;
      const double r = magnitude(k + 2.0) / t1;
      // p = 1 is only log-concave past its maximum at a u^alpha = 1.
      if (!(r < 1.0) || (p == 1 && a * std::pow(k + 1.0, alpha) < 1.0)) return inf;
      return t1 / (1.0 - r);
    }
    const double x = a * std::pow(k, alpha);
    if (p == 1 && x < 1.0) return inf;
    const double shape = p + 1.0 / alpha;
    const double q = boost::math::gamma_q(shape, x);
    if (q == 0.0) return 0.0;
    const double log_bound = -std::log(alpha) - shape * std::log(a) + boost::math::lgamma(shape) + std::log(q);
    return std::exp(log_bound);
  }
};

inline double cancellation_ratio(double max_partial, double value_abs) {
  if (value_abs == 0.0) return 1.0;
  return std::max(1.0, max_partial / value_abs);
}

inline void note_cancellation(EvalReport& r) {
  if (r.cancellation > 1e6) {
    std::ostringstream os;
    os << "cancellation factor " << r.cancellation << ": expect relative error near "
       << r.cancellation * std::numeric_limits<double>::epsilon();
    r.warnings.push_back(os.str());
  }
}

/// Outer k-summation shared by every series route. term(k) returns the k-th
/// term (and may throw); the tail model decides where to stop.
template <typename TermFn>
EvalReport sum_outer(const SeriesQuery& q, const TailModel& tail, Method method, TermFn&& term) {
  NeumaierSum<cplx> acc;
  double max_partial = 0.0;
  EvalReport report;
  report.method = method;
  for (std::size_t k = 1; k <= q.k_cap; ++k) {
    acc += term(k);
    const cplx partial = acc.value();
    const double mag = std::abs(partial);
    max_partial = std::max(max_partial, mag);
    report.terms_used = k;
    report.value = partial;
    // Cheap necessary condition before evaluating the full bound.
    if (tail.magnitude(static_cast<double>(k) + 1.0) > q.tol * mag) continue;
    const double bound = tail.bound(k);
    if (bound <= q.tol * mag) {
      report.tail_bound = bound;
      report.cancellation = cancellation_ratio(max_partial, mag);
      note_cancellation(report);
      return report;
    }
  }
  report.tail_bound = tail.bound(q.k_cap);
  report.cancellation = cancellation_ratio(max_partial, std::abs(report.value));
  report.warnings.push_back("k_cap exhausted before the tail bound met tol");
  throw SeriesConvergenceError("series: k_cap = " + std::to_string(q.k_cap) + " exhausted", report);
}

/// Result of one inner m-summation.
struct InnerSum {
  double value = 0.0;
  /// Largest intermediate magnitude: running sums and the absolute-coefficient
  /// envelope t^m sum_k |c_k| x^k, which bounds the rounding inside each S_m(x).
  double max_partial = 0.0;
  std::size_t terms = 0;
};

/// sum_{m>=0} t^m P_m where coefficient(m) = P_m and envelope(m) bounds |P_m|.
///
/// Stops at the first m >= 8 where the last three terms are all below
/// tol * |running sum| and the envelope t^m |P|_m is decreasing. The series is
/// alternating with super-exponentially growing coefficients, so term
/// smallness alone is not trusted.
template <typename CoeffFn, typename EnvFn>
InnerSum sum_inner(double t, double tol, std::size_t m_cap, CoeffFn&& coefficient, EnvFn&& envelope) {
  constexpr std::size_t kMinTerms = 8;
  NeumaierSum<double> acc;
  InnerSum out;
  double tp = 1.0;
  double prev_env = std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (std::size_t m = 0; m <= m_cap; ++m) {
    if (m > 0) tp *= t;
    const double term = tp * coefficient(m);
    acc += term;
    const double running = acc.value();
    out.max_partial = std::max(out.max_partial, std::abs(running));
    out.terms = m + 1;
    const double env = tp * envelope(m);
    out.max_partial = std::max(out.max_partial, env);
    small_run = (std::abs(term) <= tol * std::abs(running)) ? small_run + 1 : 0;
    const bool decreasing = env < prev_env || env == 0.0;
    prev_env = env;
    if (m >= kMinTerms && small_run >= 3 && decreasing) {
      out.value = running;
      return out;
    }
    detail::require(std::isfinite(term), "inner sum overflowed");
  }
  out.value = acc.value();
  out.terms = m_cap + 1;
  throw ConvergenceError("inner polynomial sum did not settle within m_cap = " + std::to_string(m_cap));
}

}  // namespace detail

/// Direct partial summation with a certified tail bound.
inline EvalReport f_direct(const SeriesQuery& q) {
  q.validate();
  const detail::TailModel tail{q.z.real(), q.alpha, 0};
  const cplx z = q.z;
  const double alpha = q.alpha;
  return detail::sum_outer(q, tail, Method::direct, [z, alpha](std::size_t k) {
    const double ka = std::pow(static_cast<double>(k), alpha);
    return std::exp(cplx(-z.real() * ka, -z.imag() * ka));
  });
}

inline EvalReport f_direct(double x, double alpha, double tol = 1e-12) {
  return f_direct(SeriesQuery{cplx(x, 0.0), alpha, tol});
}

/// alpha = 1: sum_k e^{-kx} = e^{-x} / (1 - e^{-x}) = 1 / expm1(x).
inline double f_closed_alpha1(double x) {
  detail::require(x > 0.0, "f_closed_alpha1: x must be positive");
  return 1.0 / std::expm1(x);
}

namespace detail {

inline void check_polynomial_route(const SeriesQuery& q, const PolyTable& table, std::size_t extra) {
  q.validate();
  require(q.z.imag() == 0.0, "polynomial route needs a real argument");
  require(table.depth() >= q.m_cap + extra, "polynomial route: table shallower than m_cap");
}

template <typename Inner>
EvalReport polynomial_route(const SeriesQuery& q, int tail_power, Method method, Inner&& inner_at) {
  const double x = q.z.real();
  const double ex = std::exp(-x);
  double max_inner = 0.0;
  std::size_t worst_m = 0;
  NeumaierSum<double> partial;  // for the best estimate on failure
  std::size_t done = 0;
  EvalReport r;
  try {
    r = sum_outer(q, TailModel{x, q.alpha, tail_power}, method, [&](std::size_t k) {
      const double t = q.alpha * std::log(static_cast<double>(k));
      const InnerSum s = inner_at(t);
      max_inner = std::max(max_inner, ex * s.max_partial);
      worst_m = std::max(worst_m, s.terms);
      partial += ex * s.value;
      done = k;
      return cplx(ex * s.value, 0.0);
    });
  } catch (const SeriesConvergenceError&) {
    throw;
  } catch (const ConvergenceError& e) {
    EvalReport best;
    best.method = method;
    best.value = partial.value();
    best.terms_used = done;
    best.tail_bound = TailModel{x, q.alpha, tail_power}.bound(done);
    best.cancellation = cancellation_ratio(max_inner, std::abs(best.value));
    best.warnings.push_back(e.what());
    best.warnings.push_back("best estimate sums the first " + std::to_string(done) + " outer terms");
    best.warnings.push_back("inner sums cancel strongly at large alpha ln k; consider a looser tol");
    throw SeriesConvergenceError(e.what(), best);
  }
  r.cancellation = std::max(r.cancellation, cancellation_ratio(max_inner, std::abs(r.value)));
  r.warnings.push_back("inner sums used up to " + std::to_string(worst_m) + " terms");
  note_cancellation(r);
  return r;
}

}  // namespace detail

/// f(x, alpha) from the nested polynomial form. x must be real.
///
/// The outer sum stops by the same tail rule as f_direct applied to the
/// analytically equal inner values exp(-x k^alpha); each inner sum over m stops
/// by the envelope rule of detail::sum_inner.
inline EvalReport f_transformed(const SeriesQuery& q, const PolyTable& table = shared_table()) {
  detail::check_polynomial_route(q, table, 0);
  const double x = q.z.real();
  return detail::polynomial_route(q, 0, Method::transformed, [&](double t) {
    if (t == 0.0) return detail::InnerSum{1.0, 1.0, 1};
    return detail::sum_inner(
        t, q.tol, q.m_cap, [&](std::size_t m) { return table.eval_normalized(m, x); },
        [&](std::size_t m) { return table.envelope_normalized(m, x); });
  });
}

/// d/dx f(x, alpha) = (e^{-x} / x) sum_k sum_m (alpha ln k)^m S_{m+1}(x) / m!.
inline EvalReport f_derivative(const SeriesQuery& q, const PolyTable& table = shared_table()) {
  detail::check_polynomial_route(q, table, 1);
  const double x = q.z.real();
  // S_{m+1}(x) / (x m!) = (m + 1) * [S_{m+1}(x) / (x (m+1)!)], divided exactly.
  auto coefficient = [&](std::size_t m) {
    return static_cast<double>(m + 1) * table.eval_normalized_over_x(m + 1, x);
  };
  auto envelope = [&](std::size_t m) {
    return static_cast<double>(m + 1) * table.envelope_normalized(m + 1, x) / x;
  };
  EvalReport r = detail::polynomial_route(q, 1, Method::transformed, [&](double t) {
    if (t == 0.0) {
      const double c = coefficient(0);
      return detail::InnerSum{c, std::abs(c), 1};
    }
    return detail::sum_inner(t, q.tol, q.m_cap, coefficient, envelope);
  });
  return r;
}

/// Two-term large-x approximation e^{-x} zeta(x alpha) - (e^{-x} x / 2) zeta''(x alpha).
inline double f_asymptotic(double x, double alpha, const special::ZetaConfig& cfg = {}) {
  detail::require(x > 0.0 && alpha > 0.0, "f_asymptotic: x and alpha must be positive");
  const double s = x * alpha;
  detail::require(s > 1.0 + cfg.delta, "f_asymptotic: x*alpha too close to the zeta pole");
  const double ex = std::exp(-x);
  return ex * special::zeta(s, cfg) - 0.5 * ex * x * special::zeta_d2(s, cfg);
}

inline EvalReport asymptotic_report(double x, double alpha, const special::ZetaConfig& cfg = {}) {
  EvalReport r;
  r.method = Method::asymptotic;
  r.value = f_asymptotic(x, alpha, cfg);
  r.terms_used = 2;
  r.warnings.push_back("two-term large-x approximation; no error bound");
  return r;
}

inline EvalReport closed_alpha1_report(double x) {
  EvalReport r;
  r.method = Method::closed_alpha1;
  r.value = f_closed_alpha1(x);
  r.terms_used = 1;
  return r;
}

namespace detail {

/// sum_k exp(-x k^alpha) / k^alpha with the same kind of tail control as f_direct.
inline double weighted_sum(double x, double alpha, double tol) {
  NeumaierSum<double> acc;
  for (std::size_t k = 1;; ++k) {
    const double ka = std::pow(static_cast<double>(k), alpha);
    const double term = std::exp(-x * ka) / ka;
    acc += term;
    // Terms are bounded by exp(-x k^alpha), whose tail TailModel controls.
    const TailModel tail{x, alpha, 0};
    if (tail.magnitude(static_cast<double>(k) + 1.0) <= tol * acc.value() && tail.bound(k) <= tol * acc.value())
      return acc.value();
    require(k < 100'000'000, "weighted_sum: too many terms");
  }
}

/// int_0^{x0} f(t) dt evaluated term by term:
///   sum_k (1 - exp(-x0 k^alpha)) / k^alpha.
/// Summed directly until exp(-x0 K^alpha) is negligible, then the remaining
/// terms are exactly k^{-alpha} and are taken from the Hurwitz zeta tail.
inline double head_integral(double x0, double alpha, const special::ZetaConfig& cfg) {
  const std::size_t K = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(std::pow(45.0 / x0, 1.0 / alpha))) + 1);
  NeumaierSum<double> acc;
  for (std::size_t k = K - 1; k >= 1; --k) {
    const double ka = std::pow(static_cast<double>(k), alpha);
    acc += -std::expm1(-x0 * ka) / ka;
  }
  acc += special::zeta_tail(alpha, K, cfg);
  return acc.value();
}

/// int_a^b f(t) dt by adaptive Gauss-Kronrod in the variable u = ln t.
inline double quad_direct(double a, double b, double alpha, double tol) {
  auto integrand = [alpha, tol](double u) {
    const double t = std::exp(u);
    return f_direct(t, alpha, tol * 1e-2).value.real() * t;
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, std::log(a), std::log(b), 20,
                                                                       1e-13, &err);
}

}  // namespace detail

/// Left end of the numerical quadrature; (0, x0] is integrated term by term.
inline constexpr double kQuadratureSplit = 1e-3;

/// int_0^x f(t, alpha) dt: term-wise on (0, x0], quadrature of f_direct on [x0, x].
inline double integral_of_series(double x, double alpha, const special::ZetaConfig& cfg = {}) {
  detail::require(alpha > 1.0 + cfg.delta, "integral_of_series: alpha must exceed 1 + delta");
  detail::require(x >= 0.0, "integral_of_series: x must be non-negative");
  if (x == 0.0) return 0.0;
  if (x <= kQuadratureSplit) return detail::head_integral(x, alpha, cfg);
  return detail::head_integral(kQuadratureSplit, alpha, cfg) + detail::quad_direct(kQuadratureSplit, x, alpha, 1e-13);
}

/// int_0^inf f(t, alpha) dt. Beyond t = 40 the integrand is below e^{-40}.
inline double integral_of_series_to_infinity(double alpha, const special::ZetaConfig& cfg = {}) {
  return integral_of_series(40.0, alpha, cfg);
}

/// |int_0^x f dt - (zeta(alpha) - sum_k exp(-x k^alpha) / k^alpha)|.
inline double integral_identity_residual(double x, double alpha, const special::ZetaConfig& cfg = {}) {
  detail::require(alpha > 1.0 + cfg.delta, "integral_identity_residual: alpha must exceed 1 + delta");
  detail::require(x >= 0.0, "integral_identity_residual: x must be non-negative");
  if (x == 0.0) return 0.0;
  const double q = integral_of_series(x, alpha, cfg);
  const double rhs = special::zeta(alpha, cfg) - detail::weighted_sum(x, alpha, 1e-16);
  return std::abs(q - rhs);
}

/// One point of a complex-plane grid; a point outside Re z > 0 is a hole.
struct GridPoint {
  cplx z;
  std::optional<cplx> value;
};

struct ComplexGrid {
  std::size_t steps = 0;
  std::vector<GridPoint> points;  ///< row-major: real part outer, imaginary part inner
};

struct GridSpec {
  double re0 = 0.1, re1 = 2.0, im0 = -2.0, im1 = 2.0;
  std::size_t steps = 41;  ///< points per axis
};

/// f_direct over a rectangular grid. Points with Re z <= 0 or failed convergence
/// are recorded as holes.
inline ComplexGrid f_complex_grid(const GridSpec& g, double alpha, double tol = 1e-13) {
  detail::require(g.steps >= 1, "f_complex_grid: steps must be >= 1");
  detail::require(alpha > 0.0, "f_complex_grid: alpha must be positive");
  auto coord = [&](double lo, double hi, std::size_t i) {
    return g.steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g.steps - 1);
  };
  ComplexGrid out;
  out.steps = g.steps;
  out.points.reserve(g.steps * g.steps);
  for (std::size_t i = 0; i < g.steps; ++i) {
    for (std::size_t j = 0; j < g.steps; ++j) {
      const cplx z(coord(g.re0, g.re1, i), coord(g.im0, g.im1, j));
      GridPoint p{z, std::nullopt};
      if (z.real() > 0.0) {
        try {
          p.value = f_direct(SeriesQuery{z, alpha, tol}).value;
        } catch (const std::exception&) {
          p.value.reset();
        }
      }
      out.points.push_back(p);
    }
  }
  return out;
}

}  // namespace expser
