#pragma once

// Cauchy-Euler operator calculus on truncated power series.
//
// A TruncatedSeries stores plain power coefficients a_0..a_N of sum a_n x^n.
// In that basis every function of x d/dx is diagonal: (x d/dx)^m x^n = n^m x^n,
// so exp(beta x d/dx) scales a_n by e^{beta n}, i.e. A(x) -> A(x e^beta).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "expser/errors.hpp"
#include "expser/polycore.hpp"
#include "expser/special.hpp"

namespace expser::ce {

inline constexpr std::size_t kDefaultMaxOrder = 4096;

namespace detail {

template <typename T>
bool is_zero(const T& v) {
  return v == T(0);
}

template <typename T>
double magnitude(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(static_cast<double>(v));
  } else {
    using std::abs;
    return static_cast<double>(abs(v));
  }
}

}  // namespace detail

/// Coefficients a_0..a_N of a power series around 0.
///
/// max_order caps growth under mul_x; when a nonzero coefficient is dropped the
/// truncated() flag is raised and carried through every later operation.
template <typename T>
class TruncatedSeries {
 public:
  using value_type = T;

  explicit TruncatedSeries(std::vector<T> coeffs, std::size_t max_order = kDefaultMaxOrder,
                           bool truncated = false)
      : a_(std::move(coeffs)), max_order_(max_order), truncated_(truncated) {
    expser::detail::require(!a_.empty(), "TruncatedSeries: needs at least one coefficient");
    expser::detail::require(a_.size() <= max_order_ + 1, "TruncatedSeries: order exceeds max_order");
  }

  /// Single monomial c x^n.
  static TruncatedSeries monomial(std::size_t n, T c = T(1), std::size_t max_order = kDefaultMaxOrder) {
    std::vector<T> a(n + 1, T(0));
    a[n] = c;
    return TruncatedSeries(std::move(a), max_order);
  }

  [[nodiscard]] std::size_t order() const { return a_.size() - 1; }
  [[nodiscard]] std::size_t max_order() const { return max_order_; }
  [[nodiscard]] bool truncated() const { return truncated_; }
  [[nodiscard]] const std::vector<T>& coeffs() const { return a_; }
  [[nodiscard]] const T& operator[](std::size_t n) const { return a_[n]; }

  /// Same order and flags with coefficients mapped by f(n, a_n).
  template <typename F>
  [[nodiscard]] auto map(F&& f) const {
    using R = std::decay_t<decltype(f(std::size_t{0}, a_[0]))>;
    std::vector<R> out(a_.size());
    for (std::size_t n = 0; n < a_.size(); ++n) out[n] = f(n, a_[n]);
    return TruncatedSeries<R>(std::move(out), max_order_, truncated_);
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<T> a_;
  std::size_t max_order_;
  bool truncated_;
};

/// Coefficients phi_1..phi_N of sum_j phi_j x^{-j}; there is no x^0 term.
template <typename T>
class LaurentNegSeries {
 public:
  LaurentNegSeries() = default;
  /// coeffs[0] is phi_1.
  explicit LaurentNegSeries(std::vector<T> coeffs) : phi_(std::move(coeffs)) {}

  static LaurentNegSeries power(std::size_t j, T c = T(1)) {
    expser::detail::require(j >= 1, "LaurentNegSeries: powers start at x^-1");
    std::vector<T> phi(j, T(0));
    phi[j - 1] = c;
    return LaurentNegSeries(std::move(phi));
  }

  [[nodiscard]] std::size_t size() const { return phi_.size(); }
  /// phi_j for j >= 1.
  [[nodiscard]] const T& at(std::size_t j) const { return phi_.at(j - 1); }
  [[nodiscard]] const std::vector<T>& coeffs() const { return phi_; }

  friend bool operator==(const LaurentNegSeries&, const LaurentNegSeries&) = default;

 private:
  std::vector<T> phi_;
};

/// (x d/dx)^m: a_n -> n^m a_n, with 0^0 = 1.
template <typename T>
TruncatedSeries<T> ce_pow_apply(std::size_t m, const TruncatedSeries<T>& s) {
  return s.map([m](std::size_t n, const T& a) {
    T scale(1);
    for (std::size_t i = 0; i < m; ++i) scale *= T(n);
    return T(a * scale);
  });
}

/// exp(beta x d/dx): a_n -> e^{beta n} a_n, the series of A(x e^beta).
template <typename T, typename B>
auto ce_exp_apply(B beta, const TruncatedSeries<T>& s) {
  return s.map([beta](std::size_t n, const T& a) {
    using std::exp;
    return a * exp(beta * static_cast<double>(n));
  });
}

enum class TrigKind { cos, sin };

/// cos(beta x d/dx) or sin(beta x d/dx): a_n -> cos(beta n) a_n or sin(beta n) a_n.
template <typename T>
TruncatedSeries<T> ce_trig_apply(TrigKind kind, double beta, const TruncatedSeries<T>& s) {
  return s.map([kind, beta](std::size_t n, const T& a) {
    const double arg = beta * static_cast<double>(n);
    return T(a * (kind == TrigKind::cos ? std::cos(arg) : std::sin(arg)));
  });
}

/// B(exp(beta x d/dx)) for a finite B(u) = sum_{n<=L} b_n u^n:
/// a_j -> a_j sum_n b_n e^{n beta j}, i.e. sum_n b_n A(x e^{n beta}).
///
/// Only finite b is accepted. An infinite operator function has to be truncated
/// by the caller; no convergence test is made here.
template <typename T, typename B>
auto ce_opfunc_apply(std::span<const B> b, B beta, const TruncatedSeries<T>& s) {
  return s.map([b, beta](std::size_t j, const T& a) {
    using std::exp;
    using R = decltype(a * exp(beta));
    R factor(0);
    for (std::size_t n = 0; n < b.size(); ++n) factor += b[n] * exp(beta * static_cast<double>(n * j));
    return R(a * factor);
  });
}

template <typename T, typename B>
auto ce_opfunc_apply(const std::vector<B>& b, B beta, const TruncatedSeries<T>& s) {
  return ce_opfunc_apply(std::span<const B>(b), beta, s);
}

/// (beta int dx/x)^m: a_n -> beta^m a_n / n^m with integration constants 0.
/// A constant term would integrate to a logarithm and is rejected.
template <typename T, typename B>
auto ce_int_apply(std::size_t m, B beta, const TruncatedSeries<T>& s) {
  if (m > 0) {
    expser::detail::require(detail::is_zero(s[0]), "ce_int_apply: constant term integrates to a logarithm");
  }
  return s.map([m, beta](std::size_t n, const T& a) {
    using R = decltype(a * beta);
    if (m == 0) return R(a);
    if (n == 0) return R(0);
    R v = a;
    for (std::size_t i = 0; i < m; ++i) v = v * beta / static_cast<double>(n);
    return v;
  });
}

/// Term-wise derivative; the order drops by one (a constant stays a zero constant).
template <typename T>
TruncatedSeries<T> derivative(const TruncatedSeries<T>& s) {
  if (s.order() == 0) return TruncatedSeries<T>({T(0)}, s.max_order(), s.truncated());
  std::vector<T> d(s.order());
  for (std::size_t n = 1; n <= s.order(); ++n) d[n - 1] = s[n] * T(n);
  return TruncatedSeries<T>(std::move(d), s.max_order(), s.truncated());
}

/// Multiplication by x. At the order cap the top coefficient is dropped and,
/// if it was nonzero, the truncation flag is raised.
template <typename T>
TruncatedSeries<T> mul_x(const TruncatedSeries<T>& s) {
  std::vector<T> d(s.order() + 2, T(0));
  std::copy(s.coeffs().begin(), s.coeffs().end(), d.begin() + 1);
  bool truncated = s.truncated();
  if (d.size() > s.max_order() + 1) {
    truncated = truncated || !detail::is_zero(d.back());
    d.pop_back();
  }
  return TruncatedSeries<T>(std::move(d), s.max_order(), truncated);
}

/// Zeta operator zeta(-alpha x d/dx) on negative powers: phi_j -> phi_j zeta(alpha j).
/// Every j with phi_j != 0 must satisfy alpha j > 1 + delta.
template <typename T>
LaurentNegSeries<T> zeta_op_apply(double alpha, const LaurentNegSeries<T>& phi,
                                  const special::ZetaConfig& cfg = {}) {
  std::vector<T> out(phi.size(), T(0));
  for (std::size_t j = 1; j <= phi.size(); ++j) {
    if (detail::is_zero(phi.at(j))) continue;
    const double s = alpha * static_cast<double>(j);
    if (!(s > 1.0 + cfg.delta)) {
      throw DomainError("zeta_op_apply: alpha*j = " + std::to_string(s) + " at j = " + std::to_string(j) +
                        " is outside the convergence domain");
    }
    out[j - 1] = phi.at(j) * special::zeta(s, cfg);
  }
  return LaurentNegSeries<T>(std::move(out));
}

/// max_n |a_n - b_n| / max(|a_n|, |b_n|) over the common range; pairs that are
/// both zero count as equal.
template <typename T, typename U>
double max_relative_difference(const TruncatedSeries<T>& a, const TruncatedSeries<U>& b) {
  const std::size_t n = std::min(a.order(), b.order()) + 1;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::max(detail::magnitude(a[i]), detail::magnitude(b[i]));
    if (scale == 0.0) continue;
    worst = std::max(worst, detail::magnitude(a[i] - b[i]) / scale);
  }
  return worst;
}

/// Series of e^{-x} S_m(x) to order N, computed exactly in rationals and
/// rounded once per coefficient.
inline TruncatedSeries<double> exp_poly_series(const PolyS& p, std::size_t order) {
  using boost::multiprecision::cpp_rational;
  std::vector<cpp_rational> e(order + 1);
  e[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) e[n] = -e[n - 1] / static_cast<long long>(n);
  std::vector<double> out(order + 1, 0.0);
  for (std::size_t n = 0; n <= order; ++n) {
    cpp_rational acc = 0;
    for (std::size_t k = 0; k <= std::min(n, p.m); ++k) acc += cpp_rational(p.coeffs[k]) * e[n - k];
    out[n] = acc.convert_to<double>();
  }
  return TruncatedSeries<double>(std::move(out));
}

/// Series of e^{-c x} S_m(c x), c = e^{-beta}, to order N: the Cauchy product of
/// the two factors' own series, formed in 50-digit arithmetic.
inline TruncatedSeries<double> scaled_exp_poly_series(const PolyS& p, std::size_t order, double beta) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  const Wide c = exp(Wide(-beta));
  std::vector<Wide> e(order + 1), poly(order + 1, Wide(0));
  e[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) e[n] = -e[n - 1] * c / static_cast<long long>(n);
  Wide cpow = 1;
  for (std::size_t k = 0; k <= std::min(order, p.m); ++k) {
    poly[k] = Wide(p.coeffs[k]) * cpow;
    cpow *= c;
  }
  std::vector<double> out(order + 1, 0.0);
  for (std::size_t n = 0; n <= order; ++n) {
    Wide acc = 0;
    for (std::size_t k = 0; k <= n; ++k) acc += poly[k] * e[n - k];
    out[n] = acc.convert_to<double>();
  }
  return TruncatedSeries<double>(std::move(out));
}

}  // namespace expser::ce
