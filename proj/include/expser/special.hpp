#pragma once

// Real-argument Riemann zeta function and its second derivative for s > 1,
// by direct summation to a cutoff K plus an Euler-Maclaurin tail.

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "expser/compensated.hpp"
#include "expser/errors.hpp"

namespace expser::special {

/// Evaluation policy. Defaults reach ~1e-15 relative accuracy for s >= 1.05.
struct ZetaConfig {
  std::size_t cutoff = 20000;  ///< K, number of directly summed terms
  double delta = 0.05;          ///< domain guard, s must exceed 1 + delta
  double target_rel_err = 1e-12;

  [[nodiscard]] bool valid() const { return cutoff >= 2 && delta > 0.0 && target_rel_err > 0.0; }
};

namespace detail {

inline void check_argument(double s, const ZetaConfig& cfg, const char* who) {
  expser::detail::require(cfg.valid(), std::string(who) + ": invalid ZetaConfig");
  if (!(s > 1.0 + cfg.delta)) {
    std::ostringstream os;
    os << who << ": argument " << s << " not above 1 + delta = " << 1.0 + cfg.delta;
    throw DomainError(os.str());
  }
}

/// Derivatives of g(u) = (ln u)^p u^{-s}, kept as a polynomial in L = ln u:
/// g^{(n)}(u) = u^{-s-n} * sum_q c[q] L^q.
struct LogPowerDerivative {
  std::array<double, 3> c{};  // p <= 2

  [[nodiscard]] double at(double u, double s, std::size_t n) const {
    const double L = std::log(u);
    return std::pow(u, -s - static_cast<double>(n)) * (c[0] + L * (c[1] + L * c[2]));
  }

  [[nodiscard]] LogPowerDerivative next(double s, std::size_t n) const {
    // d/du [L^q u^{-a}] = u^{-a-1} (q L^{q-1} - a L^q), a = s + n
    const double a = s + static_cast<double>(n);
    LogPowerDerivative d;
    for (std::size_t q = 0; q < c.size(); ++q) {
      d.c[q] -= a * c[q];
      if (q > 0) d.c[q - 1] += static_cast<double>(q) * c[q];
    }
    return d;
  }
};

// B_2/2!, B_4/4!, B_6/6!
inline constexpr std::array<double, 3> kBernoulliOverFactorial{1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};

/// sum_{k>=K} (ln k)^p k^{-s} via Euler-Maclaurin:
///   int_K^inf g + g(K)/2 - sum_j B_{2j}/(2j)! g^{(2j-1)}(K).
inline double tail(double s, std::size_t K, int p) {
  const double k = static_cast<double>(K);
  const double sm1 = s - 1.0;
  const double L = std::log(k);
  const double kpow = std::pow(k, 1.0 - s);
  double integral = 0.0;
  switch (p) {
    case 0:
      integral = kpow / sm1;
      break;
    case 1:
      integral = kpow * (L / sm1 + 1.0 / (sm1 * sm1));
      break;
    default:
      integral = kpow * (L * L / sm1 + 2.0 * L / (sm1 * sm1) + 2.0 / (sm1 * sm1 * sm1));
      break;
  }
  LogPowerDerivative g;
  g.c[static_cast<std::size_t>(p)] = 1.0;
  double result = integral + 0.5 * g.at(k, s, 0);
  LogPowerDerivative d = g.next(s, 0);  // g'
  std::size_t order = 1;
  for (double coef : kBernoulliOverFactorial) {
    result -= coef * d.at(k, s, order);
    d = d.next(s, order).next(s, order + 1);
    order += 2;
  }
  return result;
}

inline double log_power_sum(double s, int p, const ZetaConfig& cfg) {
  NeumaierSum<double> acc;
  // Smallest terms first.
  for (std::size_t k = cfg.cutoff - 1; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const double L = std::log(kd);
    double lp = 1.0;
    for (int i = 0; i < p; ++i) lp *= L;
    acc += lp * std::pow(kd, -s);
  }
  acc += tail(s, cfg.cutoff, p);
  return acc.value();
}

}  // namespace detail

/// Riemann zeta function for real s > 1 + delta.
inline double zeta(double s, const ZetaConfig& cfg = {}) {
  detail::check_argument(s, cfg, "zeta");
  return detail::log_power_sum(s, 0, cfg);
}

/// First derivative, -sum (ln k) k^{-s}.
inline double zeta_d1(double s, const ZetaConfig& cfg = {}) {
  detail::check_argument(s, cfg, "zeta_d1");
  return -detail::log_power_sum(s, 1, cfg);
}

/// Second derivative, sum (ln k)^2 k^{-s}.
inline double zeta_d2(double s, const ZetaConfig& cfg = {}) {
  detail::check_argument(s, cfg, "zeta_d2");
  return detail::log_power_sum(s, 2, cfg);
}

/// sum_{k >= K} k^{-s}, the Hurwitz tail zeta(s, K), for callers that sum the
/// head of a zeta-like series themselves.
inline double zeta_tail(double s, std::size_t K, const ZetaConfig& cfg = {}) {
  detail::check_argument(s, cfg, "zeta_tail");
  expser::detail::require(K >= 2, "zeta_tail: K must be >= 2");
  return detail::tail(s, K, 0);
}

}  // namespace expser::special
