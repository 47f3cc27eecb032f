#pragma once

// Exact construction of the polynomials S_m(x) = e^x (x d/dx)^m e^{-x} and of
// the Stirling numbers of the second kind that make up their coefficients.
//
// Coefficients are arbitrary precision integers stored in ascending powers, so
// coeffs[k] multiplies x^k and coeffs[k] == (-1)^k * S2(m, k) for 1 <= k <= m.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "expser/errors.hpp"

namespace expser {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer polynomial in ascending powers. Trailing zeros are trimmed
/// so that equality is structural; the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly constant(BigInt v) { return IntPoly(std::vector<BigInt>{std::move(v)}); }
  static IntPoly monomial(std::size_t power, BigInt v = 1) {
    std::vector<BigInt> c(power + 1);
    c[power] = std::move(v);
    return IntPoly(std::move(c));
  }

  [[nodiscard]] const std::vector<BigInt>& coeffs() const { return c_; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree of the polynomial; the zero polynomial reports 0.
  [[nodiscard]] std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  [[nodiscard]] BigInt at(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }

  [[nodiscard]] IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * k;
    return IntPoly(std::move(d));
  }

  [[nodiscard]] IntPoly mul_x() const {
    if (c_.empty()) return {};
    std::vector<BigInt> d(c_.size() + 1);
    std::copy(c_.begin(), c_.end(), d.begin() + 1);
    return IntPoly(std::move(d));
  }

  /// Exact division by x. Throws DomainError when the constant term is nonzero.
  [[nodiscard]] IntPoly div_x() const {
    if (c_.empty()) return {};
    detail::require(c_[0] == 0, "IntPoly::div_x: constant term is nonzero");
    return IntPoly(std::vector<BigInt>(c_.begin() + 1, c_.end()));
  }

  IntPoly& operator+=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  IntPoly& operator*=(const BigInt& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const BigInt& s) { return a *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly a) { return a *= s; }
  friend IntPoly operator-(IntPoly a) { return a *= BigInt(-1); }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(d));
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// One polynomial S_m(x) with its index. Value type; immutable after construction.
struct PolyS {
  std::size_t m = 0;
  std::vector<BigInt> coeffs{BigInt(1)};

  [[nodiscard]] IntPoly poly() const { return IntPoly(coeffs); }
  static PolyS from_poly(std::size_t m, const IntPoly& p) {
    std::vector<BigInt> c = p.coeffs();
    c.resize(m + 1);
    return PolyS{m, std::move(c)};
  }

  friend bool operator==(const PolyS&, const PolyS&) = default;
};

namespace detail {

inline std::size_t checked_index(std::int64_t v, const char* what) {
  require(v >= 0, std::string(what) + ": negative index");
  return static_cast<std::size_t>(v);
}

inline BigInt factorial(std::size_t n) {
  BigInt r = 1;
  for (std::size_t k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline std::vector<BigInt> binomial_row(std::size_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

/// (1/p!) * sum_{i=0}^{p} (-1)^i C(p,i) i^m, the coefficient of x^p in S_m
/// written as a finite difference. 0^0 is taken as 1.
inline BigInt explicit_coefficient(std::size_t m, std::size_t p) {
  BigInt acc = 0;
  const auto binom = binomial_row(p);
  for (std::size_t i = 0; i <= p; ++i) {
    BigInt term = binom[i] * boost::multiprecision::pow(BigInt(i), static_cast<unsigned>(m));
    if (i % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  const BigInt fact = factorial(p);
  BigInt q, r;
  boost::multiprecision::divide_qr(acc, fact, q, r);
  require(r == 0, "explicit_coefficient: non-integral result");
  return q;
}

}  // namespace detail

/// Triangle of Stirling numbers of the second kind S2(n, m), 0 <= m <= n <= max_n,
/// filled by S2(n+1, m) = m S2(n, m) + S2(n, m-1).
class StirlingTable {
 public:
  explicit StirlingTable(std::size_t max_n) : max_n_(max_n), rows_(max_n + 1) {
    rows_[0] = {BigInt(1)};
    for (std::size_t n = 1; n <= max_n; ++n) {
      auto& row = rows_[n];
      const auto& prev = rows_[n - 1];
      row.assign(n + 1, BigInt(0));
      for (std::size_t m = 1; m <= n; ++m) {
        BigInt v = prev[m - 1];
        if (m < n) v += BigInt(m) * prev[m];
        row[m] = std::move(v);
      }
    }
  }

  [[nodiscard]] std::size_t max_n() const { return max_n_; }

  [[nodiscard]] const BigInt& operator()(std::size_t n, std::size_t m) const {
    detail::require(n <= max_n_, "StirlingTable: n exceeds table size");
    detail::require(m <= n, "StirlingTable: m > n");
    return rows_[n][m];
  }

 private:
  std::size_t max_n_;
  std::vector<std::vector<BigInt>> rows_;
};

/// Stirling number of the second kind S2(n, m).
inline BigInt stirling2(std::int64_t n, std::int64_t m) {
  const auto nn = detail::checked_index(n, "stirling2");
  const auto mm = detail::checked_index(m, "stirling2");
  detail::require(mm <= nn, "stirling2: m > n");
  if (nn == 0) return 1;
  if (mm == 0) return 0;
  // Single row of the recurrence, kept in place.
  std::vector<BigInt> row(mm + 1, BigInt(0));
  row[0] = 1;
  for (std::size_t r = 1; r <= nn; ++r) {
    const std::size_t top = std::min(r, mm);
    for (std::size_t k = top; k >= 1; --k) row[k] = BigInt(k) * row[k] + row[k - 1];
    row[0] = 0;
  }
  return row[mm];
}

/// Rows S_0..S_M generated by the binomial recurrence
///   S_{j+1}(x) = -x * sum_{n=0}^{j} C(j, n) S_{j-n}(x).
inline std::vector<PolyS> triangle(std::size_t max_m) {
  std::vector<PolyS> rows;
  rows.reserve(max_m + 1);
  rows.push_back(PolyS{0, {BigInt(1)}});
  for (std::size_t j = 0; j < max_m; ++j) {
    const auto binom = detail::binomial_row(j);
    std::vector<BigInt> next(j + 2, BigInt(0));
    for (std::size_t n = 0; n <= j; ++n) {
      const auto& src = rows[j - n].coeffs;
      for (std::size_t k = 0; k < src.size(); ++k) {
        if (src[k] != 0) next[k + 1] -= binom[n] * src[k];
      }
    }
    rows.push_back(PolyS{j + 1, std::move(next)});
  }
  return rows;
}

/// S_m from the closed finite-difference form of its coefficients.
inline PolyS poly_explicit(std::size_t m) {
  if (m == 0) return PolyS{};
  std::vector<BigInt> c(m + 1, BigInt(0));
  for (std::size_t p = 1; p <= m; ++p) c[p] = detail::explicit_coefficient(m, p);
  return PolyS{m, std::move(c)};
}

/// S_m with coeffs[k] = (-1)^k S2(m, k) read from a Stirling table.
inline PolyS poly_from_stirling(std::size_t m, const StirlingTable& table) {
  detail::require(table.max_n() >= m, "poly_from_stirling: table too small");
  if (m == 0) return PolyS{};
  std::vector<BigInt> c(m + 1, BigInt(0));
  for (std::size_t k = 1; k <= m; ++k) c[k] = (k % 2 == 1) ? BigInt(-table(m, k)) : table(m, k);
  return PolyS{m, std::move(c)};
}

/// S_m via the row recurrence c_j^m = (m-j+1) c_{j-1}^{m-1} - c_j^{m-1}
/// with c_m^m = -1 and c_1^m = (-1)^m, where c_j^m multiplies x^{m-j+1}.
inline PolyS poly_from_c_recursion(std::size_t m) {
  detail::require(m >= 1, "poly_from_c_recursion: m must be >= 1");
  // c[j] for j = 1..row, index 0 and row+1 act as the zero boundary.
  std::vector<BigInt> c{BigInt(0), BigInt(-1), BigInt(0)};
  for (std::size_t row = 2; row <= m; ++row) {
    std::vector<BigInt> next(row + 2, BigInt(0));
    for (std::size_t j = 1; j <= row; ++j) {
      if (j == row) {
        next[j] = -1;
      } else if (j == 1) {
        next[j] = (row % 2 == 0) ? 1 : -1;
      } else {
        next[j] = c[j - 1] * (row - j + 1) - c[j];
      }
    }
    c = std::move(next);
  }
  std::vector<BigInt> coeffs(m + 1, BigInt(0));
  for (std::size_t j = 1; j <= m; ++j) coeffs[m - j + 1] = c[j];
  return PolyS{m, std::move(coeffs)};
}

/// S_{m+1}(x) = x (S_m'(x) - S_m(x)).
inline PolyS poly_next(const PolyS& p) {
  const IntPoly s = p.poly();
  return PolyS::from_poly(p.m + 1, (s.derivative() - s).mul_x());
}

/// Horner evaluation from the highest power; coefficients are rounded to the
/// scalar type first.
template <typename Scalar>
Scalar poly_eval(const PolyS& p, Scalar x) {
  Scalar acc{0};
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = acc * x + Scalar(it->template convert_to<double>());
  }
  return acc;
}

/// Coefficient of x^{m-n+1} in S_m (the n-th right-slanted diagonal).
inline BigInt diagonal_L(std::int64_t n, std::int64_t m) {
  const auto mm = detail::checked_index(m, "diagonal_L");
  detail::require(n >= 1 && static_cast<std::size_t>(n) <= mm + 1, "diagonal_L: n outside [1, m+1]");
  const std::size_t p = mm - static_cast<std::size_t>(n) + 1;
  if (p == 0) return mm == 0 ? 1 : 0;
  return detail::explicit_coefficient(mm, p);
}

/// Coefficient of x^{n+1} in S_m (the n-th left-slanted diagonal).
inline BigInt diagonal_K(std::int64_t n, std::int64_t m) {
  const auto mm = detail::checked_index(m, "diagonal_K");
  detail::require(n >= 0 && static_cast<std::size_t>(n) + 1 <= mm, "diagonal_K: n outside [0, m-1]");
  return detail::explicit_coefficient(mm, static_cast<std::size_t>(n) + 1);
}

/// Integral of e^{-x} S_m(x) over (0, inf), computed from the moments
/// int x^k e^{-x} dx = k!.
inline BigInt exact_weighted_integral(std::size_t m) {
  const PolyS p = poly_explicit(m);
  BigInt acc = 0;
  BigInt fact = 1;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    if (k > 0) fact *= k;
    acc += p.coeffs[k] * fact;
  }
  return acc;
}

/// Field invariants of a PolyS: degree, vanishing constant term, the first two
/// left diagonals, leading sign and alternating signs.
inline bool satisfies_invariants(const PolyS& p) {
  const auto& c = p.coeffs;
  if (c.size() != p.m + 1) return false;
  if (p.m == 0) return c[0] == 1;
  if (c[0] != 0 || c[1] != -1) return false;
  if (c[p.m] != ((p.m % 2 == 0) ? 1 : -1)) return false;
  if (p.m >= 2) {
    const BigInt k1 = (BigInt(1) << (p.m - 1)) - 1;
    if (c[2] != k1) return false;
  }
  for (std::size_t k = 1; k <= p.m; ++k) {
    const int expected = (k % 2 == 0) ? 1 : -1;
    if (c[k].sign() != expected) return false;
  }
  return true;
}

/// Outcome of one exact identity check.
struct IdentityCheck {
  std::string name;
  std::size_t m = 0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  [[nodiscard]] bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  [[nodiscard]] std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
  }
};

/// Certifies the recurrences and antiderivative identities of S_m as exact
/// integer polynomial identities for every index up to max_m. Every identity
/// carrying an e^{-x} factor is checked after cancelling it: for a candidate
/// antiderivative e^{-x} P(x), d/dx[e^{-x} P] = e^{-x} (P' - P).
inline IdentityReport verify_polynomial_identities(std::size_t max_m) {
  const auto rows = triangle(max_m + 2);
  std::vector<IntPoly> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.poly());
  const IntPoly one = IntPoly::constant(1);
  const IntPoly x = IntPoly::monomial(1);

  IdentityReport report;
  auto record = [&](std::string name, std::size_t m, bool ok) {
    report.checks.push_back({std::move(name), m, ok});
  };
  // (x d/dx) applied to e^{-x} P, with the e^{-x} factor removed.
  auto euler = [](const IntPoly& p) { return (p.derivative() - p).mul_x(); };

  for (std::size_t m = 0; m <= max_m; ++m) {
    const IntPoly& sm = s[m];

    record("recurrence_derivative", m, s[m + 1] == (sm.derivative() - sm).mul_x());

    IntPoly binom_sum;
    const auto binom = detail::binomial_row(m);
    for (std::size_t n = 0; n <= m; ++n) binom_sum += s[m - n] * binom[n];
    record("recurrence_binomial_derivative", m, binom_sum == sm - sm.derivative());
    record("recurrence_binomial", m, -binom_sum.mul_x() == s[m + 1]);

    if (m >= 1) {
      IntPoly lhs;
      for (std::size_t j = 0; j < m; ++j) {
        const IntPoly pair = s[j] + s[j + 1];
        lhs += (j % 2 == 0) ? -pair : pair;
      }
      const IntPoly rhs = (m % 2 == 0) ? sm - one : -sm - one;
      record("telescoping_sum", m, lhs == rhs);
    }

    {
      // int e^{-x} S_m dx = (-1)^m [x e^{-x} sum_{j<m} (-1)^{j+1} S_j - e^{-x}]
      IntPoly inner;
      for (std::size_t j = 0; j < m; ++j) inner += (j % 2 == 0) ? -s[j] : s[j];
      IntPoly anti = inner.mul_x() - one;
      if (m % 2 == 1) anti = -anti;
      record("antiderivative_alternating", m, anti.derivative() - anti == sm);
    }

    {
      // int e^{-x} S_{m+1} dx = x e^{-x} S_m - int e^{-x} S_m dx, differentiated.
      const IntPoly xs = sm.mul_x();
      record("antiderivative_step", m, xs.derivative() - xs - sm == s[m + 1]);
    }

    // int e^{-x} S_{m+1}(x) / x dx = e^{-x} S_m(x)
    record("antiderivative_over_x", m, sm.derivative() - sm == s[m + 1].div_x());

    // x^2 (S_m'' - S_m') = (x - 1) S_{m+1} + S_{m+2}
    {
      const IntPoly d1 = sm.derivative();
      const IntPoly lhs = (d1.derivative() - d1).mul_x().mul_x();
      const IntPoly rhs = (x - one) * s[m + 1] + s[m + 2];
      record("euler_of_derivative", m, lhs == rhs);
    }

    // (x d/dx)^j (e^{-x} S_m) = e^{-x} S_{m+j} for m + j <= max_m
    {
      IntPoly p = sm;
      bool ok = true;
      for (std::size_t j = 1; m + j <= max_m; ++j) {
        p = euler(p);
        ok = ok && (p == s[m + j]);
      }
      record("euler_power", m, ok);
    }
  }
  return report;
}

/// Shared numeric view of the triangle: exact rows plus double-precision
/// coefficients of S_m(x) / m!, which stay representable far beyond the point
/// where the raw coefficients overflow a double.
class PolyTable {
 public:
  enum class Source { binomial_recurrence, stirling };

  explicit PolyTable(std::size_t depth, Source source = Source::binomial_recurrence) {
    if (source == Source::binomial_recurrence) {
      rows_ = triangle(depth);
    } else {
      const StirlingTable st(depth);
      rows_.reserve(depth + 1);
      for (std::size_t m = 0; m <= depth; ++m) rows_.push_back(poly_from_stirling(m, st));
    }
    using Wide = boost::multiprecision::cpp_bin_float_50;
    normalized_.resize(rows_.size());
    raw_.resize(rows_.size());
    Wide fact = 1;
    for (std::size_t m = 0; m < rows_.size(); ++m) {
      if (m > 0) fact *= m;
      const auto& c = rows_[m].coeffs;
      normalized_[m].resize(c.size());
      raw_[m].resize(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        normalized_[m][k] = (Wide(c[k]) / fact).convert_to<double>();
        raw_[m][k] = c[k].convert_to<double>();
      }
    }
  }

  [[nodiscard]] std::size_t depth() const { return rows_.size() - 1; }
  [[nodiscard]] const PolyS& row(std::size_t m) const {
    detail::require(m < rows_.size(), "PolyTable: index beyond depth");
    return rows_[m];
  }
  [[nodiscard]] const std::vector<PolyS>& rows() const { return rows_; }

  /// S_m(x) by Horner from the highest power.
  template <typename Scalar>
  [[nodiscard]] Scalar eval(std::size_t m, Scalar x) const {
    return horner(raw_.at(m), x);
  }

  /// S_m(x) / m!.
  template <typename Scalar>
  [[nodiscard]] Scalar eval_normalized(std::size_t m, Scalar x) const {
    return horner(normalized_.at(m), x);
  }

  /// S_m(x) / (x m!), exact since S_m has no constant term for m >= 1.
  template <typename Scalar>
  [[nodiscard]] Scalar eval_normalized_over_x(std::size_t m, Scalar x) const {
    const auto& c = normalized_.at(m);
    detail::require(m >= 1, "PolyTable: S_0 / x is not a polynomial");
    Scalar acc{0};
    for (std::size_t k = c.size() - 1; k >= 1; --k) acc = acc * x + Scalar(c[k]);
    return acc;
  }

  /// d^order/dx^order S_m(x) / m!.
  template <typename Scalar>
  [[nodiscard]] Scalar eval_normalized_derivative(std::size_t m, Scalar x, std::size_t order = 1) const {
    const auto& c = normalized_.at(m);
    Scalar acc{0};
    for (std::size_t k = c.size(); k-- > order;) {
      double falling = 1.0;
      for (std::size_t i = 0; i < order; ++i) falling *= static_cast<double>(k - i);
      acc = acc * x + Scalar(c[k] * falling);
    }
    return acc;
  }

  /// sum_k |c_k| r^k / m!, an upper bound for |S_m(x)| / m! on |x| <= r.
  [[nodiscard]] double envelope_normalized(std::size_t m, double r) const {
    const auto& c = normalized_.at(m);
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

 private:
  template <typename Scalar>
  static Scalar horner(const std::vector<double>& c, Scalar x) {
    Scalar acc{0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Scalar(*it);
    return acc;
  }

  std::vector<PolyS> rows_;
  std::vector<std::vector<double>> normalized_;
  std::vector<std::vector<double>> raw_;
};

/// Process-wide table used by the numeric evaluators. Built once on first use
/// (thread-safe static initialisation) and immutable afterwards.
inline constexpr std::size_t kSharedTableDepth = 320;

inline const PolyTable& shared_table() {
  static const PolyTable table(kSharedTableDepth, PolyTable::Source::stirling);
  return table;
}

}  // namespace expser
