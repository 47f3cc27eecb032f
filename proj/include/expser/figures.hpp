#pragma once

// Tabular datasets behind the plots: each figure is a list of named columns and
// rows of doubles in a fixed order, formatted deterministically.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expser/errors.hpp"
#include "expser/funcseries.hpp"
#include "expser/polycore.hpp"
#include "expser/serieseval.hpp"

namespace expser::fig {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Range {
  double lo = 0.0, hi = 1.0, step = 0.1;

  /// lo, lo + step, ... up to hi inclusive (within a small fraction of a step).
  [[nodiscard]] std::vector<double> values() const {
    detail::require(step > 0.0 && hi >= lo, "range needs step > 0 and hi >= lo");
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
    return v;
  }
};

struct FigureParams {
  std::vector<double> alphas;  ///< empty: figure default
  std::optional<Range> xrange;
  std::optional<std::size_t> terms;
  std::optional<std::size_t> rows;  ///< highest polynomial index for poly figures
  GridSpec grid{0.1, 2.0, -2.0, 2.0, 41};
  bool trig_sin = true;
  double tol = 1e-13;
};

inline const std::vector<std::string_view>& figure_names() {
  static const std::vector<std::string_view> names{"family", "complex-re", "complex-im", "poly",
                                                   "poly-norm", "asymptotics", "trig", "gaussian"};
  return names;
}

/// f(x, alpha) curves: alpha outer, x inner.
inline Table family(const FigureParams& p) {
  const std::vector<double> alphas = p.alphas.empty() ? std::vector<double>{0.5, 1.0, 1.6, 2.0, 2.8} : p.alphas;
  const Range xr = p.xrange.value_or(Range{0.05, 3.0, 0.05});
  Table t{{"x", "alpha", "f"}, {}};
  for (double a : alphas)
    for (double x : xr.values()) t.rows.push_back({x, a, f_direct(x, a, p.tol).value.real()});
  return t;
}

/// Real or imaginary part over the grid; holes are NaN.
inline Table complex_part(const FigureParams& p, bool imag) {
  const double alpha = p.alphas.empty() ? 1.0 : p.alphas.front();
  const ComplexGrid g = f_complex_grid(p.grid, alpha, p.tol);
  Table t{{"re", "im", "value"}, {}};
  for (const auto& pt : g.points) {
    const double v = pt.value ? (imag ? pt.value->imag() : pt.value->real()) : std::nan("");
    t.rows.push_back({pt.z.real(), pt.z.imag(), v});
  }
  return t;
}

/// S_m(x) or S_m(x)/m! for m = 0..rows: m outer, x inner.
inline Table poly(const FigureParams& p, bool normalized) {
  const std::size_t M = p.rows.value_or(6);
  const Range xr = p.xrange.value_or(Range{0.0, 5.0, 0.05});
  const PolyTable& table = shared_table();
  detail::require(M <= table.depth(), "poly figure: rows beyond table depth");
  Table t{{"x", "m", normalized ? "S_m_over_m_factorial" : "S_m"}, {}};
  for (std::size_t m = 0; m <= M; ++m)
    for (double x : xr.values())
      t.rows.push_back({x, static_cast<double>(m), normalized ? table.eval_normalized(m, x) : table.eval(m, x)});
  return t;
}

inline Table asymptotics(const FigureParams& p) {
  const double alpha = p.alphas.empty() ? 1.6 : p.alphas.front();
  const Range xr = p.xrange.value_or(Range{1.0, 8.0, 0.25});
  std::vector<double> xs = xr.values();
  Table t{{"x", "f", "exp_neg_x", "two_term"}, {}};
  for (const auto& row : fs::asymptotic_comparison(alpha, xs)) {
    if (row.error) continue;  // outside the domain of the two-term form
    t.rows.push_back({row.x, row.f, row.exp_neg_x, row.two_term});
  }
  return t;
}

/// exact, then the first 1..K terms of the sin or cos series (K = terms, default 2).
inline Table trig(const FigureParams& p) {
  const std::size_t K = p.terms.value_or(2);
  detail::require(K >= 1, "trig figure: needs at least one term");
  const Range xr = p.xrange.value_or(Range{0.0, 1.55, 0.05});
  Table t{{"x", "exact"}, {}};
  for (std::size_t k = 1; k <= K; ++k) t.columns.push_back("approx" + std::to_string(k));
  for (double x : xr.values()) {
    std::vector<double> row{x, p.trig_sin ? std::sin(x) : std::cos(x)};
    for (std::size_t k = 1; k <= K; ++k) row.push_back(fs::trig_partial(p.trig_sin, x, k).final.real());
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// exact, partial sums through S_1..S_K (K = terms, default 3), and 1 - x^2.
inline Table gaussian(const FigureParams& p) {
  const std::size_t K = p.terms.value_or(3);
  detail::require(K >= 1, "gaussian figure: needs at least one term");
  const Range xr = p.xrange.value_or(Range{0.0, 1.5, 0.05});
  Table t{{"x", "exact"}, {}};
  for (std::size_t k = 1; k <= K; ++k) t.columns.push_back("series_" + std::to_string(k));
  t.columns.push_back("taylor2");
  for (double x : xr.values()) {
    std::vector<double> row{x, std::exp(-x * x)};
    const fs::ExpansionResult r = fs::gaussian_partial(x, K);
    for (std::size_t k = 1; k <= K; ++k) row.push_back(r.partial_sums[k].real());
    row.push_back(1.0 - x * x);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table make(std::string_view name, const FigureParams& p) {
  if (name == "family") return family(p);
  if (name == "complex-re") return complex_part(p, false);
  if (name == "complex-im") return complex_part(p, true);
  if (name == "poly") return poly(p, false);
  if (name == "poly-norm") return poly(p, true);
  if (name == "asymptotics") return asymptotics(p);
  if (name == "trig") return trig(p);
  if (name == "gaussian") return gaussian(p);
  throw DomainError("unknown figure: " + std::string(name));
}

/// %.{precision}g; NaN and infinities spelled nan, inf, -inf.
inline std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline std::string to_csv(const Table& t, int precision) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i], precision);
    }
    out += '\n';
  }
  return out;
}

}  // namespace expser::fig
