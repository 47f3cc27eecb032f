// expser: triangle export, series evaluation, figure datasets and invariant suites.
//
// Exit codes: 0 success, 1 I/O failure, 2 domain error or unknown name,
// 3 convergence failure, 4 verification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "expser/expser.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::json;

enum Exit : int { kOk = 0, kIo = 1, kDomain = 2, kConvergence = 3, kVerify = 4 };

struct OutputSpec {
  std::string path = "-";
  std::string format = "csv";
  int precision = 12;
};

/// Writes text to stdout, or to path via a temporary file renamed on success.
bool emit(const OutputSpec& out, const std::string& text) {
  if (out.path.empty() || out.path == "-") {
    std::cout << text << std::flush;
    return static_cast<bool>(std::cout);
  }
  namespace fs = std::filesystem;
  const fs::path target(out.path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return false;
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

int emit_or_fail(const OutputSpec& out, const std::string& text) {
  if (emit(out, text)) return kOk;
  std::cerr << "expser: cannot write " << out.path << "\n";
  return kIo;
}

/// Rounds to the configured significant digits so JSON output is as
/// deterministic as the CSV text.
json number(double v, int precision) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(expser::fig::format_number(v, precision).c_str(), nullptr);
}

json report_json(const expser::EvalReport& r, int precision) {
  return json{{"value_re", number(r.value.real(), precision)},
              {"value_im", number(r.value.imag(), precision)},
              {"terms_used", r.terms_used},
              {"tail_bound", number(r.tail_bound, precision)},
              {"cancellation", number(r.cancellation, precision)},
              {"method", std::string(expser::to_string(r.method))},
              {"warnings", r.warnings}};
}

std::string table_json(const expser::fig::Table& t, int precision) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (double v : row) r.push_back(number(v, precision));
    rows.push_back(std::move(r));
  }
  return json{{"columns", t.columns}, {"rows", rows}}.dump(2) + "\n";
}

void add_output_options(CLI::App* cmd, OutputSpec& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--out", out.path, "Output path, - for standard output");
  cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--precision", out.precision, "Significant digits for floats")->check(CLI::Range(1, 17));
}

int cmd_triangle(std::size_t M, const OutputSpec& out) {
  const auto rows = expser::triangle(M);
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& p : rows) {
      std::vector<std::string> c;
      for (const auto& v : p.coeffs) c.push_back(v.str());
      arr.push_back(json{{"m", p.m}, {"coefficients", c}});
    }
    return emit_or_fail(out, json{{"rows", arr}}.dump(2) + "\n");
  }
  std::string text = "m,power,coefficient\n";
  for (const auto& p : rows)
    for (std::size_t k = 0; k < p.coeffs.size(); ++k)
      text += std::to_string(p.m) + "," + std::to_string(k) + "," + p.coeffs[k].str() + "\n";
  return emit_or_fail(out, text);
}

struct EvalArgs {
  double x = 1.0, im = 0.0, alpha = 1.0, tol = 1e-12;
  std::string method = "direct";
  std::size_t terms = 300;
};

int cmd_eval(const EvalArgs& a, const OutputSpec& out) {
  const expser::SeriesQuery q{expser::cplx(a.x, a.im), a.alpha, a.tol, 10'000'000, a.terms};
  try {
    expser::EvalReport r;
    if (a.method == "direct") {
      r = expser::f_direct(q);
    } else if (a.method == "transformed") {
      r = expser::f_transformed(q);
    } else if (a.method == "asymptotic") {
      if (a.im != 0.0) throw expser::DomainError("asymptotic route needs a real argument");
      r = expser::asymptotic_report(a.x, a.alpha);
    } else if (a.method == "closed-alpha1") {
      if (a.alpha != 1.0) throw expser::DomainError("closed-alpha1 requires --alpha 1");
      if (a.im != 0.0) throw expser::DomainError("closed-alpha1 needs a real argument");
      r = expser::closed_alpha1_report(a.x);
    } else {
      throw expser::DomainError("unknown method: " + a.method);
    }
    return emit_or_fail(out, report_json(r, out.precision).dump(2) + "\n");
  } catch (const expser::SeriesConvergenceError& e) {
    std::cerr << "expser: convergence failure: " << e.what() << "\n";
    (void)emit(out, report_json(e.best_estimate(), out.precision).dump(2) + "\n");
    return kConvergence;
  } catch (const expser::ConvergenceError& e) {
    std::cerr << "expser: convergence failure: " << e.what() << "\n";
    return kConvergence;
  } catch (const expser::DomainError& e) {
    std::cerr << "expser: domain error: " << e.what() << "\n";
    return kDomain;
  }
}

/// "a:b:c:d:n" -> GridSpec
std::optional<expser::GridSpec> parse_grid(const std::string& s) {
  expser::GridSpec g;
  double n = 0;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf:%lf:%lf%c", &g.re0, &g.re1, &g.im0, &g.im1, &n, &extra) != 5) return {};
  if (!(n >= 1.0) || n != std::floor(n)) return {};
  g.steps = static_cast<std::size_t>(n);
  return g;
}

/// "lo:hi:step" -> Range
std::optional<expser::fig::Range> parse_range(const std::string& s) {
  expser::fig::Range r;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &extra) != 3) return {};
  if (!(r.step > 0.0) || r.hi < r.lo) return {};
  return r;
}

struct FigureArgs {
  std::string name;
  std::vector<double> alphas;
  std::string xrange, grid, function = "sin";
  std::optional<std::size_t> terms, rows;
  double tol = 1e-13;
};

int cmd_figure(const FigureArgs& a, const OutputSpec& out) {
  expser::fig::FigureParams p;
  p.alphas = a.alphas;
  p.terms = a.terms;
  p.rows = a.rows;
  p.tol = a.tol;
  p.trig_sin = a.function == "sin";
  if (!a.xrange.empty()) {
    p.xrange = parse_range(a.xrange);
    if (!p.xrange) {
      std::cerr << "expser: --xrange expects lo:hi:step\n";
      return kDomain;
    }
  }
  if (!a.grid.empty()) {
    const auto g = parse_grid(a.grid);
    if (!g) {
      std::cerr << "expser: --grid expects re0:re1:im0:im1:steps\n";
      return kDomain;
    }
    p.grid = *g;
  }
  try {
    const expser::fig::Table t = expser::fig::make(a.name, p);
    return emit_or_fail(out, out.format == "json" ? table_json(t, out.precision)
                                                  : expser::fig::to_csv(t, out.precision));
  } catch (const expser::DomainError& e) {
    std::cerr << "expser: " << e.what() << "\n";
    return kDomain;
  } catch (const expser::ConvergenceError& e) {
    std::cerr << "expser: convergence failure: " << e.what() << "\n";
    return kConvergence;
  }
}

int cmd_verify(const std::string& suite, const OutputSpec& out) {
  expser::verify::Results results;
  try {
    results = expser::verify::run_suite(suite);
  } catch (const expser::DomainError& e) {
    std::cerr << "expser: " << e.what() << "\n";
    return kDomain;
  }
  std::string text;
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& c : results)
      arr.push_back(json{{"suite", c.suite},
                         {"name", c.name},
                         {"pass", c.pass},
                         {"residual", number(c.residual, out.precision)},
                         {"limit", number(c.limit, out.precision)}});
    text = json{{"checks", arr}, {"all_passed", expser::verify::all_passed(results)}}.dump(2) + "\n";
  } else {
    text = "suite,check,status,residual,limit\n";
    for (const auto& c : results) {
      text += c.suite + ",\"" + c.name + "\"," + (c.pass ? "PASS" : "FAIL") + "," +
              expser::fig::format_number(c.residual, out.precision) + "," +
              expser::fig::format_number(c.limit, out.precision) + "\n";
    }
  }
  const int io = emit_or_fail(out, text);
  if (io != kOk) return io;
  return expser::verify::all_passed(results) ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized exponential power series toolkit"};
  app.require_subcommand(1);

  OutputSpec tri_out, eval_out, fig_out, ver_out;

  std::size_t tri_rows = 8;
  auto* tri = app.add_subcommand("triangle", "Export the S_m coefficient triangle as CSV");
  tri->add_option("--rows", tri_rows, "Highest index m");
  add_output_options(tri, tri_out, "csv");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate f(x, alpha) and print the report as JSON");
  eval->add_option("--x", ev.x, "Argument (real part)");
  eval->add_option("--im", ev.im, "Imaginary part of the argument (direct route)");
  eval->add_option("--alpha", ev.alpha, "Exponent alpha");
  eval->add_option("--method", ev.method, "direct, transformed, asymptotic or closed-alpha1");
  eval->add_option("--tol", ev.tol, "Relative stopping tolerance");
  eval->add_option("--terms", ev.terms, "Inner term cap for the transformed route");
  add_output_options(eval, eval_out, "json");

  FigureArgs fa;
  auto* fig = app.add_subcommand("figure", "Emit a figure dataset");
  fig->add_option("name", fa.name, "family, complex-re, complex-im, poly, poly-norm, asymptotics, trig, gaussian")
      ->required();
  fig->add_option("--alpha", fa.alphas, "Exponent(s) alpha");
  fig->add_option("--xrange", fa.xrange, "lo:hi:step");
  fig->add_option("--grid", fa.grid, "re0:re1:im0:im1:steps");
  fig->add_option("--terms", fa.terms, "Number of series terms shown");
  fig->add_option("--rows", fa.rows, "Highest polynomial index");
  fig->add_option("--function", fa.function, "sin or cos (trig figure)")->check(CLI::IsMember({"sin", "cos"}));
  fig->add_option("--tol", fa.tol, "Relative stopping tolerance");
  add_output_options(fig, fig_out, "csv");

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run invariant suites");
  ver->add_option("suite", suite, "poly, operator, series, funcseries or all");
  add_output_options(ver, ver_out, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kDomain;
  }

  if (*tri) return cmd_triangle(tri_rows, tri_out);
  if (*eval) return cmd_eval(ev, eval_out);
  if (*fig) return cmd_figure(fa, fig_out);
  if (*ver) return cmd_verify(suite, ver_out);
  return kDomain;
}
