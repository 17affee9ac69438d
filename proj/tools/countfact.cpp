// countfact: command-line front end for the counting-matrix factorizations.
//
// Exit codes: 0 success, 1 invariant violation under --check, 2 usage or
// argument error, 3 I/O failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "countfact/bounds.hpp"
#include "countfact/checks.hpp"
#include "countfact/factorizations.hpp"
#include "countfact/mechanism.hpp"
#include "countfact/metrics.hpp"
#include "countfact/sequences.hpp"
#include "countfact/sweep.hpp"

namespace cf = countfact;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out;
  std::string csv;
  std::string svg;
  bool check = false;
  std::size_t threads = 0;
};

std::string fmt(double v) { return cf::format_double(v); }

/// Two-column "key  value" block with the keys padded to a common width.
class Report {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value) { add(std::move(key), fmt(value)); }

  void print(std::ostream& os) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

/// Column-aligned table, right-justified numbers.
void print_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - cells[c].size(), ' ') << cells[c];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

/// Appends one CSV row, writing the header first when the file is new or empty.
void append_csv(const std::string& path, const std::string& header, const std::string& row) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path + " for writing");
  if (fresh) out << header << '\n';
  out << row << '\n';
  if (!out) throw IoError("failed writing " + path);
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

/// Routes the text report to --out when given.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int finish(const Globals& g, const std::vector<std::string>& violations) {
  if (!g.check) return 0;
  for (const auto& v : violations) std::cerr << "check failed: " << v << '\n';
  if (violations.empty()) {
    std::cerr << "check passed\n";
    return 0;
  }
  return kExitViolation;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(std::string(what) + ": not a number: " + s);
  return v;
}

std::vector<double> read_input(const std::string& spec, std::size_t n) {
  if (spec == "zeros") return std::vector<double>(n, 0.0);
  if (spec == "ones") return std::vector<double>(n, 1.0);
  std::ifstream in(spec);
  if (!in) throw IoError("cannot open input " + spec);
  std::vector<double> x;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      if (!cell.empty()) x.push_back(parse_real(cell, "input"));
    }
  }
  if (x.size() != n)
    throw std::invalid_argument("input has " + std::to_string(x.size()) + " values, expected " + std::to_string(n));
  return x;
}

int cmd_coeffs(const Globals& g, std::size_t n) {
  const auto t = cf::CoefficientTable::build(n);
  Sink sink(g.out);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < n; ++k) {
    rows.push_back({std::to_string(k), fmt(t.r[k]), fmt(t.rtilde[k]), fmt(t.d_sq[k]), fmt(t.alpha[k])});
  }
  print_table(sink.stream(), {"k", "r_k", "rtilde_k", "d_sq[k+1]", "alpha[k+1]"}, rows);
  if (!g.csv.empty()) {
    std::ofstream out(g.csv);
    if (!out) throw IoError("cannot open " + g.csv + " for writing");
    out << "k,r,rtilde,d_sq,alpha\n";
    for (const auto& r : rows) out << join(r) << '\n';
  }
  return finish(g, g.check ? cf::check_coefficients(t) : std::vector<std::string>{});
}

int cmd_factorize(const Globals& g, cf::Method method, std::size_t n, const std::string& dump) {
  const cf::Factorization f = cf::make_factorization(method, n);
  if (!dump.empty()) {
    cf::write_matrix_csv(f.dense_left(), dump + "-left.csv");
    cf::write_matrix_csv(f.dense_right(), dump + "-right.csv");
  }
  Sink sink(g.out);
  Report rep;
  rep.add("method", std::string(cf::to_string(method)));
  rep.add("n", std::to_string(n));
  rep.add("inner_dim", std::to_string(f.inner_dim));
  rep.add("max_row_norm_sq_left", *std::max_element(f.row_norms_sq_left.begin(), f.row_norms_sq_left.end()));
  rep.add("max_col_norm_sq_right", *std::max_element(f.col_norms_sq_right.begin(), f.col_norms_sq_right.end()));
  rep.add("frobenius_sq_left", f.frobenius_sq_left);
  rep.add("discarded_imag", f.discarded_imag);
  if (n <= cf::kGroupAlgebraDenseBudget) rep.add("reconstruction_error", cf::verify_reconstruction(f));
  if (!dump.empty()) rep.add("dump", dump + "-left.csv, " + dump + "-right.csv");
  rep.print(sink.stream());
  return finish(g, g.check ? cf::check_factorization(f) : std::vector<std::string>{});
}

int cmd_metrics(const Globals& g, cf::Method method, std::size_t n) {
  const cf::Factorization f = cf::make_factorization(method, n);
  const cf::ErrorReport r = cf::error_report(f);
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("n/a"); };
  Sink sink(g.out);
  Report rep;
  rep.add("method", std::string(cf::to_string(method)));
  rep.add("n", std::to_string(n));
  rep.add("maxse", r.maxse);
  rep.add("meanse", r.meanse);
  rep.add("maxse_residual", r.maxse_residual);
  rep.add("meanse_residual", r.meanse_residual);
  rep.add("closed_form_maxse", opt(r.closed_form_maxse));
  rep.add("closed_form_meanse", opt(r.closed_form_meanse));
  rep.add("predicted_maxse_residual", r.predicted_maxse_residual);
  rep.add("predicted_meanse_residual", r.predicted_meanse_residual);
  rep.print(sink.stream());
  if (!g.csv.empty()) {
    append_csv(g.csv,
               "n,method,maxse,meanse,maxse_residual,meanse_residual,closed_form_maxse,"
               "closed_form_meanse,predicted_maxse_residual,predicted_meanse_residual",
               join({std::to_string(n), std::string(cf::to_string(method)), fmt(r.maxse), fmt(r.meanse),
                     fmt(r.maxse_residual), fmt(r.meanse_residual),
                     r.closed_form_maxse ? fmt(*r.closed_form_maxse) : "",
                     r.closed_form_meanse ? fmt(*r.closed_form_meanse) : "", fmt(r.predicted_maxse_residual),
                     fmt(r.predicted_meanse_residual)}));
  }
  return finish(g, g.check ? cf::check_factorization(f) : std::vector<std::string>{});
}

int cmd_bounds(const Globals& g, std::size_t n) {
  const cf::BoundReport b = cf::bound_report(n);
  const auto& c = cf::constants();
  Sink sink(g.out);
  Report rep;
  rep.add("n", std::to_string(n));
  rep.add("nuclear_lb", b.nuclear_lb);
  rep.add("mathias_lb", b.mathias_lb);
  rep.add("nuclear_residual", b.nuclear_residual);
  rep.add("mathias_residual", b.mathias_residual);
  rep.add("predicted_nuclear_residual", c.lb_const);
  rep.add("predicted_mathias_residual", c.mathias_lb_const);
  rep.add("g_n", n >= 2 ? fmt(b.g_n) : std::string("n/a"));
  rep.add("g_n_predicted", b.g_n_predicted);
  rep.print(sink.stream());
  if (!g.csv.empty()) {
    append_csv(g.csv, "n,nuclear_lb,mathias_lb,nuclear_residual,mathias_residual,g_n,g_n_predicted",
               join({std::to_string(n), fmt(b.nuclear_lb), fmt(b.mathias_lb), fmt(b.nuclear_residual),
                     fmt(b.mathias_residual), n >= 2 ? fmt(b.g_n) : "", fmt(b.g_n_predicted)}));
  }
  return finish(g, g.check ? cf::check_bounds(b) : std::vector<std::string>{});
}

int cmd_sweep(const Globals& g, const std::vector<std::string>& methods, const std::vector<std::string>& metrics,
              std::size_t n_min, std::size_t n_max, bool linear) {
  cf::SweepSpec spec;
  for (const auto& m : methods) spec.methods.push_back(cf::parse_method(m));
  spec.metrics = metrics;
  spec.n_min = n_min;
  spec.n_max = n_max;
  spec.geometric = !linear;
  spec.threads = g.threads;
  const std::string csv = g.csv.empty() ? "sweep.csv" : g.csv;
  std::optional<std::string> svg;
  if (!g.svg.empty()) svg = g.svg;

  std::vector<cf::SweepRow> rows;
  try {
    rows = cf::sweep(spec, csv, svg);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  Sink sink(g.out);
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows)
    table.push_back({std::to_string(r.n), r.method, r.metric, fmt(r.value), fmt(r.residual), fmt(r.predicted_residual)});
  print_table(sink.stream(), {"n", "method", "metric", "value", "residual", "predicted_residual"}, table);
  return finish(g, g.check ? cf::check_sweep(rows) : std::vector<std::string>{});
}

int cmd_simulate(const Globals& g, cf::Method method, std::size_t n, const std::string& mu_text,
                 std::size_t trials, std::uint64_t seed, const std::string& input) {
  cf::MechanismConfig cfg;
  cfg.factorization = std::make_shared<const cf::Factorization>(cf::make_factorization(method, n));
  cfg.mu = parse_real(mu_text, "--mu");
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.input = read_input(input, n);
  cfg.threads = g.threads;
  const cf::SimulationResult r = cf::estimate_errors(cfg);

  double worst_mean = 0.0, worst_var = 0.0;
  for (std::size_t i = 0; i < r.z_mean.size(); ++i) {
    worst_mean = std::max(worst_mean, std::abs(r.z_mean[i]));
    worst_var = std::max(worst_var, std::abs(r.z_var[i] - 1.0));
  }
  Sink sink(g.out);
  Report rep;
  rep.add("method", std::string(cf::to_string(method)));
  rep.add("n", std::to_string(n));
  rep.add("mu", cfg.mu);
  rep.add("trials", std::to_string(trials));
  rep.add("seed", std::to_string(seed));
  rep.add("sigma", r.sigma);
  rep.add("empirical_err_inf", r.empirical_err_inf);
  rep.add("theory_err_inf", r.theory_err_inf);
  rep.add("empirical_err_2", r.empirical_err_2);
  rep.add("theory_err_2", r.theory_err_2);
  rep.add("max_abs_z_mean", worst_mean);
  rep.add("max_abs_z_var_minus_1", worst_var);
  rep.print(sink.stream());
  if (!g.csv.empty()) {
    append_csv(g.csv, "n,method,mu,trials,seed,sigma,empirical_err_inf,theory_err_inf,empirical_err_2,theory_err_2",
               join({std::to_string(n), std::string(cf::to_string(method)), fmt(cfg.mu), std::to_string(trials),
                     std::to_string(seed), fmt(r.sigma), fmt(r.empirical_err_inf), fmt(r.theory_err_inf),
                     fmt(r.empirical_err_2), fmt(r.theory_err_2)}));
  }
  return finish(g, g.check ? cf::check_simulation(cfg, r) : std::vector<std::string>{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorizations of the lower-triangular all-ones matrix: errors, bounds and simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "Write the text report to this file instead of stdout");
  app.add_option("--csv", g.csv, "CSV destination (sweep output, or a row appended by metrics/bounds/simulate)");
  app.add_option("--svg", g.svg, "SVG plot destination (sweep only)");
  app.add_flag("--check", g.check, "Verify invariants; exit 1 on any violation");
  app.add_option("--threads", g.threads, "Worker threads; 0 uses the hardware concurrency");

  const std::vector<std::string> method_names{"sqrt", "nsr", "group-algebra", "ga"};
  std::size_t n = 0;
  std::string method = "nsr";

  auto* coeffs = app.add_subcommand("coeffs", "Wallis coefficients, inverse coefficients, column norms, alpha_n");
  coeffs->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);

  std::string dump;
  auto* factorize = app.add_subcommand("factorize", "Build a factorization and report its norms");
  factorize->add_option("--method", method, "sqrt | nsr | group-algebra")->check(CLI::IsMember(method_names));
  factorize->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  factorize->add_option("--dump", dump, "Write PATH-left.csv and PATH-right.csv");

  auto* metrics = app.add_subcommand("metrics", "MaxSE, MeanSE and residuals against log(n)/pi");
  metrics->add_option("--method", method, "sqrt | nsr | group-algebra")->check(CLI::IsMember(method_names));
  metrics->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "Nuclear-norm and Mathias lower bounds");
  bounds->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> sweep_methods{"sqrt", "nsr", "group-algebra"};
  std::vector<std::string> sweep_metrics{"maxse", "meanse", "nuclear_lb", "mathias_lb"};
  std::size_t n_min = 4, n_max = 8192;
  bool linear = false;
  auto* sweep = app.add_subcommand("sweep", "Residual sweep over n, written as CSV (and SVG with --svg)");
  sweep->add_option("--methods", sweep_methods, "Methods to include")
      ->delimiter(',')
      ->check(CLI::IsMember(method_names));
  sweep->add_option("--metrics", sweep_metrics, "maxse, meanse, nuclear_lb, mathias_lb")
      ->delimiter(',')
      ->check(CLI::IsMember({"maxse", "meanse", "nuclear_lb", "mathias_lb"}));
  sweep->add_option("--n-min", n_min, "Smallest n")->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
  sweep->add_flag("--linear", linear, "Visit every n instead of powers of two");

  std::string mu = "1";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string input = "zeros";
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the Gaussian matrix mechanism");
  simulate->add_option("--method", method, "sqrt | nsr | group-algebra")->check(CLI::IsMember(method_names));
  simulate->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--mu", mu, "Privacy parameter; 'inf' disables noise");
  simulate->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Noise seed");
  simulate->add_option("--input", input, "zeros | ones | path to a CSV of n values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(g, n);
    if (*factorize) return cmd_factorize(g, cf::parse_method(method), n, dump);
    if (*metrics) return cmd_metrics(g, cf::parse_method(method), n);
    if (*bounds) return cmd_bounds(g, n);
    if (*sweep) return cmd_sweep(g, sweep_methods, sweep_metrics, n_min, n_max, linear);
    if (*simulate) return cmd_simulate(g, cf::parse_method(method), n, mu, trials, seed, input);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
