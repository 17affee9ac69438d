#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "countfact/factorizations.hpp"

namespace countfact {

/// One CSV record of a residual-vs-n sweep. Lower-bound metrics
/// (nuclear_lb, mathias_lb) carry the method name "bound".
struct SweepRow {
  std::size_t n = 0;
  std::string method;
  std::string metric;  // maxse | meanse | nuclear_lb | mathias_lb
  double value = 0.0;
  double residual = 0.0;
  double predicted_residual = 0.0;
};

struct SweepSpec {
  std::vector<Method> methods;
  std::vector<std::string> metrics{"maxse", "meanse"};
  std::size_t n_min = 4;
  std::size_t n_max = 8192;
  bool geometric = true;
  std::size_t threads = 0;
};

inline constexpr const char* kSweepCsvHeader = "n,method,metric,value,residual,predicted_residual";

/// Sizes visited: powers of two in [n_min, n_max] when geometric, else every n.
std::vector<std::size_t> sweep_sizes(const SweepSpec& spec);

/// Evaluates every (n, method, metric); rows sorted by (method, metric, n).
std::vector<SweepRow> compute_sweep(const SweepSpec& spec);

/// Validates the spec, computes the rows, writes the CSV and optionally the SVG.
/// Nothing is written when validation fails.
std::vector<SweepRow> sweep(const SweepSpec& spec, const std::string& out_csv,
                            const std::optional<std::string>& out_svg = std::nullopt);

/// Shortest decimal that parses back to the same double; integral values
/// keep a trailing ".0".
std::string format_double(double v);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_sweep_csv(const std::string& path);
std::string sweep_csv_line(const SweepRow& row);

/// Residual vs log2(n) line chart, one polyline per (method, metric) and a
/// dashed asymptote at each predicted residual.
std::string render_sweep_svg(const std::vector<SweepRow>& rows);
void write_sweep_svg(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace countfact
