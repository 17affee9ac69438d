#include "countfact/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "countfact/bounds.hpp"
#include "countfact/metrics.hpp"

namespace countfact {

namespace {

bool is_bound_metric(const std::string& m) { return m == "nuclear_lb" || m == "mathias_lb"; }

void validate(const SweepSpec& spec) {
  if (spec.methods.empty()) throw std::invalid_argument("sweep: empty method set");
  if (spec.metrics.empty()) throw std::invalid_argument("sweep: empty metric set");
  if (spec.n_min < 1 || spec.n_min > spec.n_max)
    throw std::invalid_argument("sweep: need 1 <= n_min <= n_max");
  for (const auto& m : spec.metrics) {
    if (m != "maxse" && m != "meanse" && !is_bound_metric(m))
      throw std::invalid_argument("sweep: unknown metric " + m);
  }
  if (sweep_sizes(spec).empty()) throw std::invalid_argument("sweep: no sizes in range");
}

struct Task {
  std::size_t n;
  std::optional<Method> method;  // empty for the lower-bound task
};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string out(buf, res.ptr);
  // Keep integral values visibly real: "1.0", not "1".
  if (std::isfinite(v) && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::vector<std::size_t> sweep_sizes(const SweepSpec& spec) {
  std::vector<std::size_t> out;
  if (spec.geometric) {
    for (std::size_t p = 1; p <= spec.n_max; p <<= 1)
      if (p >= spec.n_min) out.push_back(p);
  } else {
    for (std::size_t n = spec.n_min; n <= spec.n_max; ++n) out.push_back(n);
  }
  return out;
}

std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto sizes = sweep_sizes(spec);
  const bool want_bounds = std::any_of(spec.metrics.begin(), spec.metrics.end(), is_bound_metric);
  const bool want_methods = std::any_of(spec.metrics.begin(), spec.metrics.end(),
                                        [](const std::string& m) { return !is_bound_metric(m); });
  auto wants = [&](const char* m) {
    return std::find(spec.metrics.begin(), spec.metrics.end(), m) != spec.metrics.end();
  };

  std::vector<Task> tasks;
  // Largest n first so the long NSR sweeps start early.
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
    if (want_methods)
      for (Method m : spec.methods) tasks.push_back({*it, m});
    if (want_bounds) tasks.push_back({*it, std::nullopt});
  }

  std::vector<std::vector<SweepRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size() && !failed; i = next++) {
      try {
        const Task& t = tasks[i];
        const double base = log_baseline(t.n);
        std::vector<SweepRow> rows;
        if (t.method) {
          const Factorization f = make_factorization(*t.method, t.n);
          const std::string name(to_string(*t.method));
          if (wants("maxse")) {
            const double v = maxse(f);
            rows.push_back({t.n, name, "maxse", v, v - base, predicted_residual(*t.method, Metric::MaxSE)});
          }
          if (wants("meanse")) {
            const double v = meanse(f);
            rows.push_back({t.n, name, "meanse", v, v - base, predicted_residual(*t.method, Metric::MeanSE)});
          }
        } else {
          if (wants("nuclear_lb")) {
            const double v = nuclear_lower_bound(t.n);
            rows.push_back({t.n, "bound", "nuclear_lb", v, v - base, constants().lb_const});
          }
          if (wants("mathias_lb")) {
            const double v = mathias_lower_bound(t.n);
            rows.push_back({t.n, "bound", "mathias_lb", v, v - base, constants().mathias_lb_const});
          }
        }
        results[i] = std::move(rows);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };

  std::size_t threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : spec.threads;
  threads = std::min(threads, tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<SweepRow> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.method, a.metric, a.n) < std::tie(b.method, b.metric, b.n);
  });
  return out;
}

std::string sweep_csv_line(const SweepRow& row) {
  std::string line = std::to_string(row.n);
  line += ',' + row.method + ',' + row.metric + ',' + format_double(row.value) + ',' +
          format_double(row.residual) + ',' + format_double(row.predicted_residual);
  return line;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) out << sweep_csv_line(r) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw std::runtime_error(path + ": unexpected CSV header");
  auto parse_double = [&](const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::runtime_error(path + ": bad number '" + s + "'");
    return v;
  };
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) throw std::runtime_error(path + ": expected 6 fields");
    SweepRow r;
    r.n = std::stoull(fields[0]);
    r.method = fields[1];
    r.metric = fields[2];
    r.value = parse_double(fields[3]);
    r.residual = parse_double(fields[4]);
    r.predicted_residual = parse_double(fields[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string render_sweep_svg(const std::vector<SweepRow>& rows) {
  constexpr double kWidth = 960.0, kHeight = 540.0;
  constexpr double kLeft = 80.0, kRight = 220.0, kTop = 40.0, kBottom = 60.0;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::map<std::pair<std::string, std::string>, std::vector<const SweepRow*>> series;
  for (const auto& r : rows) series[{r.method, r.metric}].push_back(&r);

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (!rows.empty()) {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      const double x = std::log2(static_cast<double>(r.n));
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min({ymin, r.residual, r.predicted_residual});
      ymax = std::max({ymax, r.residual, r.predicted_residual});
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    const double pad = std::max(0.05 * (ymax - ymin), 1e-3);
    ymin -= pad;
    ymax += pad;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 540\" width=\"960\" height=\"540\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"white\"/>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
    << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int t = static_cast<int>(std::ceil(xmin)); t <= static_cast<int>(std::floor(xmax)); ++t) {
    s << "<text x=\"" << px(t) << "\" y=\"" << kTop + plot_h + 18
      << "\" text-anchor=\"middle\">2^" << t << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double y = ymin + (ymax - ymin) * i / 5.0;
    s << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">"
      << y << "</text>\n";
  }
  s << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
    << "\" text-anchor=\"middle\">n (log2 scale)</text>\n";
  s << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 20 "
    << kTop + plot_h / 2 << ")\" text-anchor=\"middle\">value - log(n)/pi</text>\n";

  std::size_t idx = 0;
  for (const auto& [key, pts] : series) {
    const char* color = kPalette[idx % std::size(kPalette)];
    const double asym = pts.front()->predicted_residual;
    s << "<line x1=\"" << kLeft << "\" y1=\"" << py(asym) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << py(asym) << "\" stroke=\"" << color
      << "\" stroke-dasharray=\"6 4\" stroke-opacity=\"0.6\"/>\n";
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const SweepRow* r : pts) s << px(std::log2(static_cast<double>(r->n))) << ',' << py(r->residual) << ' ';
    s << "\"/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(idx);
    s << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << ly + 4 << "\">" << key.first << ' '
      << key.second << "</text>\n";
    ++idx;
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

void write_sweep_svg(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << render_sweep_svg(rows);
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const std::string& out_csv,
                            const std::optional<std::string>& out_svg) {
  validate(spec);
  // Fail on unwritable destinations before spending time on the sweep.
  for (const std::string* p : {&out_csv, out_svg ? &*out_svg : nullptr}) {
    if (!p) continue;
    std::ofstream probe(*p, std::ios::app);
    if (!probe) throw std::runtime_error("cannot open " + *p + " for writing");
  }
  auto rows = compute_sweep(spec);
  write_sweep_csv(rows, out_csv);
  if (out_svg) write_sweep_svg(rows, *out_svg);
  return rows;
}

}  // namespace countfact
