#include "countfact/mechanism.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "countfact/metrics.hpp"
#include "countfact/sequences.hpp"

namespace countfact {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kTrialBlock = 128;

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double noise_sigma(const Factorization& f, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mechanism: mu must be > 0");
  if (std::isinf(mu)) return 0.0;
  const double col = *std::max_element(f.col_norms_sq_right.begin(), f.col_norms_sq_right.end());
  return std::sqrt(col) / mu;
}

void validate(const MechanismConfig& cfg) {
  if (!cfg.factorization) throw std::invalid_argument("mechanism: no factorization");
  if (cfg.input.size() != cfg.factorization->n)
    throw std::invalid_argument("mechanism: input length does not match n");
}

struct BlockStats {
  std::vector<double> sq;    // sum of dev_i^2
  std::vector<double> z;     // sum of z_i
  std::vector<double> z_sq;  // sum of z_i^2
};

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t trial)
    : key_(splitmix64(seed ^ splitmix64(trial ^ 0xD1B54A32D192ED03ULL))) {}

double NoiseStream::next_uniform() {
  const std::uint64_t bits = splitmix64(key_ + counter_++ * kGolden);
  // 53 random bits, shifted off zero.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void NoiseStream::fill_normal(std::vector<double>& out) {
  for (double& v : out) v = next_normal();
}

std::vector<double> prefix_sums(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  double run = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    run += x[i];
    out[i] = run;
  }
  return out;
}

std::vector<double> run_mechanism_once(const MechanismConfig& cfg, std::uint64_t trial_index) {
  validate(cfg);
  const Factorization& f = *cfg.factorization;
  const double sigma = noise_sigma(f, cfg.mu);
  std::vector<double> rx = f.right.apply(cfg.input);
  if (sigma > 0.0) {
    NoiseStream noise(cfg.seed, trial_index);
    for (double& v : rx) v += sigma * noise.next_normal();
  }
  return f.left.apply(rx);
}

SimulationResult estimate_errors(const MechanismConfig& cfg) {
  validate(cfg);
  if (cfg.trials == 0) throw std::invalid_argument("estimate_errors: trials must be >= 1");
  const Factorization& f = *cfg.factorization;
  const std::size_t n = f.n;
  const double sigma = noise_sigma(f, cfg.mu);
  const std::vector<double> exact = prefix_sums(cfg.input);

  std::vector<double> row_scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) row_scale[i] = sigma * std::sqrt(f.row_norms_sq_left[i]);

  const std::size_t blocks = (cfg.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockStats> stats(blocks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      BlockStats s{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0)};
      const std::size_t first = b * kTrialBlock;
      const std::size_t last = std::min(cfg.trials, first + kTrialBlock);
      for (std::size_t t = first; t < last; ++t) {
        const std::vector<double> out = run_mechanism_once(cfg, t);
        for (std::size_t i = 0; i < n; ++i) {
          const double dev = out[i] - exact[i];
          s.sq[i] += dev * dev;
          if (row_scale[i] > 0.0) {
            const double z = dev / row_scale[i];
            s.z[i] += z;
            s.z_sq[i] += z * z;
          }
        }
      }
      stats[b] = std::move(s);
    }
  };

  std::size_t threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : cfg.threads;
  threads = std::min(threads, blocks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<double> sq(n, 0.0), z(n, 0.0), z_sq(n, 0.0);
  for (const BlockStats& s : stats) {
    for (std::size_t i = 0; i < n; ++i) {
      sq[i] += s.sq[i];
      z[i] += s.z[i];
      z_sq[i] += s.z_sq[i];
    }
  }

  const double trials = static_cast<double>(cfg.trials);
  SimulationResult r;
  r.sigma = sigma;
  double worst = 0.0;
  double total = 0.0;
  r.z_mean.resize(n);
  r.z_var.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double msq = sq[i] / trials;
    worst = std::max(worst, msq);
    total += msq;
    r.z_mean[i] = z[i] / trials;
    r.z_var[i] = z_sq[i] / trials - r.z_mean[i] * r.z_mean[i];
  }
  r.empirical_err_inf = std::sqrt(worst);
  r.empirical_err_2 = std::sqrt(total / static_cast<double>(n));
  const double inv_mu = std::isinf(cfg.mu) ? 0.0 : 1.0 / cfg.mu;
  r.theory_err_inf = maxse(f) * inv_mu;
  r.theory_err_2 = meanse(f) * inv_mu;
  return r;
}

}  // namespace countfact
