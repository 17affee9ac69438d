#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "countfact/factorizations.hpp"

namespace countfact {

/// Counter-based Gaussian stream. Uniform draw `i` of trial `t` is
/// splitmix64(key(seed, t) + i * 0x9E3779B97F4A7C15); pairs of uniforms go
/// through the Box-Muller transform. Output depends only on (seed, trial).
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t trial);

  double next_uniform();  // in (0, 1)
  double next_normal();
  void fill_normal(std::vector<double>& out);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct MechanismConfig {
  std::shared_ptr<const Factorization> factorization;
  /// GDP level; sigma = ||R||_{1->2} / mu. +infinity gives sigma = 0.
  double mu = 1.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<double> input;
  /// Worker threads for trial blocks; 0 picks the hardware concurrency.
  std::size_t threads = 1;
};

struct SimulationResult {
  double sigma = 0.0;
  /// max_i sqrt(mean over trials of dev_i^2)
  double empirical_err_inf = 0.0;
  /// sqrt(mean over trials of (1/n) ||dev||^2)
  double empirical_err_2 = 0.0;
  double theory_err_inf = 0.0;  // maxse / mu
  double theory_err_2 = 0.0;    // meanse / mu
  /// Per-coordinate mean and variance of dev_i / (sigma ||L_i||).
  std::vector<double> z_mean;
  std::vector<double> z_var;
};

/// L (R x + sigma z) for the noise of (cfg.seed, trial_index).
std::vector<double> run_mechanism_once(const MechanismConfig& cfg, std::uint64_t trial_index);

/// Monte-Carlo estimate of the error metrics. Trials are reduced in a fixed
/// block order, so the result is bit-identical for any thread count.
SimulationResult estimate_errors(const MechanismConfig& cfg);

/// Inclusive prefix sums, i.e. M_count x.
std::vector<double> prefix_sums(const std::vector<double>& x);

}  // namespace countfact
