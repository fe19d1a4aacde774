#pragma once

// Noise generators, the benchmark signals and the Monte Carlo MSE harness for
// the autocorrelation estimators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbacf/core.hpp"
#include "dbacf/mafit.hpp"
#include "dbacf/rng.hpp"

namespace dbacf {

enum class NoiseDist { gaussian, t4 };

NoiseDist parse_noise_dist(std::string_view s);
std::string_view noise_dist_name(NoiseDist d) noexcept;

/// eps_i = r0 delta_i + r1 delta_{i-1} with lag-1 autocovariance gamma1 * Var(delta).
struct Ma1Spec {
  double gamma1 = 0.0;
  NoiseDist dist = NoiseDist::gaussian;
  bool standardized = false;  ///< rescale t4 draws to unit variance
};

/// (r0, r1) = ((sqrt(1+2g) + sqrt(1-2g))/2, (sqrt(1+2g) - sqrt(1-2g))/2).
std::pair<double, double> ma1_coefficients(double gamma1);

Series gen_ma1(const Ma1Spec& spec, std::size_t n, std::uint64_t seed);

/// MA(model) series with m burn-in innovations. Innovations have unit
/// variance before scaling by sqrt(sigma2); t4 draws are standardised here.
Series gen_ma(const MaModel& model, std::size_t n, std::uint64_t seed,
              NoiseDist dist = NoiseDist::gaussian);

/// Six change points at 5/36, 7/36, 16/36, 20/36, 27/36, 33/36.
StepSignal chakar_signal();

/// f_i = 300 x^3 (1-x)^3 at x = i/n.
Series park_signal(std::size_t n);

enum class SignalKind { chakar, park, constant, custom };

struct BenchmarkConfig {
  std::size_t n = 1600;
  std::size_t reps = 500;
  std::size_t m = 2;
  std::uint64_t seed = rng::kDefaultSeed;
  SignalKind signal = SignalKind::chakar;
  std::optional<StepSignal> custom;
  std::vector<double> gamma1 = {0.0};  ///< one table row per value (MA(1) errors)
  NoiseDist dist = NoiseDist::gaussian;
  bool standardized = false;
  std::optional<MaModel> ma;  ///< general MA errors instead of the MA(1) rows
  std::string estimators = "OHR";
  unsigned workers = 0;
};

struct MseRow {
  double gamma1 = 0.0;
  char estimator = 'O';
  std::size_t lag = 1;
  double mse = 0.0;
  double se = 0.0;
  std::size_t reps = 0;  ///< replicates that produced an estimate
  std::size_t failures = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Flat key=value config (keys: n, reps, m, seed, signal, taus, levels,
/// gamma1, dist, standardized, theta, sigma2, estimators, workers).
BenchmarkConfig parse_benchmark_config(const std::string& text);

/// Noiseless signal used by a benchmark configuration.
Series benchmark_signal(const BenchmarkConfig& cfg);

/// MSE of rho_1 and rho_2 (lags up to m) per noise row and estimator.
/// Replicates with gamma_0 <= 0 are counted as failures and skipped.
std::vector<MseRow> run_benchmark(const BenchmarkConfig& cfg);

}  // namespace dbacf
