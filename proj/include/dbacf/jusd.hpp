#pragma once

// Multiscale jump segmentation for m-dependent data. Local statistics are
// squared centred partial sums normalised by their exact variance under the
// (estimated) autocovariance; the null quantile of their maximum is obtained
// by simulating the fitted MA model.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dbacf/core.hpp"
#include "dbacf/mafit.hpp"

namespace dbacf {

/// Closed interval of 1-based indices i <= j.
struct Interval {
  std::size_t i = 1;
  std::size_t j = 1;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class IntervalMode { full, dyadic };

IntervalMode parse_interval_mode(std::string_view s);
std::string_view interval_mode_name(IntervalMode mode) noexcept;

struct IntervalSystem {
  std::size_t n = 0;
  IntervalMode mode = IntervalMode::dyadic;
  std::vector<Interval> intervals;  ///< sorted by (i, j), no duplicates
};

struct StepFit {
  std::vector<std::size_t> changepoints;  ///< first index of each new segment
  std::vector<double> levels;
  std::size_t k_hat = 0;
  double quantile_used = 0.0;
  double alpha = 0.0;
};

/// len gamma_0 + 2 sum_{k=1}^m (len-k)_+ gamma_k.
double partial_sum_variance(const Acvf& acvf, std::size_t len);

/// |S_i^j - (j-i+1) mu|^2 / VAR(S_i^j).
double local_stat(const Series& y, std::size_t i, std::size_t j, double mu, const Acvf& acvf);

/// full: every (i, j). dyadic: lengths 1, 2, 4, ... <= n with starts
/// 1, 1+s, 1+2s, ... where s = max(1, L/2).
IntervalSystem build_intervals(std::size_t n, IntervalMode mode);

/// max over the system of local_stat(y, i, j, mu, acvf).
double multiscale_stat(const Series& y, double mu, const Acvf& acvf, const IntervalSystem& sys);

/// Empirical (1-alpha) quantile (order statistic ceil((1-alpha) reps)) of the
/// multiscale statistic with mu = 0 over `reps` simulated Gaussian MA series.
double null_quantile(const MaModel& model, std::size_t n, double alpha, std::size_t reps,
                     std::uint64_t seed, const IntervalSystem& sys, unsigned workers = 0);

/// The simulated null sample itself, in replicate order.
std::vector<double> null_sample(const MaModel& model, std::size_t n, std::size_t reps,
                                std::uint64_t seed, const IntervalSystem& sys,
                                unsigned workers = 0);

/// Empirical quantile used by null_quantile.
double upper_quantile(std::vector<double> sample, double alpha);

/// Step fit with the fewest segments such that every system interval inside a
/// segment passes local_stat <= q at the segment mean. Ties go to the largest
/// sum of log segment lengths.
StepFit segment(const Series& y, const Acvf& acvf, double q, const IntervalSystem& sys);

}  // namespace dbacf
