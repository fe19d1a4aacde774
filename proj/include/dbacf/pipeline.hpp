#pragma once

// End-to-end segmentation: estimate the autocovariance, repair it if it is
// not a valid m-dependent covariance, fit the MA model, simulate the null
// quantile and segment.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "dbacf/estimators.hpp"
#include "dbacf/jusd.hpp"
#include "dbacf/mafit.hpp"
#include "dbacf/projection.hpp"
#include "dbacf/rng.hpp"

namespace dbacf {

struct PipelineOptions {
  std::size_t m = 0;
  double alpha = 0.05;
  std::size_t reps = 1000;
  std::uint64_t seed = rng::kDefaultSeed;
  IntervalMode intervals = IntervalMode::dyadic;
  std::optional<double> q;     ///< skip the simulation and use this threshold
  std::size_t proj_dim = 0;    ///< 0: min(n, 8(m+1))
  double proj_tol = kDefaultProjectionTol;
  int proj_max_iter = kDefaultProjectionMaxIter;
  int ma_max_iter = kDefaultMaMaxIter;
  double ma_tol = kDefaultMaTol;
  unsigned workers = 0;
};

struct PipelineResult {
  StepFit fit;
  AcvfEstimate estimate;
  Acvf acvf_used;
  MaModel model;  ///< fitted only when the quantile is simulated
  bool projected = false;
  std::optional<ProjectionReport> projection;
};

/// Throws std::domain_error when the estimate cannot be turned into a valid
/// autocovariance.
PipelineResult segment_pipeline(const Series& y, const PipelineOptions& opts);

}  // namespace dbacf
