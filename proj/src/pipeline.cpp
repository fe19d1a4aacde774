#include "dbacf/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbacf {

PipelineResult segment_pipeline(const Series& y, const PipelineOptions& opts) {
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  PipelineResult out;
  out.estimate = dbacf(y, opts.m);
  out.acvf_used = out.estimate.acvf;

  if (!validate_acvf(out.acvf_used)) {
    if (!(out.acvf_used.gamma[0] > 0.0)) {
      throw std::domain_error("estimated gamma_0 is not positive; series has no noise to model");
    }
    const std::size_t dim =
        opts.proj_dim ? opts.proj_dim : std::min(y.size(), 8 * (opts.m + 1));
    if (dim < opts.m + 1) throw std::domain_error("projection dimension must be >= m + 1");
    const ProjectionResult pr =
        covariance_matrix_estimate(out.estimate, dim, opts.proj_tol, opts.proj_max_iter);
    out.acvf_used = Acvf(pr.matrix.first_row);
    out.projected = true;
    out.projection = pr.report;
    if (!validate_acvf(out.acvf_used)) {
      throw std::domain_error("autocovariance estimate has negative spectral density even after "
                              "projection");
    }
  }

  const IntervalSystem sys = build_intervals(y.size(), opts.intervals);
  double q = 0.0;
  if (opts.q) {
    q = *opts.q;
  } else {
    out.model = ma_from_acvf(out.acvf_used, opts.ma_max_iter, opts.ma_tol);
    q = null_quantile(out.model, y.size(), opts.alpha, opts.reps, opts.seed, sys, opts.workers);
  }
  out.fit = segment(y, out.acvf_used, q, sys);
  out.fit.alpha = opts.alpha;
  return out;
}

}  // namespace dbacf
