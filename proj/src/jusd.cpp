#include "dbacf/jusd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dbacf/rng.hpp"
#include "dbacf/sim.hpp"

namespace dbacf {
namespace {

std::vector<double> prefix_sums(const Series& y) {
  std::vector<double> p(y.size() + 1, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) p[k + 1] = p[k] + y[k];
  return p;
}

void check_interval(const Series& y, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > y.size()) {
    throw std::domain_error("interval (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside [1, n]");
  }
}

// VAR(S) indexed by length, for every length up to n.
std::vector<double> variance_table(const Acvf& acvf, std::size_t n) {
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t len = 1; len <= n; ++len) {
    v[len] = partial_sum_variance(acvf, len);
    if (!(v[len] > 0.0)) {
      throw std::domain_error("partial-sum variance is not positive at length " +
                              std::to_string(len));
    }
  }
  return v;
}

double max_stat(const std::vector<double>& prefix, double mu, const std::vector<double>& var,
                const IntervalSystem& sys) {
  double best = 0.0;
  for (const auto& iv : sys.intervals) {
    const std::size_t len = iv.j - iv.i + 1;
    const double c = prefix[iv.j] - prefix[iv.i - 1] - static_cast<double>(len) * mu;
    best = std::max(best, c * c / var[len]);
  }
  return best;
}

}  // namespace

IntervalMode parse_interval_mode(std::string_view s) {
  if (s == "full") return IntervalMode::full;
  if (s == "dyadic") return IntervalMode::dyadic;
  throw std::invalid_argument("unknown interval mode '" + std::string(s) + "'");
}

std::string_view interval_mode_name(IntervalMode mode) noexcept {
  return mode == IntervalMode::full ? "full" : "dyadic";
}

double partial_sum_variance(const Acvf& acvf, std::size_t len) {
  if (len < 1) throw std::domain_error("partial_sum_variance: len must be >= 1");
  double v = static_cast<double>(len) * acvf.gamma.at(0);
  for (std::size_t k = 1; k < acvf.gamma.size() && k < len; ++k) {
    v += 2.0 * static_cast<double>(len - k) * acvf.gamma[k];
  }
  return v;
}

double local_stat(const Series& y, std::size_t i, std::size_t j, double mu, const Acvf& acvf) {
  check_interval(y, i, j);
  const std::size_t len = j - i + 1;
  double s = 0.0;
  for (std::size_t k = i - 1; k < j; ++k) s += y[k];
  const double c = s - static_cast<double>(len) * mu;
  return c * c / partial_sum_variance(acvf, len);
}

IntervalSystem build_intervals(std::size_t n, IntervalMode mode) {
  if (n < 1) throw std::domain_error("build_intervals: n must be >= 1");
  IntervalSystem sys;
  sys.n = n;
  sys.mode = mode;
  if (mode == IntervalMode::full) {
    sys.intervals.reserve(n * (n + 1) / 2);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) sys.intervals.push_back({i, j});
    }
    return sys;
  }
  for (std::size_t len = 1; len <= n; len *= 2) {
    const std::size_t step = std::max<std::size_t>(1, len / 2);
    for (std::size_t i = 1; i + len - 1 <= n; i += step) sys.intervals.push_back({i, i + len - 1});
  }
  std::sort(sys.intervals.begin(), sys.intervals.end(),
            [](const Interval& a, const Interval& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  return sys;
}

double multiscale_stat(const Series& y, double mu, const Acvf& acvf, const IntervalSystem& sys) {
  if (sys.n != y.size()) throw std::invalid_argument("interval system built for another n");
  return max_stat(prefix_sums(y), mu, variance_table(acvf, y.size()), sys);
}

std::vector<double> null_sample(const MaModel& model, std::size_t n, std::size_t reps,
                                std::uint64_t seed, const IntervalSystem& sys, unsigned workers) {
  if (sys.n != n) throw std::invalid_argument("interval system built for another n");
  const std::vector<double> var = variance_table(acvf_from_ma(model), n);
  std::vector<double> stats(reps);
  rng::parallel_for(
      reps,
      [&](std::size_t r) {
        const Series eps = gen_ma(model, n, rng::stream_seed(seed, r));
        stats[r] = max_stat(prefix_sums(eps), 0.0, var, sys);
      },
      workers);
  return stats;
}

double upper_quantile(std::vector<double> sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (sample.empty()) throw std::domain_error("empty sample");
  std::sort(sample.begin(), sample.end());
  const double pos = (1.0 - alpha) * static_cast<double>(sample.size());
  auto k = static_cast<std::size_t>(std::ceil(pos - 1e-9));
  k = std::clamp<std::size_t>(k, 1, sample.size());
  return sample[k - 1];
}

double null_quantile(const MaModel& model, std::size_t n, double alpha, std::size_t reps,
                     std::uint64_t seed, const IntervalSystem& sys, unsigned workers) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (reps < 100) throw std::domain_error("null_quantile needs reps >= 100");
  return upper_quantile(null_sample(model, n, reps, seed, sys, workers), alpha);
}

StepFit segment(const Series& y, const Acvf& acvf, double q, const IntervalSystem& sys) {
  if (!(q > 0.0)) throw std::domain_error("segment: q must be positive");
  const std::size_t n = y.size();
  if (sys.n != n) throw std::invalid_argument("interval system built for another n");

  const std::vector<double> prefix = prefix_sums(y);
  const std::vector<double> var = variance_table(acvf, n);

  // Each interval confines the level of a segment containing it to
  // [(S - sqrt(qV))/L, (S + sqrt(qV))/L]. Per start index, intervals are kept
  // sorted by end with running max/min of the bounds.
  std::vector<std::size_t> first(n + 2, 0);
  for (const auto& iv : sys.intervals) ++first[iv.i + 1];
  for (std::size_t i = 1; i <= n + 1; ++i) first[i] += first[i - 1];
  std::vector<std::size_t> ends(sys.intervals.size());
  std::vector<double> lo(sys.intervals.size()), hi(sys.intervals.size());
  {
    std::vector<std::size_t> fill(first.begin(), first.end());
    for (const auto& iv : sys.intervals) {
      const std::size_t len = iv.j - iv.i + 1;
      const double s = prefix[iv.j] - prefix[iv.i - 1];
      const double r = std::sqrt(q * var[len]);
      const std::size_t slot = fill[iv.i]++;
      ends[slot] = iv.j;
      lo[slot] = (s - r) / static_cast<double>(len);
      hi[slot] = (s + r) / static_cast<double>(len);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = first[i] + 1; k < first[i + 1]; ++k) {
      if (ends[k] < ends[k - 1]) throw std::invalid_argument("interval system is not sorted");
      lo[k] = std::max(lo[k], lo[k - 1]);
      hi[k] = std::min(hi[k], hi[k - 1]);
    }
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> segs(n + 1, kNone);
  std::vector<double> score(n + 1, -INFINITY);
  std::vector<std::size_t> from(n + 1, 0);
  segs[0] = 0;
  score[0] = 0.0;

  for (std::size_t e = 1; e <= n; ++e) {
    double LO = -INFINITY;
    double HI = INFINITY;
    for (std::size_t s = e; s >= 1; --s) {
      const auto b = ends.begin() + static_cast<std::ptrdiff_t>(first[s]);
      const auto t = ends.begin() + static_cast<std::ptrdiff_t>(first[s + 1]);
      const auto it = std::upper_bound(b, t, e);
      if (it != b) {
        const auto k = static_cast<std::size_t>(it - ends.begin()) - 1;
        LO = std::max(LO, lo[k]);
        HI = std::min(HI, hi[k]);
      }
      if (LO > HI) break;
      const auto len = static_cast<double>(e - s + 1);
      const double mean = (prefix[e] - prefix[s - 1]) / len;
      if (mean >= LO && mean <= HI && segs[s - 1] != kNone) {
        const std::size_t cand = segs[s - 1] + 1;
        const double sc = score[s - 1] + std::log(len);
        if (cand < segs[e] || (cand == segs[e] && sc > score[e])) {
          segs[e] = cand;
          score[e] = sc;
          from[e] = s - 1;
        }
      }
    }
    if (segs[e] == kNone) {
      throw std::runtime_error("segment: no feasible segmentation ending at " + std::to_string(e));
    }
  }

  StepFit fit;
  fit.quantile_used = q;
  std::vector<std::size_t> cuts;
  for (std::size_t e = n; e > 0; e = from[e]) cuts.push_back(from[e]);
  std::reverse(cuts.begin(), cuts.end());
  cuts.push_back(n);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const std::size_t a = cuts[k];
    const std::size_t b = cuts[k + 1];
    double sum = 0.0;
    for (std::size_t k2 = a; k2 < b; ++k2) sum += y[k2];
    fit.levels.push_back(sum / static_cast<double>(b - a));
    if (k > 0) fit.changepoints.push_back(a + 1);
  }
  fit.k_hat = fit.changepoints.size();
  return fit;
}

}  // namespace dbacf
