#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dbacf/jusd.hpp"
#include "dbacf/pipeline.hpp"
#include "dbacf/sim.hpp"

using namespace dbacf;
using doctest::Approx;

namespace {

// Covariance-matrix sum oracle for VAR(S) over a window of length len.
double variance_oracle(const Acvf& g, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < len; ++j) s += g.at(static_cast<long>(i) - static_cast<long>(j));
  }
  return s;
}

// Minimal number of changepoints by exhaustive search over all segmentations
// (tiny n only): each segment must satisfy every system interval inside it.
std::size_t brute_k(const Series& y, const Acvf& g, double q, const IntervalSystem& sys) {
  const std::size_t n = y.size();
  auto ok = [&](std::size_t a, std::size_t b) {  // 1-based inclusive
    double sum = 0.0;
    for (std::size_t k = a; k <= b; ++k) sum += y[k - 1];
    const double mu = sum / static_cast<double>(b - a + 1);
    for (const auto& iv : sys.intervals) {
      if (iv.i >= a && iv.j <= b && local_stat(y, iv.i, iv.j, mu, g) > q) return false;
    }
    return true;
  };
  std::size_t best = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::size_t start = 1, cuts = 0;
    bool good = true;
    for (std::size_t b = 1; b <= n && good; ++b) {
      if (b == n || (mask >> (b - 1) & 1)) {
        good = ok(start, b);
        start = b + 1;
        if (b < n) ++cuts;
      }
    }
    if (good) best = std::min(best, cuts);
  }
  return best;
}

}  // namespace

TEST_CASE("partial_sum_variance") {
  CHECK(partial_sum_variance(Acvf({2.0, 0.3}), 1) == 2.0);
  CHECK(partial_sum_variance(Acvf({1.0, 0.4}), 3) == Approx(4.6));
  for (std::size_t len : {1u, 5u, 40u}) CHECK(partial_sum_variance(Acvf({1.5}), len) == Approx(1.5 * len));
  const Acvf g({1.0, 0.5, -0.2, 0.1});
  for (std::size_t len = 1; len <= 12; ++len) CHECK(partial_sum_variance(g, len) == Approx(variance_oracle(g, len)));
}

TEST_CASE("local_stat") {
  const Series y({1.0, 3.0, 2.0, 6.0});
  const Acvf g({1.0, 0.3});
  CHECK(local_stat(y, 1, 3, 2.0, g) == 0.0);
  CHECK(local_stat(y, 2, 4, 0.0, g) == Approx(121.0 / partial_sum_variance(g, 3)));
  const Series c(std::vector<double>(10, 4.0));
  for (std::size_t i = 1; i <= 10; ++i) CHECK(local_stat(c, i, 10, 4.0, g) == 0.0);
  CHECK_THROWS_AS(local_stat(y, 3, 2, 0.0, g), std::domain_error);
  CHECK_THROWS_AS(local_stat(y, 1, 5, 0.0, g), std::domain_error);
}

TEST_CASE("single-interval null statistic is chi-square(1)") {
  MaModel iid;
  const Acvf g({1.0});
  const int draws = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < draws; ++r) {
    const double t = local_stat(gen_ma(iid, 20, 300 + static_cast<std::uint64_t>(r)), 3, 17, 0.0, g);
    sum += t;
    sumsq += t * t;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sumsq / draws - mean * mean) / (draws - 1));
  CHECK(std::abs(mean - 1.0) <= 3.0 * se);
}

TEST_CASE("build_intervals") {
  const IntervalSystem full = build_intervals(3, IntervalMode::full);
  CHECK(full.intervals == std::vector<Interval>{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}});
  const IntervalSystem dy = build_intervals(4, IntervalMode::dyadic);
  CHECK(dy.intervals.size() == 8);
  CHECK(dy.intervals == std::vector<Interval>{{1, 1}, {1, 2}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}});
  for (std::size_t n : {100u, 1000u, 10000u}) {
    const auto s = build_intervals(n, IntervalMode::dyadic).intervals.size();
    CHECK(s <= 3 * n * static_cast<std::size_t>(std::log2(n) + 1));
    CHECK(s >= n);
  }
  CHECK(build_intervals(50, IntervalMode::dyadic).intervals == build_intervals(50, IntervalMode::dyadic).intervals);
  CHECK(parse_interval_mode("full") == IntervalMode::full);
  CHECK_THROWS_AS(parse_interval_mode("all"), std::invalid_argument);
}

TEST_CASE("null quantile order statistics and determinism") {
  MaModel model;
  model.theta = {0.4};
  const std::size_t n = 64, reps = 200;
  const IntervalSystem sys = build_intervals(n, IntervalMode::dyadic);
  const std::vector<double> sample = null_sample(model, n, reps, 5, sys);
  const double lo = *std::min_element(sample.begin(), sample.end());
  const double hi = *std::max_element(sample.begin(), sample.end());
  CHECK(null_quantile(model, n, 1.0 - 1.0 / reps, reps, 5, sys) == lo);
  CHECK(null_quantile(model, n, 1e-6, reps, 5, sys) == hi);
  CHECK(null_quantile(model, n, 0.05, reps, 5, sys, 1) == null_quantile(model, n, 0.05, reps, 5, sys, 3));
  CHECK_THROWS_AS(null_quantile(model, n, 0.0, reps, 5, sys), std::domain_error);
  CHECK_THROWS_AS(null_quantile(model, n, 0.1, 99, 5, sys), std::domain_error);
}

TEST_CASE("single-interval null quantile matches chi-square(1)") {
  MaModel iid;
  IntervalSystem one;
  one.n = 50;
  one.intervals = {{1, 50}};
  // chi2_1 upper 10% point is 1.645^2 = 2.7055
  const double q = null_quantile(iid, 50, 0.10, 10000, 8, one);
  // SE of an empirical quantile: sqrt(p(1-p)/R) / density, density of chi2_1 at 2.7055 ~ 0.0517
  const double se = std::sqrt(0.1 * 0.9 / 10000.0) / 0.0517;
  CHECK(std::abs(q - 2.7055) <= 3.0 * se);
}

TEST_CASE("null quantile is stable when doubling replicates") {
  MaModel model;
  model.theta = {0.3, 0.2};
  const std::size_t n = 128;
  const IntervalSystem sys = build_intervals(n, IntervalMode::dyadic);
  const auto small = null_sample(model, n, 1000, 17, sys);
  const auto big = null_sample(model, n, 2000, 17, sys);
  // the first 1000 replicates coincide: streams depend only on (seed, r)
  CHECK(std::equal(small.begin(), small.end(), big.begin()));
  const double q1 = upper_quantile(small, 0.05);
  const double q2 = upper_quantile(big, 0.05);
  std::mt19937_64 eng(3);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  double s = 0.0, ss = 0.0;
  const int boots = 200;
  for (int b = 0; b < boots; ++b) {
    std::vector<double> re(small.size());
    for (auto& x : re) x = small[pick(eng)];
    const double v = upper_quantile(re, 0.05);
    s += v;
    ss += v * v;
  }
  const double sd = std::sqrt(ss / boots - (s / boots) * (s / boots));
  CHECK(std::abs(q1 - q2) <= 2.0 * sd);
}

TEST_CASE("segment recovers a noiseless step exactly") {
  const StepSignal s({0.25, 0.5, 0.8}, {0.0, 2.0, -1.0, 0.5});
  const std::size_t n = 200;
  const Series f = sample_signal(s, n);
  const Acvf g({0.01, 0.004});
  for (auto mode : {IntervalMode::dyadic, IntervalMode::full}) {
    const StepFit fit = segment(f, g, 5.0, build_intervals(n, mode));
    CHECK(fit.k_hat == 3);
    CHECK(fit.changepoints == change_indices(s, n));
    REQUIRE(fit.levels.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(fit.levels[k] == s.levels()[k]);
  }
}

TEST_CASE("segment agrees with exhaustive search on tiny inputs") {
  std::mt19937_64 eng(31);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 6 + static_cast<std::size_t>(rep % 5);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = z(eng) + (i >= n / 2 ? 2.5 : 0.0);
    const Series y(v);
    const Acvf g({1.0, 0.3});
    for (auto mode : {IntervalMode::full, IntervalMode::dyadic}) {
      const IntervalSystem sys = build_intervals(n, mode);
      for (double q : {0.5, 2.0, 6.0}) {
        const StepFit fit = segment(y, g, q, sys);
        CHECK(fit.k_hat == brute_k(y, g, q, sys));
        CHECK(fit.levels.size() == fit.k_hat + 1);
      }
    }
  }
}

TEST_CASE("segment properties") {
  std::mt19937_64 eng(77);
  MaModel model;
  model.theta = {0.5, 0.2};
  const std::size_t n = 300;
  const Series f = sample_signal(StepSignal({0.3, 0.6}, {0.0, 1.5, 0.0}), n);
  const Acvf g = acvf_from_ma(model);
  const IntervalSystem sys = build_intervals(n, IntervalMode::dyadic);
  for (int rep = 0; rep < 10; ++rep) {
    const Series y = f + gen_ma(model, n, 900 + static_cast<std::uint64_t>(rep));
    std::size_t prev = n;
    for (double q : {1.0, 3.0, 6.0, 10.0, 20.0, 50.0}) {
      const StepFit fit = segment(y, g, q, sys);
      CHECK(fit.k_hat <= prev);
      prev = fit.k_hat;
    }
    const StepFit base = segment(y, g, 12.0, sys);
    const StepFit shifted = segment(y.shifted(5.0), g, 12.0, sys);
    CHECK(shifted.changepoints == base.changepoints);
    for (std::size_t k = 0; k < base.levels.size(); ++k) CHECK(shifted.levels[k] == Approx(base.levels[k] + 5.0));
    const StepFit scaled = segment(y.scaled(4.0), g.scaled(16.0), 12.0, sys);
    CHECK(scaled.changepoints == base.changepoints);
    CHECK(multiscale_stat(y.scaled(4.0), 0.0, g.scaled(16.0), sys) == multiscale_stat(y, 0.0, g, sys));

    // levels are per-segment sample means
    std::size_t a = 0;
    for (std::size_t k = 0; k <= base.k_hat; ++k) {
      const std::size_t b = k < base.k_hat ? base.changepoints[k] - 1 : n;
      double sum = 0.0;
      for (std::size_t i = a; i < b; ++i) sum += y[i];
      CHECK(base.levels[k] == sum / static_cast<double>(b - a));
      a = b;
    }
  }
  // iid acvf gives the unweighted statistic
  const Series y = f + gen_ma(MaModel{}, n, 5);
  CHECK(multiscale_stat(y, 0.0, Acvf({1.0}), sys) > 0.0);
  CHECK(local_stat(y, 3, 10, 0.1, Acvf({2.0})) == Approx(std::pow([&] {
          double s = 0.0;
          for (std::size_t i = 2; i < 10; ++i) s += y[i] - 0.1;
          return s;
        }(), 2) / 16.0));
}

TEST_CASE("pipeline on a noiseless-looking step") {
  const std::size_t n = 400;
  MaModel model;
  model.theta = {0.4};
  model.sigma2 = 0.01;
  const Series y = sample_signal(StepSignal({0.3, 0.7}, {0.0, 3.0, 1.0}), n) + gen_ma(model, n, 2);
  PipelineOptions opts;
  opts.m = 1;
  opts.reps = 200;
  const PipelineResult r = segment_pipeline(y, opts);
  CHECK(r.fit.k_hat == 2);
  CHECK(r.fit.changepoints == std::vector<std::size_t>{120, 280});
  opts.alpha = 1.5;
  CHECK_THROWS_AS(segment_pipeline(y, opts), std::domain_error);
}
