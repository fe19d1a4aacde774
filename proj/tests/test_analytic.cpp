#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dbacf/analytic.hpp"
#include "dbacf/estimators.hpp"
#include "dbacf/mafit.hpp"
#include "dbacf/sim.hpp"

using namespace dbacf;
using namespace dbacf::analytic;
using doctest::Approx;

namespace {

template <class F>
double grid_argmin(F f, double lo = -3.0, double hi = 3.0, double step = 1e-3) {
  double best_d = lo, best = f(lo);
  const auto steps = static_cast<int>(std::lround((hi - lo) / step));
  for (int k = 1; k <= steps; ++k) {
    const double d = lo + k * step;
    const double v = f(d);
    if (v < best) {
      best = v;
      best_d = d;
    }
  }
  return best_d;
}

// Autocovariance of a random MA(m) process (always a valid acvf).
Acvf random_acvf(std::size_t m, std::mt19937_64& eng, bool nonneg = false) {
  std::uniform_real_distribution<double> u(nonneg ? 0.0 : -0.8, 0.8);
  MaModel model;
  for (std::size_t j = 0; j < m; ++j) model.theta.push_back(u(eng));
  model.sigma2 = 0.5 + std::abs(u(eng));
  return acvf_from_ma(model);
}

// Signal differences delta_i(d) = f_i - (1+d) f_{i+g} + d f_{i+2g}, i = 1..n_m.
std::vector<double> signal_diffs(const Series& f, std::size_t m, double d) {
  const std::size_t g = m + 1;
  std::vector<double> out(f.size() - 2 * g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - (1 + d) * f[i + g] + d * f[i + 2 * g];
  return out;
}

// Gaussian variance of gamma0_hat by summing all pairwise covariances:
// Var(sum (delta_i + eta_i)^2) = sum_ij [2 Psi(i-j)^2 + 4 delta_i delta_j Psi(i-j)].
double brute_var(const std::vector<double>& delta, std::size_t m, double d, const Acvf& g) {
  const std::size_t nm = delta.size();
  double v = 0.0;
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      const std::size_t r = i > j ? i - j : j - i;
      const double p = psi(m, d, g, r);
      v += 2.0 * p * p + 4.0 * delta[i] * delta[j] * p;
    }
  }
  const double den = 2.0 * static_cast<double>(nm) * (1 + d + d * d);
  return v / (den * den);
}

}  // namespace

TEST_CASE("q0 examples") {
  CHECK(q0(1, 1.0) == Approx(2.0 / 3.0));
  for (std::size_t m = 1; m <= 8; ++m) {
    CHECK(q0(m, 1e9) == Approx((m + 1) / 2.0));
    CHECK(q0(m, -1e9) == Approx((m + 1) / 2.0));
    const double d = grid_argmin([m](double x) { return q0(m, x); });
    CHECK(d == Approx(1.0).epsilon(1e-9));
    CHECK(q0(m, 1.0) == Approx((m + 1) / 3.0));
  }
}

TEST_CASE("bias_gamma0 examples") {
  CHECK(bias_gamma0(3, 0.4, 0.0, 50) == 0.0);
  CHECK(bias_gamma0(1, 1.0, 4.0, 40) == Approx(2.0 / 27.0));
  CHECK(bias_gamma0(2, 0.0, 204.0, 1600) == Approx(1.5 * 204.0 / 1594.0));
  CHECK_THROWS_AS(bias_gamma0(2, 1.0, 1.0, 6), std::domain_error);
}

TEST_CASE("bias_gammah examples") {
  CHECK(bias_gammah(2, 1, 1.0, 0.0, 100) == 0.0);
  CHECK(bias_gammah(1, 1, 1.0, 4.0, 40, Normalization::asymptotic) == Approx(1.0 / 60.0));
  CHECK(bias_gammah(1, 1, 1.0, 4.0, 40) == Approx(2.0 / 27.0 - 4.0 / 78.0));
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t h = 1; h <= m; ++h) {
      if (3 * h < 2 * (m + 1)) continue;
      const double d = optimal_weight(m, h);
      CHECK(std::abs(bias_gammah(m, h, d, 204.0, 1600, Normalization::asymptotic)) < 1e-13);
    }
  }
}

TEST_CASE("p1 examples") {
  CHECK(p1(1, 1.0, Acvf({1.0})) == Approx(8.0 / 9.0));
  for (double rho : {0.0, 0.2, 0.45}) {
    for (std::size_t m = 1; m <= 4; ++m) {
      std::vector<double> g(m + 1, rho);
      g[0] = 1.0;
      const Acvf a(g);
      CHECK(grid_argmin([&](double d) { return p1(m, d, a); }) == Approx(1.0).epsilon(1e-9));
    }
  }
  const Acvf edge({1.0, -0.5});
  CHECK(std::isfinite(p1(1, 1.0, edge)));
  CHECK(grid_argmin([&](double d) { return p1(1, d, edge); }) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("p1_gaussian") {
  // iid, d = 1: 4 [T_0 Psi_0 + 2 T_g Psi_g] / P^2 with T_g = -(m+1), Psi_g = -4
  for (std::size_t m = 1; m <= 4; ++m) {
    CHECK(p1_gaussian(m, 1.0, Acvf({1.0})) == Approx(20.0 * (m + 1) / 9.0));
  }
  std::mt19937_64 eng(4);
  for (std::size_t m = 1; m <= 4; ++m) {
    const Acvf g = random_acvf(m, eng);
    CHECK(p1_gaussian(m, 0.0, g) == Approx(p1(m, 0.0, g)).epsilon(1e-12));
  }
}

TEST_CASE("lambda_r examples") {
  std::mt19937_64 eng(3);
  for (std::size_t m = 0; m <= 5; ++m) {
    const Acvf g = random_acvf(m, eng);
    for (double d : {-1.5, 0.0, 0.5, 1.0, 2.0}) {
      for (std::size_t r = 3 * (m + 1); r < 3 * (m + 1) + 5; ++r) CHECK(lambda_r(m, d, g, r) == 0.0);
      for (std::size_t r = 1; r < 3 * (m + 1); ++r) {
        const double p = psi(m, d, g, r);
        CHECK(lambda_r(m, d, g, r) == Approx(2.0 * p * p).epsilon(1e-12).scale(1.0));
      }
    }
  }
  for (std::size_t m = 1; m <= 4; ++m) {
    CHECK(lambda_r(m, 1.0, Acvf({2.0}), m + 1) == Approx(32.0 * 4.0));
  }
  // m = 1, gamma = [1, 0.4], d = 0, r = 1: only gamma_1 and gamma_{|1-2|} = gamma_1 enter
  const double expect = 8 * 0.16 + 2 * 0.16 - 4 * (1 + 1) * 0.4 * 0.4;
  CHECK(lambda_r(1, 0.0, Acvf({1.0, 0.4}), 1) == Approx(expect));
}

TEST_CASE("p2 and p3 iid forms") {
  for (std::size_t m = 1; m <= 5; ++m) {
    CHECK(p2(m, 1.0, Acvf({1.0})) == Approx((36.0 + 32.0 + 2.0) / 18.0));
    CHECK(p3(m, 1.0, Acvf({1.0})) ==
          Approx(-(32.0 * (m + 1) + 2.0 * 2 * (m + 1)) / 36.0));
  }
  // m = 1, d = 1 iid: exact variance (140 n_m - 144) / (36 n_m^2)
  const auto b = mse_gamma0(1, 1.0, Acvf({1.0}), 0.0, 104);
  CHECK(b.var_noise + b.var_remainder == Approx((140.0 * 100 - 144) / (36.0 * 100 * 100)));
}

TEST_CASE("exact variance matches pairwise brute force") {
  std::mt19937_64 eng(11);
  for (std::size_t m = 0; m <= 3; ++m) {
    const Acvf g = random_acvf(m, eng);
    for (double d : {-1.0, 0.0, 1.0, 2.5}) {
      const std::size_t n = 80;
      const std::vector<double> zero(n - 2 * (m + 1), 0.0);
      const auto b = mse_gamma0(m, d, g, 0.0, n);
      CHECK(b.var_noise + b.var_remainder == Approx(brute_var(zero, m, d, g)).epsilon(1e-11));
    }
  }
}

TEST_CASE("signal variance term matches brute force on separated jumps") {
  std::mt19937_64 eng(12);
  for (std::size_t m = 1; m <= 3; ++m) {
    const Acvf g = random_acvf(m, eng, true);
    const StepSignal s({0.3, 0.65}, {0.0, 2.0, -1.0});
    const std::size_t n = 300;
    const Series f = sample_signal(s, n);
    for (double d : {0.0, 1.0, 2.0}) {
      const auto b = mse_gamma0(m, d, g, quadratic_variation(s), n);
      const double v = b.var_signal + b.var_noise + b.var_remainder;
      CHECK(v == Approx(brute_var(signal_diffs(f, m, d), m, d, g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("signal factor T_r by direct summation") {
  std::mt19937_64 eng(5);
  for (std::size_t m = 1; m <= 3; ++m) {
    const StepSignal s({0.2, 0.45, 0.8}, {1.0, -0.5, 2.0, 0.25});
    const std::size_t n = 400;
    REQUIRE(separation_ok(s, n, m));
    const Series f = sample_signal(s, n);
    const double jk = quadratic_variation(s);
    for (double d : {-2.0, -0.3, 0.0, 1.0, 1.7}) {
      const auto delta = signal_diffs(f, m, d);
      for (std::size_t r = 0; r <= 2 * m + 2; ++r) {
        double sr = 0.0;
        for (std::size_t i = 0; i + r < delta.size(); ++i) sr += delta[i] * delta[i + r];
        CHECK(sr == Approx(signal_factor_T(m, d, r) * jk).epsilon(1e-12).scale(1.0));
      }
    }
    CHECK(signal_factor_T(m, 0.7, 0) == Approx((m + 1) * (0.49 + 1.0)));
    CHECK(signal_factor_T(m, 0.7, 2 * (m + 1)) == 0.0);
  }
}

TEST_CASE("extended bias argmin for non-negative autocovariances") {
  std::mt19937_64 eng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep % 4);
    const Acvf g = random_acvf(m, eng, true);
    const double d = grid_argmin([&](double x) { return extended_bias_gamma0(m, x, g, 204.0, 1600); });
    CHECK(d == Approx(1.0).epsilon(1e-9));
  }
  CHECK(extended_bias_gamma0(2, 0.3, Acvf({1, 0.2, 0.1}), 0.0, 500) == 0.0);
}

TEST_CASE("mse decomposition") {
  const Acvf g({1.0, 0.4});
  const auto b = mse_gamma0(1, 1.0, g, 204.0, 2000);
  CHECK(b.total == Approx(b.bias2 + b.var_signal + b.var_noise + b.var_remainder));
  CHECK(b.total >= b.bias2);
  const auto z = mse_gamma0(1, 1.0, Acvf({1.0}), 0.0, 2000);
  CHECK(z.bias2 == 0.0);
  CHECK(z.var_signal == 0.0);
  const auto a = mse_gamma0(1, 1.0, g, 204.0, 2000, Normalization::asymptotic);
  CHECK(a.total == Approx(b.total).epsilon(0.01));
  CHECK_THROWS_AS(mse_gamma0(0, 1.0, g, 0.0, 100), std::invalid_argument);
}

TEST_CASE("F_h and V_h") {
  CHECK(f_h(Acvf({1.0, 0.4}), 1) == Approx(1.2));
  const Acvf g({1.3, 0.5, -0.2, 0.1});
  // Var(sum_{k<h} (e_k - e_{k+h})) per unit of J_K, for an isolated jump
  auto window_var = [&](long h) {
    double v = 0.0;
    for (long k = 0; k < h; ++k) {
      for (long l = 0; l < h; ++l) v += 2 * g.at(k - l) - g.at(k - l - h) - g.at(k - l + h);
    }
    return v;
  };
  CHECK(f_h(g, 1) == Approx(window_var(1)));
  // the closed form for h >= 2 is kept as stated; it exceeds the window
  // variance (iid, h = 2: 6 gamma_0 against 4 gamma_0)
  CHECK(f_h(Acvf({1.0}), 2) == Approx(6.0));
  CHECK(window_var(2) == Approx(4 * (1.3 + 0.2) + 2 * (0.5 - 0.1)));
  for (std::size_t h = 1; h <= 3; ++h) {
    CHECK(f_h(g.scaled(2.5), h) == Approx(2.5 * f_h(g, h)));
    CHECK(v_h(g.scaled(2.5), 3, h) == Approx(2.5 * v_h(g, 3, h)));
  }
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t h = 1; h <= m; ++h) {
      CHECK(v_h(Acvf({2.0}), m, h) == Approx(-2.0 * static_cast<double>(std::min(h, m + 1))));
    }
  }
}

TEST_CASE("noise variance against Monte Carlo") {
  // m = 1, gamma = [1, 0.4], d = 1, n = 2000, zero signal, 1e4 replicates
  const std::size_t n = 2000, m = 1, reps = 10000;
  MaModel model = ma_from_acvf(Acvf({1.0, 0.4}));
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const double g0 = gamma0_hat(gen_ma(model, n, 500 + r), m, 1.0);
    sum += g0;
    sumsq += g0 * g0;
  }
  const double mean = sum / reps;
  const double var = (sumsq - reps * mean * mean) / (reps - 1.0);
  const auto b = mse_gamma0(m, 1.0, Acvf({1.0, 0.4}), 0.0, n, Normalization::asymptotic);
  CHECK(var == Approx(b.var_noise + b.var_remainder).epsilon(0.05));
}
