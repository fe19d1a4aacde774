#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dbacf/mafit.hpp"

using namespace dbacf;
using doctest::Approx;

namespace {

// Coefficients of prod_k (1 - z / r_k) for roots with |r_k| >= rmin, built
// from conjugate pairs so the polynomial is real.
std::vector<double> random_invertible(std::size_t m, std::mt19937_64& eng, double rmin = 1.25) {
  std::uniform_real_distribution<double> mod(rmin, 4.0), ang(0.0, 3.14159265358979);
  std::vector<std::complex<double>> poly{1.0};
  auto mul = [&](std::complex<double> root) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= poly[i] / root;
    }
    poly = next;
  };
  std::size_t left = m;
  while (left >= 2) {
    const auto r = std::polar(mod(eng), ang(eng));
    mul(r);
    mul(std::conj(r));
    left -= 2;
  }
  if (left == 1) mul((ang(eng) < 1.57 ? 1.0 : -1.0) * mod(eng));
  std::vector<double> theta;
  for (std::size_t i = 1; i < poly.size(); ++i) theta.push_back(poly[i].real());
  return theta;
}

double max_abs_diff(const Acvf& a, const Acvf& b) {
  double d = 0.0;
  for (std::size_t h = 0; h < a.gamma.size(); ++h) d = std::max(d, std::abs(a.gamma[h] - b.gamma[h]));
  return d;
}

}  // namespace

TEST_CASE("acvf_from_ma examples") {
  MaModel m1;
  m1.theta = {0.5};
  CHECK(acvf_from_ma(m1).gamma == std::vector<double>{1.25, 0.5});
  MaModel wn;
  wn.sigma2 = 2.0;
  CHECK(acvf_from_ma(wn).gamma == std::vector<double>{2.0});
  MaModel zeros;
  zeros.theta = {0, 0, 0};
  zeros.sigma2 = 3.0;
  CHECK(acvf_from_ma(zeros).gamma == std::vector<double>{3.0, 0, 0, 0});
}

TEST_CASE("ma_from_acvf examples") {
  const MaModel fit = ma_from_acvf(Acvf({1.25, 0.5}));
  const double rho = 0.4;
  const double oracle = (1.0 - std::sqrt(1.0 - 4.0 * rho * rho)) / (2.0 * rho);
  REQUIRE(fit.theta.size() == 1);
  CHECK(fit.theta[0] == Approx(oracle).epsilon(1e-10));
  CHECK(fit.theta[0] == Approx(0.5).epsilon(1e-10));
  CHECK(fit.sigma2 == Approx(1.0).epsilon(1e-10));
  CHECK(fit.invertible);
  CHECK_FALSE(fit.near_boundary);

  const MaModel wn = ma_from_acvf(Acvf({3.5}));
  CHECK(wn.theta.empty());
  CHECK(wn.sigma2 == 3.5);

  const Acvf g({1.0, 0.4, 0.1});
  CHECK(max_abs_diff(acvf_from_ma(ma_from_acvf(g)), g) <= 1e-8);
}

TEST_CASE("ma_from_acvf errors") {
  CHECK_THROWS_AS(ma_from_acvf(Acvf({1.0, 0.7})), std::domain_error);
  CHECK_THROWS_AS(ma_from_acvf(Acvf({0.0, 0.0})), std::domain_error);
  // boundary: spectral density touches zero, convergence is only harmonic
  const MaModel edge = ma_from_acvf(Acvf({1.0, 0.5}));
  CHECK(edge.near_boundary);
  CHECK_FALSE(edge.converged);
  CHECK(edge.residual < 1e-2);
}

TEST_CASE("validate_acvf examples") {
  CHECK(validate_acvf(Acvf({1.0, 0.5})));
  CHECK_FALSE(validate_acvf(Acvf({1.0, 0.7})));
  CHECK(validate_acvf(Acvf({1.0, 0.0, 0.0, 0.0})));
  CHECK_FALSE(validate_acvf(Acvf({0.0})));
  CHECK(spectral_minimum(Acvf({1.0, 0.5})) == Approx(0.0).scale(1.0));
}

TEST_CASE("invertibility check") {
  CHECK(is_invertible({}));
  CHECK(is_invertible({0.5}));
  CHECK_FALSE(is_invertible({2.0}));
  CHECK_FALSE(is_invertible({1.0}));
  CHECK(is_invertible({0.0, 0.0}));
}

TEST_CASE("roundtrip, homogeneity and invertibility on random models") {
  std::mt19937_64 eng(42);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep % 8);
    MaModel truth;
    truth.theta = random_invertible(m, eng);
    truth.sigma2 = 0.5 + 0.1 * rep;
    REQUIRE(is_invertible(truth.theta));
    const Acvf g = acvf_from_ma(truth);
    const MaModel fit = ma_from_acvf(g);
    CHECK(fit.converged);
    CHECK(fit.invertible);
    CHECK(max_abs_diff(acvf_from_ma(fit), g) <= 1e-8);
    for (std::size_t j = 0; j < m; ++j) CHECK(fit.theta[j] == Approx(truth.theta[j]).epsilon(1e-8).scale(1.0));
    CHECK(fit.sigma2 == Approx(truth.sigma2).epsilon(1e-8));

    const MaModel scaled = ma_from_acvf(g.scaled(7.0));
    CHECK(scaled.sigma2 == Approx(7.0 * fit.sigma2).epsilon(1e-9));
    for (std::size_t j = 0; j < m; ++j) CHECK(scaled.theta[j] == Approx(fit.theta[j]).epsilon(1e-9).scale(1.0));
  }
}
