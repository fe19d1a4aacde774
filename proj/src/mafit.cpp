#include "dbacf/mafit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace dbacf {

Acvf acvf_from_ma(const MaModel& model) {
  if (!(model.sigma2 > 0.0)) throw std::invalid_argument("MA model needs sigma2 > 0");
  const std::size_t m = model.theta.size();
  auto th = [&](std::size_t j) { return j == 0 ? 1.0 : model.theta[j - 1]; };
  std::vector<double> g(m + 1, 0.0);
  for (std::size_t h = 0; h <= m; ++h) {
    double s = 0.0;
    for (std::size_t j = 0; j + h <= m; ++j) s += th(j) * th(j + h);
    g[h] = model.sigma2 * s;
  }
  return Acvf(std::move(g));
}

double spectral_minimum(const Acvf& acvf, std::size_t grid_size) {
  if (grid_size < 2) grid_size = 2;
  double lo = INFINITY;
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double lam = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                               static_cast<double>(grid_size - 1);
    double f = acvf.gamma[0];
    for (std::size_t h = 1; h < acvf.gamma.size(); ++h) {
      f += 2.0 * acvf.gamma[h] * std::cos(static_cast<double>(h) * lam);
    }
    lo = std::min(lo, f);
  }
  return lo;
}

bool validate_acvf(const Acvf& acvf, std::size_t grid_size) {
  if (acvf.gamma.empty() || !(acvf.gamma[0] > 0.0)) return false;
  return spectral_minimum(acvf, grid_size) >= -1e-12 * acvf.gamma[0];
}

bool is_invertible(const std::vector<double>& theta) {
  // Roots of the reciprocal polynomial z^m + theta_1 z^{m-1} + ... + theta_m
  // are the inverses of the MA roots; they must lie strictly inside the disc.
  const auto m = static_cast<Eigen::Index>(theta.size());
  if (m == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) companion(0, j) = -theta[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().cwiseAbs().maxCoeff() < 1.0 - 1e-12;
}

MaModel ma_from_acvf(const Acvf& acvf, int max_iter, double tol) {
  if (acvf.gamma.empty() || !(acvf.gamma[0] > 0.0)) {
    throw std::domain_error("ma_from_acvf: gamma_0 must be positive");
  }
  const double g0 = acvf.gamma[0];
  const double smin = spectral_minimum(acvf);
  if (smin < -1e-12 * g0) {
    throw std::domain_error(
        fmt::format("ma_from_acvf: negative spectral density (min {:.3e})", smin));
  }

  const std::size_t q = acvf.order();
  MaModel out;
  out.near_boundary = smin <= 1e-6 * g0;
  if (q == 0) {
    out.sigma2 = g0;
    return out;
  }

  // theta[k][i] = theta_{k,i}, i = 1..q; coefficients beyond lag q vanish
  // for an MA(q) autocovariance, so only the last q rows are ever read.
  const auto steps = static_cast<std::size_t>(std::max(max_iter, 1));
  std::vector<std::vector<double>> theta(steps + 1, std::vector<double>(q + 1, 0.0));
  std::vector<double> v(steps + 1, 0.0);
  v[0] = g0;

  auto coef = [&](std::size_t k, std::size_t i) { return i >= 1 && i <= q ? theta[k][i] : 0.0; };

  double change = INFINITY;
  std::size_t k = 1;
  for (; k <= steps; ++k) {
    const std::size_t j0 = k > q ? k - q : 0;
    for (std::size_t j = j0; j < k; ++j) {
      double s = acvf.at(static_cast<long>(k - j));
      const std::size_t i0 = std::max(j0, j > q ? j - q : std::size_t{0});
      for (std::size_t i = i0; i < j; ++i) s -= coef(j, j - i) * coef(k, k - i) * v[i];
      theta[k][k - j] = s / v[j];
    }
    double vk = g0;
    for (std::size_t j = j0; j < k; ++j) {
      const double t = theta[k][k - j];
      vk -= t * t * v[j];
    }
    if (!(vk > 0.0)) {
      throw ConvergenceError(fmt::format(
          "ma_from_acvf: innovation variance collapsed at step {} (v = {:.3e})", k, vk));
    }
    v[k] = vk;

    if (k > q) {
      change = std::abs(v[k] - v[k - 1]) / g0;
      for (std::size_t i = 1; i <= q; ++i) {
        change = std::max(change, std::abs(theta[k][i] - theta[k - 1][i]));
      }
      if (change <= tol) break;
    }
  }

  const std::size_t last = std::min(k, steps);
  out.iterations = static_cast<int>(last);
  out.converged = change <= tol;
  out.theta.assign(theta[last].begin() + 1, theta[last].end());
  out.sigma2 = v[last];

  const Acvf back = acvf_from_ma(out);
  for (std::size_t h = 0; h <= q; ++h) {
    out.residual = std::max(out.residual, std::abs(back.gamma[h] - acvf.gamma[h]));
  }
  out.invertible = is_invertible(out.theta);

  if (!out.converged && !out.near_boundary) {
    throw ConvergenceError(fmt::format(
        "ma_from_acvf: no convergence after {} iterations (last change {:.3e}, residual {:.3e}, "
        "spectral min {:.3e})",
        last, change, out.residual, smin));
  }
  return out;
}

}  // namespace dbacf
