#include "dbacf/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dbacf/kernels.hpp"

namespace dbacf {

double ordinary_diff(const Series& y, std::size_t h) {
  const std::size_t n = y.size();
  if (h < 1 || h >= n) {
    throw std::domain_error("ordinary_diff: gap h=" + std::to_string(h) + " outside [1, n)");
  }
  return kernels::sum_sq_diff(y.values(), h) / (2.0 * static_cast<double>(n - h));
}

double gamma0_hat(const Series& y, std::size_t m, double d) {
  const std::size_t n = y.size();
  const std::size_t gap = m + 1;
  if (n <= 2 * gap) {
    throw std::domain_error("gamma0_hat: need n > 2(m+1), got n=" + std::to_string(n) +
                            " m=" + std::to_string(m));
  }
  const auto n_m = static_cast<double>(n - 2 * gap);
  const double weight_norm = 1.0 + d + d * d;
  return kernels::sum_sq_second_diff(y.values(), gap, d) / (2.0 * n_m * weight_norm);
}

double gammah_hat(const Series& y, std::size_t m, std::size_t h, double d) {
  if (h < 1 || h > m) {
    throw std::domain_error("gammah_hat: lag h=" + std::to_string(h) + " outside [1, m]");
  }
  return gamma0_hat(y, m, d) - ordinary_diff(y, h);
}

double optimal_weight(std::size_t m, std::size_t h, WeightRoot root) {
  if (h > m) throw std::domain_error("optimal_weight: h > m");
  if (3 * h < 2 * (m + 1)) return 1.0;
  const auto hh = static_cast<double>(h);
  const auto c = static_cast<double>(m + 1 - h);
  // h^2 - 4c^2 >= 0 exactly on this branch; clamp rounding noise at the double root
  const double disc = std::sqrt(std::max(0.0, hh * hh - 4.0 * c * c));
  return root == WeightRoot::smaller ? (hh - disc) / (2.0 * c) : (hh + disc) / (2.0 * c);
}

AcvfEstimate dbacf(const Series& y, std::size_t m, WeightRoot root) {
  AcvfEstimate e;
  e.n = y.size();
  e.weights_used.resize(m + 1);
  std::vector<double> gamma(m + 1);
  e.weights_used[0] = optimal_weight(m, 0, root);
  gamma[0] = gamma0_hat(y, m, e.weights_used[0]);
  for (std::size_t h = 1; h <= m; ++h) {
    e.weights_used[h] = optimal_weight(m, h, root);
    gamma[h] = gammah_hat(y, m, h, e.weights_used[h]);
  }
  e.acvf = Acvf(std::move(gamma));
  return e;
}

AcvfEstimate dbacf_fixed(const Series& y, std::size_t m, double d) {
  AcvfEstimate e;
  e.n = y.size();
  e.weights_used.assign(m + 1, d);
  std::vector<double> gamma(m + 1);
  gamma[0] = gamma0_hat(y, m, d);
  for (std::size_t h = 1; h <= m; ++h) gamma[h] = gamma[0] - ordinary_diff(y, h);
  e.acvf = Acvf(std::move(gamma));
  return e;
}

std::vector<double> acf_from_estimate(const AcvfEstimate& e) {
  const auto& g = e.acvf.gamma;
  if (g.empty() || !(g[0] > 0.0)) {
    throw std::domain_error("acf_from_estimate: degenerate estimate, gamma_0 <= 0");
  }
  std::vector<double> rho(g.size());
  rho[0] = 1.0;
  for (std::size_t h = 1; h < g.size(); ++h) rho[h] = g[h] / g[0];
  return rho;
}

}  // namespace dbacf
