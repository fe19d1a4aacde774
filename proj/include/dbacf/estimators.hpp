#pragma once

// Difference-based autocovariance estimators for regression with m-dependent
// errors. gamma_0 uses second-order differences of gap m+1 with free weight d;
// lag h estimates subtract the ordinary gap-h difference estimator.

#include <cstddef>
#include <vector>

#include "dbacf/core.hpp"

namespace dbacf {

/// Which root of the zero-bias quadratic to use on the branch 3h >= 2(m+1).
/// The two roots are reciprocal; `smaller` lies in (0, 1].
enum class WeightRoot { smaller, larger };

struct AcvfEstimate {
  Acvf acvf;
  /// d used per lag, index 0 is the gamma_0 weight.
  std::vector<double> weights_used;
  std::size_t n = 0;
};

/// (1 / (2(n-h))) sum_{i=1}^{n-h} (y_i - y_{i+h})^2. Requires 1 <= h < n.
double ordinary_diff(const Series& y, std::size_t h);

/// Second-order gap-(m+1) variance estimator. Requires n > 2(m+1).
double gamma0_hat(const Series& y, std::size_t m, double d);

/// gamma0_hat(y, m, d) - ordinary_diff(y, h) for 1 <= h <= m.
double gammah_hat(const Series& y, std::size_t m, std::size_t h, double d);

/// Bias-optimal weight d_{h,m}: 1 when 3h < 2(m+1) (including h = 0),
/// otherwise a root of (m+1-h) d^2 - h d + (m+1-h) = 0.
double optimal_weight(std::size_t m, std::size_t h, WeightRoot root = WeightRoot::smaller);

/// gamma_0 with d = 1 and gamma_h with d = optimal_weight(m, h).
AcvfEstimate dbacf(const Series& y, std::size_t m, WeightRoot root = WeightRoot::smaller);

/// Same estimator family with a single fixed weight for every lag
/// (d = 0 is the adapted Rice variant, d = 1 the Herrmann-type variant).
AcvfEstimate dbacf_fixed(const Series& y, std::size_t m, double d);

/// rho_h = gamma_h / gamma_0. Throws std::domain_error when gamma_0 <= 0.
std::vector<double> acf_from_estimate(const AcvfEstimate& e);

}  // namespace dbacf
