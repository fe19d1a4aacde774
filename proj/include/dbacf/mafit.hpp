#pragma once

// MA(m) models: exact autocovariance, spectral validity of an autocovariance
// and an invertible MA fit by the innovations algorithm.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbacf/core.hpp"

namespace dbacf {

/// eps_i = sum_{j=0}^m theta_j delta_{i-j}, theta_0 = 1, Var(delta) = sigma2.
struct MaModel {
  std::vector<double> theta;
  double sigma2 = 1.0;

  // Fit diagnostics; defaults describe a user-supplied model.
  bool invertible = true;
  bool near_boundary = false;  ///< spectral minimum within 1e-6 gamma_0 of zero
  bool converged = true;
  int iterations = 0;
  double residual = 0.0;  ///< max-norm roundtrip error of the fitted acvf

  std::size_t order() const noexcept { return theta.size(); }
};

/// Raised when the innovations recursion fails to settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// gamma_h = sigma2 sum_{j=0}^{m-h} theta_j theta_{j+h}.
Acvf acvf_from_ma(const MaModel& model);

/// min over a grid of [-pi, pi] of gamma_0 + 2 sum_h gamma_h cos(h lambda).
double spectral_minimum(const Acvf& acvf, std::size_t grid_size = 4097);

/// True iff gamma_0 > 0 and the spectral minimum is >= -1e-12 gamma_0.
bool validate_acvf(const Acvf& acvf, std::size_t grid_size = 4097);

/// All roots of 1 + theta_1 z + ... + theta_m z^m lie outside the unit circle.
bool is_invertible(const std::vector<double>& theta);

inline constexpr int kDefaultMaMaxIter = 200;
inline constexpr double kDefaultMaTol = 1e-12;

/// Innovations algorithm run until the coefficients change by <= tol (relative
/// to gamma_0 for the innovation variance). Throws std::domain_error on a
/// negative spectral density and ConvergenceError when iterations run out,
/// except near the boundary, where the last iterate is returned with
/// converged = false.
MaModel ma_from_acvf(const Acvf& acvf, int max_iter = kDefaultMaMaxIter,
                     double tol = kDefaultMaTol);

}  // namespace dbacf
