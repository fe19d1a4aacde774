#pragma once

// Nearest symmetric positive-semidefinite (m+1)-banded Toeplitz matrix in the
// Frobenius norm, computed by alternating projections with Dykstra's
// correction, and the covariance-matrix estimator built on it.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dbacf/core.hpp"
#include "dbacf/estimators.hpp"

namespace dbacf {

class SymMatrix {
 public:
  /// Throws std::invalid_argument unless square and symmetric to 1e-12.
  explicit SymMatrix(Eigen::MatrixXd a);

  std::size_t size() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return a_; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Eigen::MatrixXd a_;
};

/// n x n symmetric Toeplitz matrix, zero beyond the m-th off-diagonal,
/// stored by the first m+1 entries of its first row.
struct BandedToeplitz {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> first_row;

  BandedToeplitz() = default;
  BandedToeplitz(std::size_t n_, std::vector<double> row);

  Eigen::MatrixXd dense() const;
  SymMatrix sym() const { return SymMatrix(dense()); }
};

struct ProjectionReport {
  int iterations = 0;
  double final_delta = 0.0;  ///< ||P_k - P_{k-1}||_F in the last cycle
  double final_gap = 0.0;    ///< ||P_k - X_k||_F, bounds the PSD violation of P_k
  bool converged = false;
  double min_eigenvalue = 0.0;
  std::vector<double> gap_history;  ///< ||P_k - X_k||_F per cycle
};

struct ProjectionResult {
  BandedToeplitz matrix;
  ProjectionReport report;
};

inline constexpr double kDefaultProjectionTol = 1e-10;
inline constexpr int kDefaultProjectionMaxIter = 10000;

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Q diag(max(lambda, 0)) Q^T.
SymMatrix project_psd(const SymMatrix& a);

/// Diagonal averaging t_k = (1/(n-k)) sum_i a_{i,i+k} for k <= m.
BandedToeplitz project_toeplitz_banded(const SymMatrix& a, std::size_t m);

/// Dykstra iteration started at `a`; returns the Toeplitz-feasible iterate P_k,
/// with its diagonal raised by max(0, -lambda_min(P_k)) (at most tol).
/// Stops when both ||P_k - P_{k-1}||_F and ||P_k - X_k||_F are <= tol.
ProjectionResult near_psd_toeplitz(const SymMatrix& a, std::size_t m,
                                   double tol = kDefaultProjectionTol,
                                   int max_iter = kDefaultProjectionMaxIter);

/// Toeplitz embedding of an autocovariance into an n x n matrix.
BandedToeplitz toeplitz_from_acvf(const Acvf& acvf, std::size_t n);

/// Projection of the embedded estimate onto the PSD banded Toeplitz cone.
ProjectionResult covariance_matrix_estimate(const AcvfEstimate& e, std::size_t n,
                                            double tol = kDefaultProjectionTol,
                                            int max_iter = kDefaultProjectionMaxIter);

}  // namespace dbacf
