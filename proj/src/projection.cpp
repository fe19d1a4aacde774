#include "dbacf/projection.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "dbacf/kernels.hpp"

namespace dbacf {
namespace {

std::span<const double> flat(const Eigen::MatrixXd& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

Eigen::MatrixXd psd_part(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
}

std::vector<double> diagonal_means(const Eigen::MatrixXd& a, std::size_t m) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<double> row(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
      s += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + k));
    }
    row[k] = s / static_cast<double>(n - k);
  }
  return row;
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return eig.eigenvalues().minCoeff();
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw std::invalid_argument("matrix must be square");
  if (a_.rows() == 0) throw std::invalid_argument("matrix must be non-empty");
  if (!a_.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  a_ = 0.5 * (a_ + a_.transpose()).eval();
}

BandedToeplitz::BandedToeplitz(std::size_t n_, std::vector<double> row)
    : n(n_), m(row.empty() ? 0 : row.size() - 1), first_row(std::move(row)) {
  if (first_row.empty()) throw std::invalid_argument("first row must be non-empty");
  if (m + 1 > n) throw std::invalid_argument("band m must satisfy m <= n - 1");
}

Eigen::MatrixXd BandedToeplitz::dense() const {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn, nn);
  for (std::size_t k = 0; k <= m; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(i + k);
      a(r, c) = first_row[k];
      a(c, r) = first_row[k];
    }
  }
  return a;
}

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return std::sqrt(kernels::sq_distance(flat(a), flat(b)));
}

double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return kernels::dot(flat(a), flat(b));
}

SymMatrix project_psd(const SymMatrix& a) { return SymMatrix(psd_part(a.matrix())); }

BandedToeplitz project_toeplitz_banded(const SymMatrix& a, std::size_t m) {
  if (m + 1 > a.size()) throw std::invalid_argument("band m must satisfy m <= n - 1");
  return BandedToeplitz(a.size(), diagonal_means(a.matrix(), m));
}

ProjectionResult near_psd_toeplitz(const SymMatrix& a, std::size_t m, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (m + 1 > a.size()) throw std::invalid_argument("band m must satisfy m <= n - 1");

  const std::size_t n = a.size();
  ProjectionResult out;
  Eigen::MatrixXd p = a.matrix();
  Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(p.rows(), p.cols());
  BandedToeplitz current(n, diagonal_means(p, m));

  for (int k = 1; k <= max_iter; ++k) {
    const Eigen::MatrixXd r = p - correction;
    const Eigen::MatrixXd x = psd_part(r);
    correction = x - r;
    current = BandedToeplitz(n, diagonal_means(x, m));
    Eigen::MatrixXd next = current.dense();

    out.report.iterations = k;
    out.report.final_delta = frobenius_distance(next, p);
    out.report.final_gap = frobenius_distance(next, x);
    out.report.gap_history.push_back(out.report.final_gap);
    p = std::move(next);
    if (out.report.final_delta <= tol && out.report.final_gap <= tol) {
      out.report.converged = true;
      break;
    }
  }
  // P_k is within final_gap of the PSD cone; lifting the diagonal by the
  // remaining negative mass puts it in the intersection exactly.
  const double lam = min_eigenvalue(p);
  if (lam < 0.0) {
    current.first_row[0] -= lam;
    p = current.dense();
    out.report.min_eigenvalue = min_eigenvalue(p);
  } else {
    out.report.min_eigenvalue = lam;
  }
  out.matrix = std::move(current);
  return out;
}

BandedToeplitz toeplitz_from_acvf(const Acvf& acvf, std::size_t n) {
  if (acvf.order() + 1 > n) throw std::invalid_argument("need n >= m + 1");
  return BandedToeplitz(n, acvf.gamma);
}

ProjectionResult covariance_matrix_estimate(const AcvfEstimate& e, std::size_t n, double tol,
                                            int max_iter) {
  const BandedToeplitz start = toeplitz_from_acvf(e.acvf, n);
  return near_psd_toeplitz(start.sym(), start.m, tol, max_iter);
}

}  // namespace dbacf
