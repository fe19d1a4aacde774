#pragma once

// Domain types shared by every module: observation series, piecewise-constant
// signals and autocovariance functions of m-dependent noise.

#include <cstddef>
#include <span>
#include <vector>

namespace dbacf {

/// A length-n vector of finite observations y_1..y_n on the grid x_i = i/n.
/// Indexing through operator[] is 0-based; documentation uses the 1-based
/// convention of the model.
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  Series scaled(double c) const;
  Series shifted(double c) const;
  Series operator+(const Series& other) const;

 private:
  std::vector<double> values_;
};

/// Piecewise-constant signal f(x) = sum_j a_j 1[tau_j, tau_{j+1})(x) with
/// tau_0 = 0 and tau_K = 1 implicit.
class StepSignal {
 public:
  StepSignal(std::vector<double> taus, std::vector<double> levels);

  static StepSignal constant(double level) { return StepSignal({}, {level}); }

  /// Number of segments K.
  std::size_t segments() const noexcept { return levels_.size(); }
  const std::vector<double>& taus() const noexcept { return taus_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

 private:
  std::vector<double> taus_;
  std::vector<double> levels_;
};

/// Autocovariance gamma_0..gamma_m of an m-dependent stationary process.
/// Lags beyond m are exactly zero. Estimates may be degenerate (gamma_0 <= 0
/// for a constant series), so positivity is checked by callers that need it.
struct Acvf {
  Acvf() = default;
  explicit Acvf(std::vector<double> g);

  std::size_t order() const noexcept { return gamma.empty() ? 0 : gamma.size() - 1; }
  /// gamma_{|h|}, zero beyond the dependence order.
  double at(long h) const noexcept;
  Acvf scaled(double c) const;

  std::vector<double> gamma;
};

/// f_i for i = 1..n; segment j is active from index floor(n tau_j) inclusive.
/// Throws std::invalid_argument when some segment would be empty.
Series sample_signal(const StepSignal& signal, std::size_t n);

/// 1-based change indices floor(n tau_j), j = 1..K-1.
std::vector<std::size_t> change_indices(const StepSignal& signal, std::size_t n);

/// J_K: sum of squared jumps between consecutive levels.
double quadratic_variation(const StepSignal& signal) noexcept;

/// Minimum gap between consecutive tau (including 0 and 1) exceeds 4(m+1)/n.
bool separation_ok(const StepSignal& signal, std::size_t n, std::size_t m) noexcept;

}  // namespace dbacf
