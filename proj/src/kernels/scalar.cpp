#include "dbacf/kernels.hpp"

namespace dbacf::kernels::scalar {

double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d) {
  if (y.size() <= 2 * gap) return 0.0;
  const std::size_t count = y.size() - 2 * gap;
  const double c1 = 1.0 + d;
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double b = y[i] - c1 * y[i + gap] + d * y[i + 2 * gap];
    acc += b * b;
  }
  return acc;
}

double sum_sq_diff(std::span<const double> y, std::size_t gap) {
  if (y.size() <= gap) return 0.0;
  const std::size_t count = y.size() - gap;
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double b = y[i] - y[i + gap];
    acc += b * b;
  }
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    acc += t * t;
  }
  return acc;
}

}  // namespace dbacf::kernels::scalar
