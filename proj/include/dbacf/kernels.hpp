#pragma once

// Arithmetic inner loops with a portable scalar reference and vectorised
// variants. The active implementation is chosen once at startup from the CPU
// features (override with DBACF_ISA=scalar|avx2 or set_isa()).

#include <cstddef>
#include <span>
#include <string_view>

namespace dbacf::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// Currently dispatched implementation.
Isa active_isa() noexcept;
/// Force an implementation; throws std::invalid_argument if unsupported here.
void set_isa(Isa isa);

/// sum_{i < n - 2 gap} (y_i - (1+d) y_{i+gap} + d y_{i+2gap})^2
double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d);
/// sum_{i < n - gap} (y_i - y_{i+gap})^2
double sum_sq_diff(std::span<const double> y, std::size_t gap);
/// sum_i a_i b_i
double dot(std::span<const double> a, std::span<const double> b);
/// sum_i (a_i - b_i)^2
double sq_distance(std::span<const double> a, std::span<const double> b);

// Direct entry points for equivalence testing.
namespace scalar {
double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d);
double sum_sq_diff(std::span<const double> y, std::size_t gap);
double dot(std::span<const double> a, std::span<const double> b);
double sq_distance(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d);
double sum_sq_diff(std::span<const double> y, std::size_t gap);
double dot(std::span<const double> a, std::span<const double> b);
double sq_distance(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

}  // namespace dbacf::kernels
