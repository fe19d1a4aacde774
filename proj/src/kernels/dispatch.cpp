#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dbacf/kernels.hpp"

namespace dbacf::kernels {
namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("DBACF_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DBACF_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

#if defined(DBACF_HAVE_AVX2)
#define DBACF_DISPATCH(fn, ...)                                             \
  return active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define DBACF_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d) {
  DBACF_DISPATCH(sum_sq_second_diff, y, gap, d);
}

double sum_sq_diff(std::span<const double> y, std::size_t gap) {
  DBACF_DISPATCH(sum_sq_diff, y, gap);
}

double dot(std::span<const double> a, std::span<const double> b) { DBACF_DISPATCH(dot, a, b); }

double sq_distance(std::span<const double> a, std::span<const double> b) {
  DBACF_DISPATCH(sq_distance, a, b);
}

#undef DBACF_DISPATCH

#if !defined(DBACF_HAVE_AVX2)
namespace avx2 {
// Not built for this target; isa_supported(Isa::avx2) is false so these are
// reachable only through direct calls, which fall back to the reference.
double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d) {
  return scalar::sum_sq_second_diff(y, gap, d);
}
double sum_sq_diff(std::span<const double> y, std::size_t gap) { return scalar::sum_sq_diff(y, gap); }
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double sq_distance(std::span<const double> a, std::span<const double> b) {
  return scalar::sq_distance(a, b);
}
}  // namespace avx2
#endif

}  // namespace dbacf::kernels
