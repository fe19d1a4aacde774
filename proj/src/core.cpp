#include "dbacf/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dbacf {

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("series must contain at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("series contains a non-finite value");
  }
}

Series Series::scaled(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return Series(std::move(out));
}

Series Series::shifted(double c) const {
  std::vector<double> out(values_);
  for (double& v : out) v += c;
  return Series(std::move(out));
}

Series Series::operator+(const Series& other) const {
  if (other.size() != size()) throw std::invalid_argument("series length mismatch");
  std::vector<double> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
  return Series(std::move(out));
}

StepSignal::StepSignal(std::vector<double> taus, std::vector<double> levels)
    : taus_(std::move(taus)), levels_(std::move(levels)) {
  if (levels_.size() != taus_.size() + 1) {
    throw std::invalid_argument("step signal needs exactly one more level than change points");
  }
  double prev = 0.0;
  for (double t : taus_) {
    if (!(t > prev) || !(t < 1.0)) {
      throw std::invalid_argument("change-point fractions must be strictly increasing in (0,1)");
    }
    prev = t;
  }
  for (std::size_t j = 0; j + 1 < levels_.size(); ++j) {
    if (levels_[j] == levels_[j + 1]) {
      throw std::invalid_argument("adjacent levels must differ");
    }
  }
  for (double a : levels_) {
    if (!std::isfinite(a)) throw std::invalid_argument("levels must be finite");
  }
}

Acvf::Acvf(std::vector<double> g) : gamma(std::move(g)) {
  if (gamma.empty()) throw std::invalid_argument("acvf needs at least gamma_0");
}

double Acvf::at(long h) const noexcept {
  const auto lag = static_cast<std::size_t>(h < 0 ? -h : h);
  return lag < gamma.size() ? gamma[lag] : 0.0;
}

Acvf Acvf::scaled(double c) const {
  Acvf out(*this);
  for (double& g : out.gamma) g *= c;
  return out;
}

std::vector<std::size_t> change_indices(const StepSignal& signal, std::size_t n) {
  std::vector<std::size_t> idx;
  idx.reserve(signal.taus().size());
  for (double t : signal.taus()) {
    idx.push_back(static_cast<std::size_t>(std::floor(static_cast<double>(n) * t)));
  }
  return idx;
}

Series sample_signal(const StepSignal& signal, std::size_t n) {
  if (n < signal.segments()) throw std::invalid_argument("n smaller than the number of segments");
  const auto idx = change_indices(signal, n);
  // segment 0 covers 1..t_1-1, segment j covers t_j..t_{j+1}-1, the last one ends at n
  std::size_t prev = 1;
  for (std::size_t t : idx) {
    if (t <= prev) {
      throw std::invalid_argument("n = " + std::to_string(n) + " leaves an empty segment");
    }
    prev = t;
  }
  if (prev > n) throw std::invalid_argument("last segment is empty");

  std::vector<double> f(n);
  std::size_t seg = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    while (seg < idx.size() && i >= idx[seg]) ++seg;
    f[i - 1] = signal.levels()[seg];
  }
  return Series(std::move(f));
}

double quadratic_variation(const StepSignal& signal) noexcept {
  const auto& a = signal.levels();
  double jk = 0.0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) {
    const double jump = a[j + 1] - a[j];
    jk += jump * jump;
  }
  return jk;
}

bool separation_ok(const StepSignal& signal, std::size_t n, std::size_t m) noexcept {
  const double bound = 4.0 * static_cast<double>(m + 1) / static_cast<double>(n);
  double prev = 0.0;
  for (double t : signal.taus()) {
    if (!(t - prev > bound)) return false;
    prev = t;
  }
  return 1.0 - prev > bound;
}

}  // namespace dbacf
