#include "dbacf/analytic.hpp"

#include <stdexcept>

namespace dbacf::analytic {
namespace {

double weight_norm(double d) noexcept { return d * d + d + 1.0; }  // Q(d); P(d) = 2 Q(d)

void require_order(const Acvf& acvf, std::size_t m) {
  if (acvf.order() > m) {
    throw std::invalid_argument("acvf order exceeds the estimator dependence order m");
  }
  if (!(acvf.gamma[0] > 0.0)) throw std::invalid_argument("acvf needs gamma_0 > 0");
}

std::size_t n_m(std::size_t m, std::size_t n) {
  if (n <= 2 * (m + 1)) throw std::domain_error("need n > 2(m+1)");
  return n - 2 * (m + 1);
}

long lag(std::size_t a, std::size_t b) noexcept {
  return static_cast<long>(a) - static_cast<long>(b);
}

}  // namespace

double q0(std::size_t m, double d) noexcept {
  return static_cast<double>(m + 1) * (d * d + 1.0) / (2.0 * weight_norm(d));
}

double bias_gamma0(std::size_t m, double d, double jk, std::size_t n) {
  return q0(m, d) * jk / static_cast<double>(n_m(m, n));
}

double bias_gammah(std::size_t m, std::size_t h, double d, double jk, std::size_t n,
                   Normalization norm) {
  if (h < 1 || h > m) throw std::domain_error("bias_gammah: h outside [1, m]");
  const std::size_t nm = n_m(m, n);
  const auto hh = static_cast<double>(h);
  if (norm == Normalization::asymptotic) {
    return (q0(m, d) - hh / 2.0) * jk / static_cast<double>(n);
  }
  return q0(m, d) * jk / static_cast<double>(nm) - hh * jk / (2.0 * static_cast<double>(n - h));
}

double p1(std::size_t m, double d, const Acvf& acvf) {
  require_order(acvf, m);
  const double d2 = d * d;
  const double d4p1 = d2 * d2 + 1.0;
  const auto mp1 = static_cast<double>(m + 1);
  double sum = 0.0;
  for (std::size_t h = 1; h <= m; ++h) {
    const auto hh = static_cast<double>(h);
    const double q_h = (2.0 * mp1 - 3.0 * hh) * d4p1 + d2 * hh;
    sum += q_h * acvf.at(static_cast<long>(h)) / acvf.gamma[0];
  }
  const double q = weight_norm(d);
  return (2.0 * mp1 * d4p1 + 2.0 * sum) / (q * q);
}

double p1_gaussian(std::size_t m, double d, const Acvf& acvf) {
  require_order(acvf, m);
  double s = signal_factor_T(m, d, 0) * psi(m, d, acvf, 0);
  for (std::size_t r = 1; r <= 2 * m + 1; ++r) s += 2.0 * signal_factor_T(m, d, r) * psi(m, d, acvf, r);
  const double p = 2.0 * weight_norm(d);
  return 4.0 * s / (p * p * acvf.gamma[0]);
}

double psi(std::size_t m, double d, const Acvf& acvf, std::size_t r) {
  const std::size_t g = m + 1;
  const double c1 = (1.0 + d) * (1.0 + d);
  const long rr = static_cast<long>(r);
  const long gg = static_cast<long>(g);
  return 2.0 * weight_norm(d) * acvf.at(rr) - c1 * (acvf.at(rr - gg) + acvf.at(rr + gg)) +
         d * (acvf.at(rr - 2 * gg) + acvf.at(rr + 2 * gg));
}

double lambda_r(std::size_t m, double d, const Acvf& acvf, std::size_t r) {
  const std::size_t g = m + 1;
  const double g_r = acvf.at(static_cast<long>(r));
  const double g_a = acvf.at(lag(r, g));
  const double g_b = acvf.at(lag(r, 2 * g));
  const double q = weight_norm(d);
  const double dp1 = 1.0 + d;
  const double dp1_2 = dp1 * dp1;
  return 8.0 * q * q * g_r * g_r + 2.0 * dp1_2 * dp1_2 * g_a * g_a + 2.0 * d * d * g_b * g_b -
         4.0 * dp1 * (dp1_2 * dp1 + (d * d * d + d * d + d + 1.0)) * g_r * g_a -
         4.0 * d * dp1_2 * g_a * g_b;
}

double p2(std::size_t m, double d, const Acvf& acvf) {
  require_order(acvf, m);
  const double g0sq = acvf.gamma[0] * acvf.gamma[0];
  double sum = 0.0;
  for (std::size_t r = 1; r <= 3 * m + 2; ++r) sum += lambda_r(m, d, acvf, r);
  const double q = weight_norm(d);
  const double p = 2.0 * q;
  return (p * p + sum / g0sq) / (2.0 * q * q);
}

double p3(std::size_t m, double d, const Acvf& acvf) {
  require_order(acvf, m);
  const double g0sq = acvf.gamma[0] * acvf.gamma[0];
  double sum = 0.0;
  for (std::size_t r = 1; r <= 3 * m + 2; ++r) {
    sum += static_cast<double>(r) * lambda_r(m, d, acvf, r);
  }
  const double p = 2.0 * weight_norm(d);
  return -sum / (g0sq * p * p);
}

Mse0Breakdown mse_gamma0(std::size_t m, double d, const Acvf& acvf, double jk, std::size_t n,
                         Normalization norm) {
  require_order(acvf, m);
  const double g0 = acvf.gamma[0];
  const double a = p1(m, d, acvf);
  const double b = p2(m, d, acvf);
  const double c = p3(m, d, acvf);

  Mse0Breakdown out;
  if (norm == Normalization::exact) {
    // Gaussian fourth moments summed over all ordered pairs (i, j): the
    // pairwise covariance sum contributes 2 sum_r (n_m - r) Lambda_r, hence 2 p3.
    const auto nm = static_cast<double>(n_m(m, n));
    const double bias = q0(m, d) * jk / nm;
    out.bias2 = bias * bias;
    out.var_signal = p1_gaussian(m, d, acvf) * g0 * jk / (nm * nm);
    out.var_noise = b * g0 * g0 / nm;
    out.var_remainder = 2.0 * c * g0 * g0 / (nm * nm);
  } else {
    n_m(m, n);
    const auto nn = static_cast<double>(n);
    const double bias = q0(m, d) * jk / nn;
    out.bias2 = bias * bias;
    out.var_signal = a * g0 * jk / (nn * nn);
    out.var_noise = b * g0 * g0 / nn;
    out.var_remainder = c * g0 * g0 / (nn * nn);
  }
  out.total = out.bias2 + out.var_signal + out.var_noise + out.var_remainder;
  return out;
}

double extended_bias_gamma0(std::size_t m, double d, const Acvf& acvf, double jk, std::size_t n) {
  const auto nn = static_cast<double>(n);
  const auto nm = static_cast<double>(n_m(m, n));
  const double q = q0(m, d) * nn / nm;
  return (q * q * jk * jk + p1(m, d, acvf) * acvf.gamma[0] * jk) / (nn * nn);
}

double f_h(const Acvf& acvf, std::size_t h) {
  if (h < 1) throw std::domain_error("f_h: h must be >= 1");
  const auto hl = static_cast<long>(h);
  if (h == 1) return 2.0 * (acvf.at(0) - acvf.at(1));
  double inner = 0.0;
  for (long j = 2; j <= hl; ++j) {
    for (long i = 1; i <= j + 1; ++i) {
      inner += 2.0 * acvf.at(j - i) - acvf.at(j - i - hl) - acvf.at(j - i + hl);
    }
  }
  return 2.0 * (static_cast<double>(h - 1) * (acvf.at(0) - acvf.at(hl)) + inner);
}

double v_h(const Acvf& acvf, std::size_t m, std::size_t h) {
  if (h < 1 || h > m) throw std::domain_error("v_h: h outside [1, m]");
  const auto hl = static_cast<long>(h);
  const auto ml = static_cast<long>(m);
  double pos = 0.0;
  for (long s = 0; s <= ml; ++s) {
    for (long t = 1; t <= hl; ++t) pos += acvf.at(s + t);
  }
  double neg = 0.0;
  for (long s = 1; s <= ml + 1; ++s) {
    for (long t = 1; t <= hl; ++t) neg += acvf.at(t - s);
  }
  return pos - neg;
}

double p1_star(std::size_t m, std::size_t h, double d, const Acvf& acvf) {
  const double p = 2.0 * weight_norm(d);
  return p1(m, d, acvf) + 0.25 * f_h(acvf, h) - 8.0 * (d * d - 1.0) * v_h(acvf, m, h) / p;
}

double p3_star(std::size_t m, std::size_t h, double d, const Acvf& acvf) {
  const double g0 = acvf.gamma[0];
  const double p = 2.0 * weight_norm(d);
  return p3(m, d, acvf) * g0 * g0 + g0 * (g0 - acvf.at(static_cast<long>(h))) / p;
}

double signal_factor_T(std::size_t m, double d, std::size_t r) noexcept {
  const auto mp1 = static_cast<double>(m + 1);
  const auto rr = static_cast<double>(r);
  // the step contributes d a (m+1 times) then -a (m+1 times)
  if (r <= m) return (mp1 - rr) * d * d - rr * d + (mp1 - rr);
  if (r <= 2 * m + 1) return -d * (2.0 * mp1 - rr);
  return 0.0;
}

}  // namespace dbacf::analytic
