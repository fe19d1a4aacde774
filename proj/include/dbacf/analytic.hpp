#pragma once

// Closed-form bias and MSE components of the difference-based estimators on
// step signals with Gaussian m-dependent noise. All functions treat lags
// beyond the order of the supplied Acvf as zero.

#include <cstddef>

#include "dbacf/core.hpp"

namespace dbacf::analytic {

/// Denominators used when assembling finite-sample quantities.
///   exact      - n_m = n - 2(m+1) and n - h, as in the moment derivations.
///   asymptotic - a common n everywhere (the compact closed forms).
enum class Normalization { exact, asymptotic };

struct Mse0Breakdown {
  double bias2 = 0.0;
  double var_signal = 0.0;
  double var_noise = 0.0;
  double var_remainder = 0.0;
  double total = 0.0;
};

/// (m+1)(d^2+1) / (2(d^2+d+1)); E[gamma0_hat] = gamma_0 + q0 J_K / n_m.
double q0(std::size_t m, double d) noexcept;

/// q0(m, d) J_K / (n - 2(m+1)).
double bias_gamma0(std::size_t m, double d, double jk, std::size_t n);

/// Bias of gammah_hat. exact: q0 J_K/n_m - h J_K/(2(n-h));
/// asymptotic: (q0 - h/2) J_K / n.
double bias_gammah(std::size_t m, std::size_t h, double d, double jk, std::size_t n,
                   Normalization norm = Normalization::exact);

/// Coefficient of gamma_0 J_K in the signal-dependent variance of gamma0_hat,
/// compact closed form. Agrees with p1_gaussian at d = 0 only.
double p1(std::size_t m, double d, const Acvf& acvf);

/// 4 sum_r T_r Psi(r) / (P^2 gamma_0): the coefficient obtained by expanding
/// Var(sum (delta_i + eta_i)^2) directly. Used by the exact MSE.
double p1_gaussian(std::size_t m, double d, const Acvf& acvf);

/// Psi(r) = E[eta_i eta_{i+r}] for the second-order noise differences.
double psi(std::size_t m, double d, const Acvf& acvf, std::size_t r);

/// Lambda_r(d; gamma); zero for r >= 3(m+1).
double lambda_r(std::size_t m, double d, const Acvf& acvf, std::size_t r);

/// Noise-only variance coefficient (order 1/n term).
double p2(std::size_t m, double d, const Acvf& acvf);

/// -(1/P^2) sum_h h Lambda_h / gamma_0^2. The exact finite-sample
/// remainder of VAR(gamma0_hat) is 2 p3 gamma_0^2 / n_m^2; see mse_gamma0.
double p3(std::size_t m, double d, const Acvf& acvf);

/// MSE of gamma0_hat split into bias^2 and variance parts.
///   exact:      (q0 J/n_m)^2 + p1_gaussian g0 J/n_m^2 + p2 g0^2/n_m + 2 p3 g0^2/n_m^2
///   asymptotic: (q0 J/n)^2   + p1 g0 J/n^2   + p2 g0^2/n   +   p3 g0^2/n^2
/// The exact form equals the Gaussian variance of the estimator when the
/// jumps are separated by more than 5m+3 grid points.
Mse0Breakdown mse_gamma0(std::size_t m, double d, const Acvf& acvf, double jk, std::size_t n,
                         Normalization norm = Normalization::exact);

/// n^-2 [q0^2 (n/n_m)^2 J^2 + p1 gamma_0 J]: the f-dependent part of the MSE.
double extended_bias_gamma0(std::size_t m, double d, const Acvf& acvf, double jk, std::size_t n);

/// Coefficient F_h with E[D_h] = F_h J_K (compact closed form).
double f_h(const Acvf& acvf, std::size_t h);

/// Cross-moment constant V_h of E[gamma0_hat * delta_h].
double v_h(const Acvf& acvf, std::size_t m, std::size_t h);

/// p1 for gammah_hat: p1 + F_h/4 - 8(d^2-1) V_h / P(d).
double p1_star(std::size_t m, std::size_t h, double d, const Acvf& acvf);

/// p3 for gammah_hat: p3 gamma_0^2 + gamma_0 (gamma_0 - gamma_h) / P(d).
double p3_star(std::size_t m, std::size_t h, double d, const Acvf& acvf);

/// T_r(d) with sum_i delta_i(d) delta_{i+r}(d) = T_r(d) J_K on a noiseless step.
double signal_factor_T(std::size_t m, double d, std::size_t r) noexcept;

}  // namespace dbacf::analytic
