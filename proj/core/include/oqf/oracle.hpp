#pragma once

#include "oqf/quadrature.hpp"

#include <vector>

namespace oqf {

/// Brute-force counterpart of the closed forms: the full defining system
/// for C_0..C_N and the polynomial coefficients p_0..p_{m-1} on [0,1],
///
///   sum_gamma C_gamma G_m(h beta - h gamma) + sum_alpha p_alpha (h beta)^alpha = f_m(h beta)
///   sum_gamma C_gamma (h gamma)^alpha = g_alpha,               alpha = 0..m-1
struct OracleSystem {
  int m = 0;
  double omega_unit = 0.0; // omega (b - a)
  int n = 0;
  int dim = 0;             // N + m + 1
  std::vector<cplx> matrix; // row-major dim x dim
  std::vector<cplx> rhs;
};

struct OracleSolution {
  CoefficientVector coeffs;  // on [0,1]
  std::vector<cplx> poly;    // p_0..p_{m-1}
  double condition = 0.0;    // 2-norm condition number of the system matrix
  double residual = 0.0;     // ||A x - b|| / ||b||
};

/// Largest N the oracle accepts.
inline constexpr int kOracleMaxN = 64;

/// g_alpha = int_0^1 e^{2 pi i omega x} x^alpha dx.
cplx moment_g(int alpha, double omega);

/// f_m(h beta) = int_0^1 e^{2 pi i omega x} G_m(x - h beta) dx.
cplx rhs_f(int m, double omega, int beta, double h);

OracleSystem assemble_oracle(int m, double omega_unit, int n);

/// Throws NumericalFailure when the relative residual exceeds 1e-8.
OracleSolution solve_oracle(int m, double omega_unit, int n);

} // namespace oqf
