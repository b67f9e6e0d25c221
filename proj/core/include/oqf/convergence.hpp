#pragma once

#include "oqf/quadrature.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oqf {

/// phi(x) = sum_j c_j e^{lambda_j x}: smooth test integrands whose
/// oscillatory integrals have elementary closed forms.
struct ExpSumIntegrand {
  std::string id;
  std::string formula;
  std::vector<cplx> c, lambda;

  cplx operator()(double x) const;
  /// int_a^b e^{2 pi i omega x} phi(x) dx
  cplx exact(double omega, double a, double b) const;
};

/// Built-in integrands: "exp" (e^x), "cos" (cos x), "sin3" (sin 3x),
/// "expneg2" (e^{-2x}). Throws InvalidArgument for an unknown id.
ExpSumIntegrand test_integrand(std::string_view id);
std::vector<std::string> test_integrand_ids();

struct ConvergencePoint {
  int n = 0;
  double h = 0.0;
  double error = 0.0; // |Q_N - I|
};

struct ConvergenceReport {
  int m = 0;
  std::string integrand;
  double omega = 0.0, a = 0.0, b = 1.0;
  cplx exact;
  std::vector<ConvergencePoint> points;
  double fitted_order = 0.0;
};

/// Least-squares slope of log(error) against log(h). Points with zero
/// error are skipped; fewer than two usable points give NaN.
double fit_order(std::span<const ConvergencePoint> points);

ConvergenceReport convergence_study(int m, std::string_view integrand, double omega, double a, double b,
                                    std::span<const int> ladder);

} // namespace oqf
