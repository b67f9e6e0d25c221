#pragma once

#include <complex>
#include <functional>
#include <span>

namespace oqf {

struct AdaptiveResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = true;
};

/// Globally adaptive bisection with a 15-point Gauss-Kronrod rule on each
/// piece. Real and imaginary parts must each meet `abs_tol`. Breakpoints
/// (kinks of the integrand) are split on before any bisection.
AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol = 1e-13,
                                  std::span<const double> breakpoints = {}, int max_intervals = 20000);

/// Real-valued convenience overload.
double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-13, std::span<const double> breakpoints = {});

} // namespace oqf
