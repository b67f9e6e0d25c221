#include "oqf/convergence.hpp"

#include "oqf/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace oqf {

cplx ExpSumIntegrand::operator()(double x) const {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    acc += c[j] * std::exp(lambda[j] * x);
  return acc;
}

cplx ExpSumIntegrand::exact(double omega, double a, double b) const {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const cplx s = lambda[j] + cplx(0.0, 2.0 * std::numbers::pi * omega);
    if (std::abs(s) == 0.0)
      acc += c[j] * (b - a);
    else
      acc += c[j] * (std::exp(s * b) - std::exp(s * a)) / s;
  }
  return acc;
}

ExpSumIntegrand test_integrand(std::string_view id) {
  const cplx i(0.0, 1.0);
  if (id == "exp")
    return {"exp", "e^x", {1.0}, {1.0}};
  if (id == "cos")
    return {"cos", "cos(x)", {0.5, 0.5}, {i, -i}};
  if (id == "sin3")
    return {"sin3", "sin(3x)", {-0.5 * i, 0.5 * i}, {3.0 * i, -3.0 * i}};
  if (id == "expneg2")
    return {"expneg2", "e^(-2x)", {1.0}, {-2.0}};
  throw InvalidArgument("unknown integrand '" + std::string(id) + "' (exp, cos, sin3, expneg2)");
}

std::vector<std::string> test_integrand_ids() { return {"exp", "cos", "sin3", "expneg2"}; }

double fit_order(std::span<const ConvergencePoint> points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& p : points) {
    if (!(p.error > 0.0) || !(p.h > 0.0))
      continue;
    const double x = std::log(p.h), y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2)
    return std::numeric_limits<double>::quiet_NaN();
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceReport convergence_study(int m, std::string_view integrand, double omega, double a, double b,
                                    std::span<const int> ladder) {
  if (ladder.empty())
    throw InvalidArgument("convergence study needs at least one N");
  const ExpSumIntegrand phi = test_integrand(integrand);
  ConvergenceReport r;
  r.m = m;
  r.integrand = phi.id;
  r.omega = omega;
  r.a = a;
  r.b = b;
  r.exact = phi.exact(omega, a, b);
  for (int n : ladder) {
    const QuadratureSpec spec{m, omega, a, b, n};
    spec.validate();
    std::vector<cplx> samples(static_cast<std::size_t>(n) + 1);
    for (int beta = 0; beta <= n; ++beta)
      samples[static_cast<std::size_t>(beta)] = phi(spec.node(beta));
    r.points.push_back({n, spec.step(), std::abs(integrate(spec, samples) - r.exact)});
  }
  r.fitted_order = fit_order(r.points);
  return r;
}

} // namespace oqf
