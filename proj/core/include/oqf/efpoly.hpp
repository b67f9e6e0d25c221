#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace oqf {

/// Euler-Frobenius polynomial E_k(x) = sum_s a_s x^s.
///
/// The coefficients are the Eulerian numbers A(k+1, s), stored exactly.
/// Only the roots inside the unit disk are kept: the others follow from
/// the reciprocal pairing q_j * q_{k+1-j} = 1.
struct EFPolynomial {
  int degree = 0;
  std::vector<std::int64_t> coeffs;
  std::vector<double> roots_inside; // ascending, all in (-1, 0)

  double operator()(double x) const;
};

/// Exact coefficients a_0..a_k of E_k. Throws NumericalFailure when an
/// intermediate value does not fit in 128 bits or the result in 64 bits.
std::vector<std::int64_t> ef_coefficients(int k);

/// Roots of E_k in (-1, 0), ascending. Requires even k >= 2.
std::vector<double> ef_roots_inside(int k);

EFPolynomial euler_frobenius(int k);

/// i-th forward difference of x^j at 0: sum_{l=1}^{i} (-1)^{i-l} C(i,l) l^j,
/// with the convention delta_zero(0, 0) = 1.
std::int64_t delta_zero(int i, int j);

std::int64_t binomial(int n, int k);
double factorial(int n);

/// Horner evaluation of an integer-coefficient polynomial in any real type.
template <class Real>
Real horner(std::span<const std::int64_t> coeffs, Real x) {
  Real acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + static_cast<Real>(*it);
  return acc;
}

template <class Real>
Real horner_derivative(std::span<const std::int64_t> coeffs, Real x) {
  Real acc = 0;
  for (std::size_t s = coeffs.size(); s-- > 1;)
    acc = acc * x + static_cast<Real>(coeffs[s]) * static_cast<Real>(s);
  return acc;
}

/// Newton refinement of a simple root in the working precision of Real.
/// The starting point must already be inside the basin (a bisection
/// bracket midpoint is enough for Euler-Frobenius roots).
template <class Real>
Real polish_root(std::span<const std::int64_t> coeffs, Real x) {
  for (int it = 0; it < 8; ++it) {
    Real f = horner(coeffs, x);
    Real df = horner_derivative(coeffs, x);
    if (df == Real(0))
      break;
    Real step = f / df;
    x -= step;
    Real mag = step < Real(0) ? -step : step;
    Real ax = x < Real(0) ? -x : x;
    if (mag == Real(0) || mag < ax * Real(1e-40))
      break;
  }
  return x;
}

/// Integer power by repeated squaring.
template <class T>
T ipow(T base, long long e) {
  T result = T(1);
  while (e > 0) {
    if (e & 1)
      result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

} // namespace oqf
