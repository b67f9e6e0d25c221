#include "oqf/efpoly.hpp"

#include "oqf/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace oqf {

namespace {

using wide = __int128;

wide checked_mul(wide a, wide b) {
  wide r;
  if (__builtin_mul_overflow(a, b, &r))
    throw NumericalFailure("integer overflow in Euler-Frobenius arithmetic");
  return r;
}

wide checked_add(wide a, wide b) {
  wide r;
  if (__builtin_add_overflow(a, b, &r))
    throw NumericalFailure("integer overflow in Euler-Frobenius arithmetic");
  return r;
}

wide wide_pow(wide base, int e) {
  wide r = 1;
  for (int i = 0; i < e; ++i)
    r = checked_mul(r, base);
  return r;
}

wide wide_binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  wide r = 1;
  for (int i = 1; i <= k; ++i)
    r = checked_mul(r, n - k + i) / i; // exact: r * (n-k+i) is divisible by i
  return r;
}

std::int64_t narrow(wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw NumericalFailure("Euler-Frobenius value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

} // namespace

std::int64_t binomial(int n, int k) { return narrow(wide_binomial(n, k)); }

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

std::vector<std::int64_t> ef_coefficients(int k) {
  if (k < 0)
    throw InvalidArgument("ef_coefficients: degree must be nonnegative");
  std::vector<std::int64_t> out(static_cast<std::size_t>(k) + 1);
  for (int s = 0; s <= k; ++s) {
    wide acc = 0;
    for (int j = 0; j <= s; ++j) {
      wide term = checked_mul(wide_binomial(k + 2, j), wide_pow(s + 1 - j, k + 1));
      acc = checked_add(acc, (j % 2 == 0) ? term : -term);
    }
    out[static_cast<std::size_t>(s)] = narrow(acc);
  }
  return out;
}

std::int64_t delta_zero(int i, int j) {
  if (i < 0 || j < 0)
    throw InvalidArgument("delta_zero: indices must be nonnegative");
  if (i == 0)
    return j == 0 ? 1 : 0;
  if (i > j)
    return 0;
  wide acc = 0;
  for (int l = 1; l <= i; ++l) {
    wide term = checked_mul(wide_binomial(i, l), wide_pow(l, j));
    acc = checked_add(acc, ((i - l) % 2 == 0) ? term : -term);
  }
  return narrow(acc);
}

std::vector<double> ef_roots_inside(int k) {
  if (k < 2 || k % 2 != 0)
    throw InvalidArgument("ef_roots_inside: degree must be even and >= 2, got " +
                          std::to_string(k));
  const auto c = ef_coefficients(k);
  const std::span<const std::int64_t> cs(c);
  const int expected = k / 2;

  // Roots crowd towards 0 as k grows, so scan x = -exp(-u) on a uniform
  // u-grid rather than uniformly in x.
  std::vector<double> roots;
  const double du = 1.0 / 256.0;
  double u_prev = 1e-9;
  double x_prev = -std::exp(-u_prev);
  double f_prev = horner(cs, x_prev);
  for (double u = du; u < 80.0 && static_cast<int>(roots.size()) < expected; u += du) {
    double x = -std::exp(-u);
    double f = horner(cs, x);
    if ((f_prev < 0) != (f < 0)) {
      double lo = x_prev, hi = x, flo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
          break;
        double fm = horner(cs, mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(polish_root(cs, 0.5 * (lo + hi)));
    }
    x_prev = x;
    f_prev = f;
  }
  if (static_cast<int>(roots.size()) != expected)
    throw NumericalFailure("ef_roots_inside: found " + std::to_string(roots.size()) +
                           " roots of E_" + std::to_string(k) + ", expected " +
                           std::to_string(expected));
  std::sort(roots.begin(), roots.end());
  return roots;
}

double EFPolynomial::operator()(double x) const {
  return horner(std::span<const std::int64_t>(coeffs), x);
}

EFPolynomial euler_frobenius(int k) {
  EFPolynomial p;
  p.degree = k;
  p.coeffs = ef_coefficients(k);
  if (k >= 2 && k % 2 == 0)
    p.roots_inside = ef_roots_inside(k);
  return p;
}

} // namespace oqf
