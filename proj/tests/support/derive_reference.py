#!/usr/bin/env python3
"""Regenerates frozen_reference.hpp from a 50-digit mpmath solve of the full
defining system. Run from this directory: python3 derive_reference.py > frozen_reference.hpp"""
from math import factorial

import mpmath as mp

mp.mp.dps = 50

COEFF_CASES = [
    (1, 2.7, 0, 1, 8), (2, 2.7, 0, 1, 8), (3, 2.7, 0, 1, 8),
    (2, 0.01, 0, 1, 8), (3, 0.001, 0, 1, 16),
    (2, 8.0, 0, 1, 8), (3, 16.0, 0, 1, 8),
    (2, 3.3, -1, 2, 10), (4, 5.1, 0, 1, 12), (3, 0.2, 0, 1, 8),
]
NORM_CASES = [(m, n) for m in (1, 2, 3) for n in (8, 16, 32)]


def kernel(m, x):
    return abs(x) ** (2 * m - 1) / (2 * factorial(2 * m - 1))


def solve(m, w, n):
    h = mp.mpf(1) / n
    dim = n + 1 + m
    A = mp.matrix(dim, dim)
    rhs = mp.matrix(dim, 1)
    osc = lambda x: mp.e ** (2j * mp.pi * w * x)
    for be in range(n + 1):
        xb = h * be
        for ga in range(n + 1):
            A[be, ga] = kernel(m, xb - h * ga)
        for al in range(m):
            A[be, n + 1 + al] = xb ** al
        pts = [0, xb, 1] if 0 < xb < 1 else [0, 1]
        rhs[be] = mp.quad(lambda x: osc(x) * kernel(m, x - xb), pts)
    for al in range(m):
        for ga in range(n + 1):
            A[n + 1 + al, ga] = (h * ga) ** al
        rhs[n + 1 + al] = mp.quad(lambda x: osc(x) * x ** al, [0, 1])
    x = mp.lu_solve(A, rhs)
    return [x[i] for i in range(n + 1)]


def error_norm_sq(m, n):
    # (-1)^m times the quadratic form of the error functional against G_m
    h = mp.mpf(1) / n
    c = [mp.re(v) for v in solve(m, 0, n)]
    p = 2 * m - 1
    cc = sum(c[i] * c[j] * kernel(m, h * (i - j)) for i in range(n + 1) for j in range(n + 1))
    cf = sum(c[i] * (mp.mpf(h * i) ** (p + 1) + (1 - h * i) ** (p + 1)) / (p + 1) for i in range(n + 1))
    cf /= 2 * factorial(p)
    ff = mp.mpf(2) / ((p + 1) * (p + 2)) / (2 * factorial(p))
    return (-1) ** m * (cc - 2 * cf + ff)


def main():
    print("#pragma once")
    print("// Generated by derive_reference.py (mpmath, 50 digits). Do not edit.")
    print()
    print("#include <array>")
    print("#include <vector>")
    print()
    print("namespace oqf::test {")
    print()
    print("struct FrozenCoefficients {")
    print("  int m;")
    print("  double omega, a, b;")
    print("  int n;")
    print("  std::vector<double> re, im;")
    print("};")
    print()
    print("inline const std::vector<FrozenCoefficients>& frozen_coefficients() {")
    print("  static const std::vector<FrozenCoefficients> cases = {")
    for m, w, a, b, n in COEFF_CASES:
        c = solve(m, mp.mpf(w) * (b - a), n)
        c = [(b - a) * mp.e ** (2j * mp.pi * mp.mpf(w) * a) * v for v in c]
        re = ", ".join("%.17g" % float(mp.re(v)) for v in c)
        im = ", ".join("%.17g" % float(mp.im(v)) for v in c)
        print("      {%d, %r, %r, %r, %d,\n       {%s},\n       {%s}}," % (m, w, float(a), float(b), n, re, im))
    print("  };")
    print("  return cases;")
    print("}")
    print()
    print("struct FrozenErrorNorm {")
    print("  int m, n;")
    print("  double norm_sq;")
    print("};")
    print()
    print("inline constexpr std::array<FrozenErrorNorm, %d> frozen_error_norms = {{" % len(NORM_CASES))
    for m, n in NORM_CASES:
        print("    {%d, %d, %.17g}," % (m, n, float(error_norm_sq(m, n))))
    print("}};")
    print()
    print("} // namespace oqf::test")


if __name__ == "__main__":
    main()
