#include "oqf/adaptive.hpp"
#include "oqf/error.hpp"
#include "oqf/quadrature.hpp"

#include "frozen_reference.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace oqf;
using oqf::test::max_rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double k2_closed(double wh) {
  const double s = std::sin(kPi * wh) / (kPi * wh);
  return s * s * s * s * 3.0 / (2.0 + std::cos(2.0 * kPi * wh));
}

// Coefficients for m = 2 written out term by term.
std::vector<cplx> m2_closed(double omega, double a, double b, int n) {
  const double h = (b - a) / n;
  const double q = std::sqrt(3.0) - 2.0;
  const double qn = std::pow(q, n);
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  if (omega == 0.0) {
    const double end = h * (0.5 + (q - qn) / (2.0 * (1.0 - q) * (1.0 + qn)));
    c.front() = c.back() = end;
    for (int beta = 1; beta < n; ++beta)
      c[beta] = h * (1.0 - (std::pow(q, beta) + std::pow(q, n - beta)) / (2.0 * (1.0 + qn)));
    return c;
  }
  const double wh = omega * h;
  const bool resonant = std::abs(wh - std::round(wh)) < 1e-12;
  const double k = resonant ? 0.0 : k2_closed(wh);
  const cplx z = 2.0 * kPi * I * wh;
  const cplx ea = std::exp(2.0 * kPi * I * omega * a), eb = std::exp(2.0 * kPi * I * omega * b);
  const cplx eh = std::exp(z);
  const double bw = 6.0 * (1.0 / std::pow(2.0 * kPi * wh, 2) -
                           (resonant ? 0.0 : k / (2.0 - 2.0 * std::cos(2.0 * kPi * wh))));
  const cplx a1 = bw * (ea - eb * qn) / (1.0 - qn * qn);
  const cplx b1 = bw * (eb - ea * qn) / (1.0 - qn * qn);
  const cplx osc0 = resonant ? cplx(0.0) : std::exp(2.0 * kPi * I * omega * (a + h)) * k / (eh - 1.0);
  const cplx oscn = resonant ? cplx(0.0) : eb * k / (1.0 - eh);
  c.front() = h * (osc0 - ea / z + a1 * q / (q - 1.0) + b1 * qn / (1.0 - q));
  c.back() = h * (oscn + eb / z + a1 * qn / (1.0 - q) + b1 * q / (q - 1.0));
  for (int beta = 1; beta < n; ++beta)
    c[beta] = h * (std::exp(2.0 * kPi * I * omega * (h * beta + a)) * k + a1 * std::pow(q, beta) +
                   b1 * std::pow(q, n - beta));
  return c;
}

std::vector<cplx> values(const QuadratureSpec& s) { return coefficients(s).values; }

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("agrees with the frozen 50-digit solution of the defining system") {
  for (const auto& f : oqf::test::frozen_coefficients()) {
    const auto c = values({f.m, f.omega, f.a, f.b, f.n});
    std::vector<cplx> ref(f.re.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      ref[i] = {f.re[i], f.im[i]};
    CAPTURE(f.m);
    CAPTURE(f.omega);
    CAPTURE(f.n);
    CHECK(max_rel_diff(c, ref) < 1e-10);
  }
}

TEST_CASE("m = 2 matches the explicit formulas on all three branches") {
  for (auto [omega, a, b, n] : {std::tuple{0.0, 0.0, 1.0, 8}, {0.0, -1.0, 2.0, 13}, {2.7, 0.0, 1.0, 8},
                                 {-2.7, -1.0, 2.0, 16}, {0.4, 0.0, 1.0, 32}, {41.3, 0.0, 1.0, 10},
                                 {8.0, 0.0, 1.0, 8}, {-16.0, 0.0, 1.0, 8}, {2.0, 2.0, 5.0, 6}}) {
    CAPTURE(omega);
    CAPTURE(n);
    CHECK(max_rel_diff(values({2, omega, a, b, n}), m2_closed(omega, a, b, n)) < 1e-12);
  }
}

TEST_CASE("m = 1 at omega = 0 is the trapezoidal rule") {
  for (int n : {1, 2, 7, 50}) {
    const double h = 3.0 / n;
    const auto c = values({1, 0.0, -1.0, 2.0, n});
    CHECK(c.front().real() == doctest::Approx(h / 2).epsilon(1e-15));
    CHECK(c.back().real() == doctest::Approx(h / 2).epsilon(1e-15));
    for (int beta = 1; beta < n; ++beta)
      CHECK(c[beta].real() == doctest::Approx(h).epsilon(1e-15));
    for (const auto& v : c)
      CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("m = 2 end weight tends to h (3 + sqrt 3) / 12") {
  const int n = 64;
  const auto c = values({2, 0.0, 0.0, 1.0, n});
  CHECK(c.front().real() * n == doctest::Approx((3.0 + std::sqrt(3.0)) / 12.0).epsilon(1e-14));
  CHECK(c.front().real() * n == doctest::Approx(0.394338).epsilon(1e-6));
}

TEST_CASE("m = 1 at a resonance keeps only the end weights") {
  const int n = 10;
  const double omega = 10.0; // omega h = 1
  const auto c = values({1, omega, 0.0, 1.0, n});
  const double h = 0.1;
  const cplx z = 2.0 * kPi * I * omega * h;
  CHECK(std::abs(c.front() - (-h / z)) < 1e-15);
  CHECK(std::abs(c.back() - h / z) < 1e-15);
  for (int beta = 1; beta < n; ++beta)
    CHECK(std::abs(c[beta]) < 1e-15);
  CHECK(coefficients({1, omega, 0.0, 1.0, n}).branch == Branch::ResonantInteger);
}

TEST_CASE("K limits and the value at omega h = 1/2") {
  CHECK(k_factor(2, 0.0, 0.1) == 1.0);
  CHECK(k_factor(3, 0.0, 0.1) == 1.0);
  CHECK(k_factor(2, 10.0, 0.1) == 0.0);
  CHECK(k_factor(3, -20.0, 0.1) == 0.0);
  CHECK(std::abs(k_factor(2, 0.5, 1.0) - 48.0 / std::pow(kPi, 4)) <= 1e-12);
  CHECK(std::abs(k_factor(2, 5.0, 0.1) - 48.0 / std::pow(kPi, 4)) <= 1e-12);
  for (double wh : {1e-9, 1e-4, 0.01, 0.2, 0.26, 0.5, 0.77, 1.4, 3.3})
    CHECK(k_factor(2, wh, 1.0) == doctest::Approx(k2_closed(wh)).epsilon(1e-13));
  for (double wh : {1e-7, 1e-3})
    CHECK(k_factor(3, wh, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
  const double s1 = std::sin(kPi * 0.3) / (kPi * 0.3);
  CHECK(k_factor(1, 0.3, 1.0) == doctest::Approx(s1 * s1).epsilon(1e-14));
}

TEST_CASE("omega = 0 weights are exactly symmetric") {
  for (int m = 1; m <= 4; ++m)
    for (int n : {m, 8, 17, 32}) {
      if (n + 1 < m)
        continue;
      const auto c = values({m, 0.0, -1.0, 2.0, n});
      for (int beta = 0; beta <= n; ++beta)
        CHECK(c[beta] == c[n - beta]);
    }
}

TEST_CASE("negating omega conjugates the weights") {
  for (int m = 1; m <= 4; ++m)
    for (double omega : {0.03, 2.7, 8.0, 11.9, 40.25})
      for (int n : {8, 16}) {
        const auto p = values({m, omega, -1.0, 2.0, n});
        const auto q = values({m, -omega, -1.0, 2.0, n});
        for (std::size_t i = 0; i < p.size(); ++i)
          CHECK(std::abs(q[i] - std::conj(p[i])) <= 1e-12 * std::abs(p[i]) + 1e-15);
      }
}

TEST_CASE("continuous across the resonance tolerance") {
  for (int m = 1; m <= 3; ++m)
    for (int n : {8, 16}) {
      const double h = 1.0 / n;
      const auto at = values({m, 1.0 / h, 0.0, 1.0, n});
      for (double eps : {1e-6, -1e-6, 2e-6, -2e-6, 1e-5}) {
        const auto near = values({m, (1.0 + eps) / h, 0.0, 1.0, n});
        CAPTURE(m);
        CAPTURE(eps);
        CHECK(oqf::test::max_abs_diff(near, at) <= 1e-4);
      }
    }
}

TEST_CASE("continuous at omega = 0") {
  for (int m = 1; m <= 4; ++m) {
    const auto at = values({m, 0.0, 0.0, 1.0, 16});
    for (double omega : {1e-9, -1e-7, 1e-5})
      CHECK(oqf::test::max_abs_diff(values({m, omega, 0.0, 1.0, 16}), at) <= 1e-4);
  }
}

TEST_CASE("series and printed-formula routes overlap") {
  for (int m = 1; m <= 4; ++m)
    for (double wh : {0.12, 0.2, 0.25, 0.3, -0.22}) {
      const auto d = oscillation_terms_direct(m, wh);
      const auto s = oscillation_terms_series(m, wh);
      CHECK(d.k == doctest::Approx(s.k).epsilon(1e-13));
      for (int j = 0; j < m; ++j) {
        const double tol = 1e-9 * (1.0 + std::abs(d.pole[j]) + std::abs(d.plus[j]));
        CHECK(std::abs(d.pole[j] - s.pole[j]) < tol);
        CHECK(std::abs(d.plus[j] - s.plus[j]) < tol);
        CHECK(std::abs(d.minus[j] - s.minus[j]) < tol);
      }
    }
}

TEST_CASE("branch selection") {
  const CoefficientEngine eng(2, 10, 0.0, 1.0);
  CHECK(eng.classify(0.0) == Branch::ZeroOmega);
  CHECK(eng.classify(1e-6) == Branch::ZeroOmega);
  CHECK(eng.classify(1e-4) == Branch::Generic);
  CHECK(eng.classify(10.0) == Branch::ResonantInteger);
  CHECK(eng.classify(-20.0 + 1e-6) == Branch::ResonantInteger);
  CHECK(eng.classify(15.0) == Branch::Generic);
  CHECK(eng.compact(20.0 + 1e-6).omega == 20.0);
}

TEST_CASE("compact form expands to the same weights") {
  for (int m = 1; m <= 4; ++m) {
    const CoefficientEngine eng(m, 12, -1.0, 2.0);
    for (double omega : {0.0, 0.7, -3.1, 4.0, 9.9}) {
      const auto c = values({m, omega, -1.0, 2.0, 12});
      const auto cc = eng.compact(omega);
      CHECK(max_rel_diff(cc.expand(), c) < 1e-14);
      for (int beta = 1; beta < 12; ++beta)
        CHECK(std::abs(cc.interior(beta) - c[beta]) <= 1e-14 * std::abs(c[beta]) + 1e-16);
      CompactCoefficients reuse = eng.compact(1.5);
      eng.compact_into(omega, reuse);
      CHECK(reuse.expand() == cc.expand());
    }
  }
}

TEST_CASE("mapping from [0,1] to [2,5]") {
  for (int m = 1; m <= 3; ++m)
    for (double omega : {0.0, 1.3, -2.2}) {
      const auto unit = coefficients({m, omega * 3.0, 0.0, 1.0, 12});
      const auto mapped = transform_unit_to_ab(unit, 2.0, 5.0, omega);
      CHECK(max_rel_diff(mapped.values, values({m, omega, 2.0, 5.0, 12})) < 1e-12);
    }
}

TEST_CASE("exact for polynomials of degree below m") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> wdist(-30.0, 30.0), adist(-3.0, 3.0), ldist(0.2, 4.0);
  std::uniform_int_distribution<int> ndist(4, 40);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 4;
    const double a = adist(rng);
    const QuadratureSpec spec{m, trial % 5 == 0 ? 0.0 : wdist(rng), a, a + ldist(rng), ndist(rng)};
    const auto c = coefficients(spec);
    for (int alpha = 0; alpha < m; ++alpha) {
      const auto s = oqf::test::sample(spec, [&](double x) { return cplx(std::pow(x, alpha)); });
      const cplx got = integrate(c, s);
      const cplx want = oscillatory_moment(alpha, spec.omega, spec.a, spec.b);
      double scale = 0.0;
      for (int beta = 0; beta <= spec.n; ++beta)
        scale += std::abs(c.values[beta]) * std::abs(s[beta]);
      CAPTURE(spec.m);
      CAPTURE(spec.omega);
      CAPTURE(alpha);
      CHECK(std::abs(got - want) <= 1e-11 * std::max(std::abs(want), scale));
    }
  }
}

TEST_CASE("oscillatory moments agree with adaptive integration") {
  for (int alpha = 0; alpha < 5; ++alpha)
    for (double omega : {0.0, 0.001, 1.7, -6.25}) {
      const auto r = integrate_adaptive(
          [&](double x) { return std::exp(2.0 * kPi * I * omega * x) * std::pow(x, alpha); }, -1.0, 2.0);
      CHECK(std::abs(oscillatory_moment(alpha, omega, -1.0, 2.0) - r.value) < 1e-11);
    }
}

TEST_CASE("error norm agrees with the frozen quadratic form") {
  for (const auto& f : oqf::test::frozen_error_norms) {
    const auto r = error_norm_zero_omega(f.m, f.n);
    CAPTURE(f.m);
    CAPTURE(f.n);
    CHECK(r.norm_sq == doctest::Approx(f.norm_sq).epsilon(1e-9));
  }
  CHECK(error_norm_zero_omega(1, 10).norm_sq == doctest::Approx(0.01 / 12.0).epsilon(1e-14));
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1.0);
  CHECK(bernoulli(1) == -0.5);
  CHECK(bernoulli(2) == doctest::Approx(1.0 / 6.0));
  CHECK(bernoulli(4) == doctest::Approx(-1.0 / 30.0));
  CHECK(bernoulli(6) == doctest::Approx(1.0 / 42.0));
  CHECK(bernoulli(12) == doctest::Approx(-691.0 / 2730.0));
  CHECK(bernoulli(7) == 0.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(QuadratureSpec({0, 1.0, 0.0, 1.0, 8}).validate(), InvalidArgument);
  CHECK_THROWS_AS(QuadratureSpec({2, 1.0, 1.0, 1.0, 8}).validate(), InvalidArgument);
  CHECK_THROWS_AS(QuadratureSpec({3, 1.0, 0.0, 1.0, 1}).validate(), InvalidArgument);
  CHECK_THROWS_AS(QuadratureSpec({2, std::nan(""), 0.0, 1.0, 8}).validate(), InvalidArgument);
  CHECK_NOTHROW(QuadratureSpec({3, 1.0, 0.0, 1.0, 2}).validate());
  const QuadratureSpec spec{2, 1.0, 0.0, 1.0, 8};
  std::vector<cplx> wrong(5);
  CHECK_THROWS_AS(integrate(spec, wrong), InvalidArgument);
}

}
