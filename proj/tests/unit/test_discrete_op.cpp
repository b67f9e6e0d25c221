#include "oqf/discrete_op.hpp"
#include "oqf/efpoly.hpp"
#include "oqf/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace oqf;

TEST_SUITE("discrete_op") {

TEST_CASE("m = 1 is the second difference") {
  const double h = 0.1;
  const DiscreteOperator op(1, h);
  CHECK(op.roots().empty());
  CHECK(op(0) == doctest::Approx(-2.0 / (h * h)).epsilon(1e-15));
  CHECK(op(1) == doctest::Approx(1.0 / (h * h)).epsilon(1e-15));
  CHECK(op(-1) == doctest::Approx(1.0 / (h * h)).epsilon(1e-15));
  CHECK(op(2) == 0.0);
  CHECK(op(-7) == 0.0);
}

TEST_CASE("m = 2 values from the explicit form") {
  const double h = 0.05;
  const DiscreteOperator op(2, h);
  const double q = std::sqrt(3.0) - 2.0;
  const double e3 = 1.0 + 11.0 * q + 11.0 * q * q + q * q * q;
  const double amp = std::pow(1.0 - q, 5) / e3;
  const double p = 6.0 / std::pow(h, 4);
  CHECK(op.scale() == doctest::Approx(p).epsilon(1e-15));
  CHECK(op.center() == -8.0);
  CHECK(op(0) == doctest::Approx(p * (-8.0 + amp / q)).epsilon(1e-13));
  CHECK(op(1) == doctest::Approx(p * (1.0 + amp)).epsilon(1e-13));
  for (long beta = 2; beta < 12; ++beta)
    CHECK(op(beta) == doctest::Approx(p * amp * std::pow(q, beta - 1)).epsilon(1e-13));
}

TEST_CASE("symmetric in beta") {
  for (int m = 1; m <= 5; ++m) {
    const DiscreteOperator op(m, 0.1);
    for (long beta = 1; beta < 20; ++beta)
      CHECK(op(beta) == op(-beta));
    CHECK(d_discrete(op, 3) == op(3));
  }
}

TEST_CASE("convolution with G_m gives the discrete delta") {
  for (int m = 1; m <= 3; ++m)
    for (double h : {0.1, 0.05}) {
      const DiscreteOperator op(m, h);
      const int w = default_window(op);
      const auto rep = verify_convolution(op, w);
      CAPTURE(m);
      CAPTURE(h);
      CHECK(rep.window_adequate);
      CHECK(rep.max_residual <= 1e-8);
      CHECK(rep.truncation_bound < 1e-10);
    }
}

TEST_CASE("convolution in long double at h = 1, m = 2") {
  // independent of verify_convolution: direct sum with the explicit form
  const long double q = std::sqrt(3.0L) - 2.0L;
  const long double amp = std::pow(1.0L - q, 5) / (1.0L + 11.0L * q + 11.0L * q * q + q * q * q);
  const auto d = [&](long b) -> long double {
    b = std::abs(b);
    if (b == 0)
      return 6.0L * (-8.0L + amp / q);
    if (b == 1)
      return 6.0L * (1.0L + amp);
    return 6.0L * amp * std::pow(q, static_cast<long double>(b - 1));
  };
  const auto g = [](long double x) { return std::abs(x * x * x) / 12.0L; };
  for (long beta = -3; beta <= 3; ++beta) {
    long double s = 0;
    for (long gamma = -60; gamma <= 60; ++gamma)
      s += d(gamma) * g(static_cast<long double>(beta - gamma));
    CHECK(static_cast<double>(s) == doctest::Approx(beta == 0 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("moments vanish below 2m and equal (2m)! at 2m") {
  for (int m = 1; m <= 3; ++m)
    for (double h : {0.1, 0.05}) {
      const DiscreteOperator op(m, h);
      const int w = default_window(op);
      for (int k = 0; k <= 2 * m; ++k) {
        const auto r = verify_moments(op, k, w);
        CAPTURE(m);
        CAPTURE(k);
        if (k < 2 * m) {
          CHECK(r.expected == 0.0);
          // relative to the size of the terms in the sum
          CHECK(std::abs(r.value) <= 1e-6 * std::abs(op(0)) * std::pow(h * w, k));
        } else {
          CHECK(r.expected == factorial(2 * m));
          CHECK(std::abs(r.value - r.expected) <= 1e-6 * r.expected);
        }
      }
    }
}

TEST_CASE("kernel and argument checks") {
  CHECK(g_kernel(1, -0.5) == doctest::Approx(0.25));
  CHECK(g_kernel(2, 2.0) == doctest::Approx(8.0 / 12.0));
  CHECK(g_kernel_t<long double>(3, 1.0L) == doctest::Approx(1.0 / 240.0));
  CHECK_THROWS_AS(DiscreteOperator(0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(DiscreteOperator(2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(verify_moments(DiscreteOperator(2, 0.1), 5, 10), InvalidArgument);
  CHECK(default_window(DiscreteOperator(1, 0.1)) == 2);
}

TEST_CASE("short windows are flagged") {
  const DiscreteOperator op(3, 0.1);
  CHECK_FALSE(verify_convolution(op, 4).window_adequate);
}

}
