#include "oqf/oracle.hpp"

#include "oqf/discrete_op.hpp"
#include "oqf/efpoly.hpp"
#include "oqf/error.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <string>

namespace oqf {

namespace {

using quad = boost::multiprecision::float128;

// Below this |2 pi omega| the printed expansions lose too many digits to
// cancellation; integrate the smooth pieces with Gauss-Legendre instead.
constexpr double kPrintedThreshold = 1.0;

using Gauss = boost::math::quadrature::gauss<double, 30>;

template <class R>
struct Cx {
  R re, im;
  friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(R s, Cx a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(Cx a, Cx b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  cplx to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

template <class R>
R fact_t(int n) {
  R f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

template <class R>
R pow_t(R x, int e) {
  R p = 1;
  for (int i = 0; i < e; ++i)
    p *= x;
  return p;
}

/// e^{2 pi i omega x}, phase reduced mod 1.
template <class R>
Cx<R> cis_t(R omega, R x) {
  using std::cos;
  using std::round;
  using std::sin;
  const R c = omega * x;
  const R f = c - round(c);
  const R t = boost::math::constants::two_pi<R>() * f;
  return {cos(t), sin(t)};
}

template <class R>
Cx<R> moment_printed(int alpha, R omega) {
  const Cx<R> c{R(0), boost::math::constants::two_pi<R>() * omega};
  const Cx<R> e = cis_t<R>(omega, R(1));
  const R af = fact_t<R>(alpha);
  Cx<R> s{0, 0}, cp = c;
  for (int k = 0; k < alpha; ++k) {
    const R w = (k % 2 == 0 ? af : R(-af)) / fact_t<R>(alpha - k);
    s = s + w * (e / cp);
    cp = cp * c;
  }
  const Cx<R> one{1, 0};
  s = s + (alpha % 2 == 0 ? af : R(-af)) * ((e - one) / cp);
  return s;
}

template <class R>
Cx<R> rhs_printed(int m, R omega, R xb) {
  const Cx<R> c{R(0), boost::math::constants::two_pi<R>() * omega};
  Cx<R> s{0, 0};
  for (int a = 0; a <= 2 * m - 1; ++a) {
    const R w = pow_t<R>(xb, 2 * m - 1 - a) / (2 * fact_t<R>(a) * fact_t<R>(2 * m - 1 - a));
    s = s - (a % 2 == 0 ? w : R(-w)) * moment_printed<R>(a, omega);
  }
  Cx<R> cp = c;
  for (int k = 1; k < 2 * m; ++k)
    cp = cp * c;
  s = s + cis_t<R>(omega, xb) / cp;
  cp = c;
  for (int k = 0; k <= 2 * m - 1; ++k) {
    s = s - (pow_t<R>(xb, 2 * m - 1 - k) / fact_t<R>(2 * m - 1 - k)) * (Cx<R>{1, 0} / cp);
    cp = cp * c;
  }
  return s;
}

template <class R>
R rhs_zero(int m, R xb) {
  return (pow_t<R>(xb, 2 * m) + pow_t<R>(1 - xb, 2 * m)) / (2 * fact_t<R>(2 * m));
}

bool printed_ok(double omega) {
  return std::abs(boost::math::constants::two_pi<double>() * omega) >= kPrintedThreshold;
}

cplx gauss_piece(int m, double omega, double xb, double lo, double hi) {
  if (!(lo < hi))
    return 0.0;
  auto f = [&](double x) { return cis_t<double>(omega, x).to_double() * g_kernel(m, x - xb); };
  const double re = Gauss::integrate([&](double x) { return f(x).real(); }, lo, hi);
  const double im = Gauss::integrate([&](double x) { return f(x).imag(); }, lo, hi);
  return {re, im};
}

cplx gauss_moment(int alpha, double omega) {
  auto f = [&](double x) { return cis_t<double>(omega, x).to_double() * std::pow(x, alpha); };
  const double re = Gauss::integrate([&](double x) { return f(x).real(); }, 0.0, 1.0);
  const double im = Gauss::integrate([&](double x) { return f(x).imag(); }, 0.0, 1.0);
  return {re, im};
}

// Right-hand sides in binary128 when the printed forms apply; otherwise
// the double Gauss-Legendre values.
Cx<quad> moment_quad(int alpha, double omega) {
  if (omega == 0.0)
    return {quad(1) / (alpha + 1), quad(0)};
  if (printed_ok(omega))
    return moment_printed<quad>(alpha, quad(omega));
  const cplx g = gauss_moment(alpha, omega);
  return {quad(g.real()), quad(g.imag())};
}

Cx<quad> rhs_quad(int m, double omega, int beta, int n) {
  const quad xb = quad(beta) / n;
  if (omega == 0.0)
    return {rhs_zero<quad>(m, xb), quad(0)};
  if (printed_ok(omega))
    return rhs_printed<quad>(m, quad(omega), xb);
  const double xd = static_cast<double>(xb);
  const cplx f = gauss_piece(m, omega, xd, 0.0, xd) + gauss_piece(m, omega, xd, xd, 1.0);
  return {quad(f.real()), quad(f.imag())};
}

void check_oracle_args(int m, double omega_unit, int n) {
  QuadratureSpec{m, omega_unit, 0.0, 1.0, n}.validate();
  if (n > kOracleMaxN)
    throw InvalidArgument("oracle: N must be <= " + std::to_string(kOracleMaxN) +
                          " (the dense system is ill-conditioned beyond that)");
}

} // namespace

cplx moment_g(int alpha, double omega) {
  if (alpha < 0)
    throw InvalidArgument("moment_g: alpha must be nonnegative");
  return moment_quad(alpha, omega).to_double();
}

cplx rhs_f(int m, double omega, int beta, double h) {
  if (m < 1)
    throw InvalidArgument("rhs_f: m must be >= 1");
  if (beta < 0 || !(h > 0.0) || beta * h > 1.0 + 1e-12)
    throw InvalidArgument("rhs_f: need 0 <= beta <= N");
  const double xb = beta * h;
  if (omega == 0.0)
    return rhs_zero<double>(m, xb);
  if (!printed_ok(omega))
    return gauss_piece(m, omega, xb, 0.0, xb) + gauss_piece(m, omega, xb, xb, 1.0);
  return rhs_printed<quad>(m, quad(omega), quad(xb)).to_double();
}

OracleSystem assemble_oracle(int m, double omega_unit, int n) {
  check_oracle_args(m, omega_unit, n);
  OracleSystem sys;
  sys.m = m;
  sys.omega_unit = omega_unit;
  sys.n = n;
  sys.dim = n + m + 1;
  const auto dim = static_cast<std::size_t>(sys.dim);
  sys.matrix.assign(dim * dim, 0.0);
  sys.rhs.assign(dim, 0.0);
  const double h = 1.0 / n;
  auto at = [&](int i, int j) -> cplx& {
    return sys.matrix[static_cast<std::size_t>(i) * dim + static_cast<std::size_t>(j)];
  };
  for (int beta = 0; beta <= n; ++beta) {
    for (int g = 0; g <= n; ++g)
      at(beta, g) = g_kernel(m, h * beta - h * g);
    for (int al = 0; al < m; ++al)
      at(beta, n + 1 + al) = std::pow(h * beta, al);
    sys.rhs[static_cast<std::size_t>(beta)] = rhs_quad(m, omega_unit, beta, n).to_double();
  }
  for (int al = 0; al < m; ++al) {
    for (int g = 0; g <= n; ++g)
      at(n + 1 + al, g) = std::pow(h * g, al);
    sys.rhs[static_cast<std::size_t>(n + 1 + al)] = moment_quad(al, omega_unit).to_double();
  }
  return sys;
}

OracleSolution solve_oracle(int m, double omega_unit, int n) {
  check_oracle_args(m, omega_unit, n);
  const int dim = n + m + 1;

  // The matrix is real; build it in binary128 and round once for the LU.
  std::vector<quad> aq(static_cast<std::size_t>(dim * dim), quad(0));
  std::vector<quad> bre(static_cast<std::size_t>(dim)), bim(static_cast<std::size_t>(dim));
  auto aat = [&](int i, int j) -> quad& { return aq[static_cast<std::size_t>(i * dim + j)]; };
  for (int beta = 0; beta <= n; ++beta) {
    const quad xb = quad(beta) / n;
    for (int g = 0; g <= n; ++g)
      aat(beta, g) = g_kernel_t<quad>(m, xb - quad(g) / n);
    for (int al = 0; al < m; ++al)
      aat(beta, n + 1 + al) = pow_t<quad>(xb, al);
    const auto f = rhs_quad(m, omega_unit, beta, n);
    bre[static_cast<std::size_t>(beta)] = f.re;
    bim[static_cast<std::size_t>(beta)] = f.im;
  }
  for (int al = 0; al < m; ++al) {
    for (int g = 0; g <= n; ++g)
      aat(n + 1 + al, g) = pow_t<quad>(quad(g) / n, al);
    const auto gm = moment_quad(al, omega_unit);
    bre[static_cast<std::size_t>(n + 1 + al)] = gm.re;
    bim[static_cast<std::size_t>(n + 1 + al)] = gm.im;
  }

  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a(i, j) = static_cast<double>(aat(i, j));
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);

  // Mixed-precision refinement: double LU, binary128 residuals.
  std::vector<quad> xre(static_cast<std::size_t>(dim), quad(0)), xim = xre;
  Eigen::MatrixXd r(dim, 2);
  auto residual = [&] {
    quad worst = 0, bnorm = 0;
    for (int i = 0; i < dim; ++i) {
      quad sr = bre[static_cast<std::size_t>(i)], si = bim[static_cast<std::size_t>(i)];
      for (int j = 0; j < dim; ++j) {
        sr -= aat(i, j) * xre[static_cast<std::size_t>(j)];
        si -= aat(i, j) * xim[static_cast<std::size_t>(j)];
      }
      r(i, 0) = static_cast<double>(sr);
      r(i, 1) = static_cast<double>(si);
      worst += sr * sr + si * si;
      bnorm += bre[static_cast<std::size_t>(i)] * bre[static_cast<std::size_t>(i)] +
               bim[static_cast<std::size_t>(i)] * bim[static_cast<std::size_t>(i)];
    }
    return static_cast<double>(sqrt(worst / bnorm));
  };
  residual();
  for (int it = 0; it < 12; ++it) {
    const Eigen::MatrixXd d = lu.solve(r);
    double dmax = 0.0, xmax = 0.0;
    for (int i = 0; i < dim; ++i) {
      xre[static_cast<std::size_t>(i)] += d(i, 0);
      xim[static_cast<std::size_t>(i)] += d(i, 1);
      dmax = std::max(dmax, std::hypot(d(i, 0), d(i, 1)));
      xmax = std::max(xmax, std::hypot(static_cast<double>(xre[static_cast<std::size_t>(i)]),
                                       static_cast<double>(xim[static_cast<std::size_t>(i)])));
    }
    residual();
    if (dmax <= 1e-20 * xmax)
      break;
  }

  OracleSolution sol;
  // Residual of the returned (double) solution against the exact-data system.
  for (int i = 0; i < dim; ++i) {
    xre[static_cast<std::size_t>(i)] = quad(static_cast<double>(xre[static_cast<std::size_t>(i)]));
    xim[static_cast<std::size_t>(i)] = quad(static_cast<double>(xim[static_cast<std::size_t>(i)]));
  }
  sol.residual = residual();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  sol.condition = sv(0) / sv(sv.size() - 1);
  if (!(sol.residual <= 1e-8))
    throw NumericalFailure("oracle system is ill-conditioned: residual " +
                           std::to_string(sol.residual) + ", condition " +
                           std::to_string(sol.condition) + "; reduce N");

  auto& cv = sol.coeffs;
  cv.spec = QuadratureSpec{m, omega_unit, 0.0, 1.0, n};
  cv.provenance = Provenance::Oracle;
  const double x_h = omega_unit / n;
  const double n0 = std::nearbyint(x_h);
  cv.branch = std::abs(x_h - n0) < kResonanceTolerance
                  ? (n0 == 0.0 ? Branch::ZeroOmega : Branch::ResonantInteger)
                  : Branch::Generic;
  cv.aux.omega_used = omega_unit;
  cv.aux.condition = sol.condition;
  cv.aux.residual = sol.residual;
  for (int i = 0; i <= n; ++i)
    cv.values.emplace_back(static_cast<double>(xre[static_cast<std::size_t>(i)]),
                           static_cast<double>(xim[static_cast<std::size_t>(i)]));
  for (int al = 0; al < m; ++al)
    sol.poly.emplace_back(static_cast<double>(xre[static_cast<std::size_t>(n + 1 + al)]),
                          static_cast<double>(xim[static_cast<std::size_t>(n + 1 + al)]));
  return sol;
}

} // namespace oqf
