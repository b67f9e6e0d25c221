#include "oqf/quadrature.hpp"

#include "oqf/efpoly.hpp"
#include "oqf/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

namespace oqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{2 pi i c}, with c reduced mod 1 first.
cplx cis_cycles(double c) {
  const double f = c - std::nearbyint(c);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

/// 1 - e^{2 pi i d} without cancellation for small d.
cplx one_minus_cis(double d) {
  const double s = std::sin(std::numbers::pi * d);
  return {2.0 * s * s, -std::sin(kTwoPi * d)};
}

// --- small dense real LU with partial pivoting ---------------------------

struct RealLU {
  int n = 0;
  std::vector<double> a; // row-major, overwritten by factors
  std::vector<int> piv;
};

RealLU lu_factor(std::vector<double> a, int n) {
  RealLU f{n, std::move(a), std::vector<int>(static_cast<std::size_t>(n))};
  auto at = [&](int i, int j) -> double& { return f.a[static_cast<std::size_t>(i * n + j)]; };
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k)))
        p = i;
    f.piv[static_cast<std::size_t>(k)] = p;
    if (at(p, k) == 0.0)
      throw NumericalFailure("boundary system is singular");
    if (p != k)
      for (int j = 0; j < n; ++j)
        std::swap(at(k, j), at(p, j));
    for (int i = k + 1; i < n; ++i) {
      at(i, k) /= at(k, k);
      for (int j = k + 1; j < n; ++j)
        at(i, j) -= at(i, k) * at(k, j);
    }
  }
  return f;
}

template <class T>
void lu_solve_inplace(const double* lu, const int* piv, int n, T* x) {
  for (int k = 0; k < n; ++k)
    std::swap(x[k], x[piv[k]]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      x[i] -= lu[i * n + j] * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j)
      x[i] -= lu[i * n + j] * x[j];
    x[i] /= lu[i * n + i];
  }
}

/// Solve with one step of iterative refinement; residual accumulated in
/// long double. Returns the relative residual. `work` needs n entries.
template <class T>
double solve_refined(const double* lu, const int* piv, const double* mat, int n, const T* rhs, T* x,
                     T* work) {
  for (int i = 0; i < n; ++i)
    x[i] = rhs[i];
  lu_solve_inplace(lu, piv, n, x);
  auto residual = [&] {
    double rmax = 0.0, bmax = 0.0;
    for (int i = 0; i < n; ++i) {
      long double re = std::real(rhs[i]), im = std::imag(rhs[i]);
      for (int j = 0; j < n; ++j) {
        const long double aij = mat[i * n + j];
        re -= aij * std::real(x[j]);
        im -= aij * std::imag(x[j]);
      }
      const cplx ri(static_cast<double>(re), static_cast<double>(im));
      if constexpr (std::is_same_v<T, cplx>)
        work[i] = ri;
      else
        work[i] = ri.real();
      rmax = std::max({rmax, std::abs(ri.real()), std::abs(ri.imag())});
      bmax = std::max({bmax, std::abs(std::real(rhs[i])), std::abs(std::imag(rhs[i]))});
    }
    return bmax > 0 ? rmax / bmax : rmax;
  };
  residual();
  lu_solve_inplace(lu, piv, n, work);
  for (int i = 0; i < n; ++i)
    x[i] += work[i];
  return residual();
}

double condition_1norm(const RealLU& f, const std::vector<double>& mat) {
  const int n = f.n;
  if (n == 0)
    return 1.0;
  double anorm = 0.0, inorm = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i)
      col += std::abs(mat[static_cast<std::size_t>(i * n + j)]);
    anorm = std::max(anorm, col);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    lu_solve_inplace(f.a.data(), f.piv.data(), n, e.data());
    double icol = 0.0;
    for (double v : e)
      icol += std::abs(v);
    inorm = std::max(inorm, icol);
  }
  return anorm * inorm;
}

// --- zeta tables for the small-|omega h| series --------------------------

constexpr int kSeriesTerms = 64;

const std::vector<double>& zeta_table() {
  static const std::vector<double> table = [] {
    std::vector<double> z(2 * kSeriesTerms + 2 * kMaxOrder + 8, 1.0);
    for (std::size_t s = 2; s < z.size(); ++s)
      z[s] = std::riemann_zeta(static_cast<double>(s));
    return z;
  }();
  return table;
}

/// Delta^i 0^j for 0 <= i, j <= 2 kMaxOrder, as doubles.
double dzt(int i, int j) {
  static const auto table = [] {
    std::array<std::array<double, 2 * kMaxOrder + 1>, 2 * kMaxOrder + 1> t{};
    for (int ii = 0; ii <= 2 * kMaxOrder; ++ii)
      for (int jj = 0; jj <= 2 * kMaxOrder; ++jj)
        t[static_cast<std::size_t>(ii)][static_cast<std::size_t>(jj)] =
            static_cast<double>(delta_zero(ii, jj));
    return t;
  }();
  return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

double binom_d(int n, int k) {
  static const auto table = [] {
    std::array<std::array<double, 2 * kMaxOrder + 1>, 2 * kMaxOrder + 1> t{};
    for (int nn = 0; nn <= 2 * kMaxOrder; ++nn)
      for (int kk = 0; kk <= nn; ++kk)
        t[static_cast<std::size_t>(nn)][static_cast<std::size_t>(kk)] =
            static_cast<double>(binomial(nn, kk));
    return t;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

double fact_d(int n) {
  static const auto table = [] {
    std::array<double, 2 * kMaxOrder + 1> t{};
    for (int i = 0; i <= 2 * kMaxOrder; ++i)
      t[static_cast<std::size_t>(i)] = factorial(i);
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

/// x^{-2m} (K^{-1} - 1) = sum_{n != 0} (n + x)^{-2m}, as a power series in x.
double lattice_tail(int m, double x) {
  // coef[m][l] = 2 C(2m + 2l - 1, 2l) zeta(2m + 2l)
  static const auto coef = [] {
    std::array<std::array<double, kSeriesTerms>, kMaxOrder + 1> t{};
    for (int mm = 1; mm <= kMaxOrder; ++mm)
      for (int l = 0; l < kSeriesTerms; ++l) {
        double c = 1.0;
        for (int i = 1; i <= 2 * l; ++i)
          c = c * (2 * mm - 1 + i) / i;
        t[static_cast<std::size_t>(mm)][static_cast<std::size_t>(l)] =
            2.0 * c * zeta_table()[static_cast<std::size_t>(2 * mm + 2 * l)];
      }
    return t;
  }();
  const auto& row = coef[static_cast<std::size_t>(m)];
  const double x2 = x * x;
  double sum = 0.0, xp = 1.0;
  for (int l = 0; l < kSeriesTerms; ++l) {
    const double term = row[static_cast<std::size_t>(l)] * xp;
    sum += term;
    if (term <= 1e-18 * sum)
      break;
    xp *= x2;
  }
  return sum;
}

/// Coefficient of (i x)^k in Lambda_j(2 pi i x): zeta(-j-k) (2 pi)^k / k!.
double lambda_coef(int j, int k) {
  static const auto table = [] {
    std::array<std::array<double, kSeriesTerms>, kMaxOrder> t{};
    for (int jj = 0; jj < kMaxOrder; ++jj)
      for (int kk = 0; kk < kSeriesTerms; ++kk) {
        const int n = jj + kk;
        double v = 0.0;
        if (n == 0) {
          v = -0.5;
        } else if (n % 2 == 1) {
          const double sign = ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
          double falling = 1.0; // n! / k!
          for (int i = kk + 1; i <= n; ++i)
            falling *= i;
          v = sign * 2.0 * zeta_table()[static_cast<std::size_t>(n + 1)] * falling /
              std::pow(kTwoPi, jj + 1);
        }
        t[static_cast<std::size_t>(jj)][static_cast<std::size_t>(kk)] = v;
      }
    return t;
  }();
  return table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
}

// Euler-Frobenius E_{2m-2} coefficients, cached per order.
const std::vector<std::int64_t>& even_ef(int m) {
  static const auto table = [] {
    std::array<std::vector<std::int64_t>, kMaxOrder + 1> t;
    for (int k = 1; k <= kMaxOrder; ++k)
      t[static_cast<std::size_t>(k)] = ef_coefficients(2 * k - 2);
    return t;
  }();
  return table[static_cast<std::size_t>(m)];
}

const std::vector<double>& even_roots(int m) {
  static const auto table = [] {
    std::array<std::vector<double>, kMaxOrder + 1> t;
    for (int k = 2; k <= kMaxOrder; ++k)
      t[static_cast<std::size_t>(k)] = ef_roots_inside(2 * k - 2);
    return t;
  }();
  return table[static_cast<std::size_t>(m)];
}

void check_order(int m) {
  if (m < 1 || m > kMaxOrder)
    throw InvalidArgument("order m must lie in [1, " + std::to_string(kMaxOrder) + "], got " +
                          std::to_string(m));
}

} // namespace

// --- spec / enums ----------------------------------------------------------

void QuadratureSpec::validate() const {
  if (m < 1)
    throw InvalidArgument("smoothness order m must be >= 1");
  if (m > kMaxOrder)
    throw InvalidArgument("smoothness order m must be <= " + std::to_string(kMaxOrder));
  if (n < 1)
    throw InvalidArgument("node count parameter N must be >= 1");
  if (n + 1 < m)
    throw InvalidArgument("the optimal formula needs N + 1 >= m (got N = " + std::to_string(n) +
                          ", m = " + std::to_string(m) + ")");
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(omega))
    throw InvalidArgument("interval endpoints and omega must be finite");
  if (!(a < b))
    throw InvalidArgument("interval must satisfy a < b");
}

std::string_view to_string(Branch b) {
  switch (b) {
  case Branch::ZeroOmega:
    return "zero_omega";
  case Branch::Generic:
    return "generic";
  case Branch::ResonantInteger:
    return "resonant_integer";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) {
  return p == Provenance::ClosedForm ? "closed_form" : "oracle";
}

double bernoulli(int n) {
  static constexpr std::array<std::array<double, 2>, 13> table{{
      {1, 1}, {-1, 2}, {1, 6}, {0, 1}, {-1, 30}, {0, 1}, {1, 42},
      {0, 1}, {-1, 30}, {0, 1}, {5, 66}, {0, 1}, {-691, 2730},
  }};
  if (n < 0 || n > 12)
    throw InvalidArgument("bernoulli: table covers B_0..B_12");
  return table[static_cast<std::size_t>(n)][0] / table[static_cast<std::size_t>(n)][1];
}

// --- K and the oscillation terms -------------------------------------------

double k_factor(int m, double omega, double h) {
  check_order(m);
  const double x = omega * h;
  if (std::abs(x) < kSeriesThreshold)
    return 1.0 / (1.0 + ipow(x * x, m) * lattice_tail(m, x));
  const double n0 = std::nearbyint(x);
  const double d = x - n0;
  if (d == 0.0)
    return 0.0;
  const auto& a = even_ef(m);
  double den = a[static_cast<std::size_t>(m - 1)];
  for (int al = 0; al <= m - 2; ++al)
    den += 2.0 * a[static_cast<std::size_t>(al)] * std::cos(kTwoPi * d * (m - 1 - al));
  // |sin(pi x)| = |sin(pi d)|; the even power drops the sign.
  const double sinc = std::sin(std::numbers::pi * d) / (std::numbers::pi * x);
  return ipow(sinc * sinc, m) * fact_d(2 * m - 1) / den;
}

OscillationTerms oscillation_terms_direct(int m, double x) {
  check_order(m);
  OscillationTerms t;
  t.k = k_factor(m, x, 1.0);
  const cplx z(0.0, kTwoPi * x);
  const double d = x - std::nearbyint(x);
  std::array<cplx, kMaxOrder> zp{}; // z^{j+1}
  zp[0] = z;
  for (int j = 1; j < m; ++j)
    zp[static_cast<std::size_t>(j)] = zp[static_cast<std::size_t>(j - 1)] * z;
  for (int j = 0; j < m; ++j)
    t.pole[static_cast<std::size_t>(j)] = (1.0 - t.k) / zp[static_cast<std::size_t>(j)];
  if (t.k == 0.0)
    return t; // exact resonance: Lambda terms only ever appear multiplied by K

  // Li_{-j}(u) = sum_s Delta^s0^j u^s / (1-u)^{s+1} for u = e^{+-z}, from
  // the reduced phase d.
  std::array<cplx, kMaxOrder> pw_plus{}, pw_minus{}; // u^s / (1-u)^{s+1}
  std::array<cplx, 2> u_pm;
  for (int sgn = 0; sgn < 2; ++sgn) {
    const double dd = sgn == 0 ? d : -d;
    const cplx u = cis_cycles(dd);
    u_pm[static_cast<std::size_t>(sgn)] = u;
    const cplx inv = 1.0 / one_minus_cis(dd);
    const cplx ratio = u * inv;
    auto& pw = sgn == 0 ? pw_plus : pw_minus;
    pw[0] = inv;
    for (int s = 1; s < m; ++s)
      pw[static_cast<std::size_t>(s)] = pw[static_cast<std::size_t>(s - 1)] * ratio;
  }
  for (int j = 0; j < m; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    cplx li_plus, li_minus;
    if (j == 0) {
      li_plus = pw_plus[0] * u_pm[0];
      li_minus = pw_minus[0] * u_pm[1];
    } else {
      for (int s = 1; s <= j; ++s) {
        li_plus += dzt(s, j) * pw_plus[static_cast<std::size_t>(s)];
        li_minus += dzt(s, j) * pw_minus[static_cast<std::size_t>(s)];
      }
    }
    // Li_{-j}(e^mu) - j! (-mu)^{-j-1}
    const cplx pole_minus = fact_d(j) / zp[uj];
    const cplx pole_plus = j % 2 == 0 ? -pole_minus : pole_minus;
    t.plus[uj] = li_plus - pole_plus;
    t.minus[uj] = li_minus - pole_minus;
  }
  return t;
}

OscillationTerms oscillation_terms_series(int m, double x) {
  check_order(m);
  OscillationTerms t;
  const double tail = lattice_tail(m, x);
  const double s = ipow(x * x, m) * tail;
  t.k = 1.0 / (1.0 + s);
  const cplx two_pi_i(0.0, kTwoPi);
  cplx tp = two_pi_i;
  for (int j = 0; j < m; ++j) {
    t.pole[static_cast<std::size_t>(j)] = ipow(x, 2 * m - j - 1) * tail / ((1.0 + s) * tp);
    tp *= two_pi_i;
  }

  // Lambda_j(mu) = sum_k zeta(-j-k) mu^k / k!, mu = +-2 pi i x. With
  // (i x)^k = i^k x^k the sums split by k mod 4 into real accumulators.
  for (int j = 0; j < m; ++j) {
    std::array<double, 4> acc{};
    double xp = 1.0;
    for (int k = 0; k < kSeriesTerms; ++k) {
      const double c = lambda_coef(j, k);
      if (c != 0.0) {
        const double term = c * xp;
        acc[static_cast<std::size_t>(k % 4)] += term;
        if (k > 0 && std::abs(term) <= 1e-18 * (std::abs(acc[0]) + std::abs(acc[1]) +
                                                std::abs(acc[2]) + std::abs(acc[3])))
          break;
      }
      xp *= x;
      if (xp == 0.0)
        break;
    }
    const double even = acc[0] - acc[2], odd = acc[1] - acc[3];
    t.plus[static_cast<std::size_t>(j)] = cplx(even, odd);
    t.minus[static_cast<std::size_t>(j)] = cplx(even, -odd);
  }
  return t;
}

OscillationTerms oscillation_terms(int m, double x) {
  return std::abs(x) < kSeriesThreshold ? oscillation_terms_series(m, x)
                                        : oscillation_terms_direct(m, x);
}

// --- compact form ----------------------------------------------------------

cplx CompactCoefficients::interior(int beta) const {
  cplx v = k_factor == 0.0 ? cplx(0.0) : k_factor * cis_cycles(omega * a + omega * h * beta);
  for (std::size_t k = 0; k < roots.size(); ++k)
    v += amp_a[k] * ipow(roots[k], beta) + amp_b[k] * ipow(roots[k], n - beta);
  return h * v;
}

std::vector<cplx> CompactCoefficients::expand() const {
  std::vector<cplx> out(static_cast<std::size_t>(n) + 1);
  out.front() = first;
  for (int beta = 1; beta < n; ++beta)
    out[static_cast<std::size_t>(beta)] = interior(beta);
  out.back() = last;
  return out;
}

// --- engine ----------------------------------------------------------------

CoefficientEngine::CoefficientEngine(int m, int n, double a, double b)
    : m_(m), n_(n), a_(a), b_(b), h_((b - a) / n) {
  QuadratureSpec{m, 0.0, a, b, n}.validate();
  if (m_ >= 2)
    q_ = even_roots(m_);
  for (double q : q_)
    qn_.push_back(ipow(q, n_));
  const int mm = m_ - 1;
  if (mm == 0)
    return;

  // Zero-omega amplitudes d_k.
  {
    std::vector<double> mat(static_cast<std::size_t>(mm * mm));
    std::vector<double> rhs(static_cast<std::size_t>(mm));
    for (int j = 1; j <= mm; ++j) {
      for (int k = 0; k < mm; ++k) {
        const double q = q_[static_cast<std::size_t>(k)];
        double s = 0.0;
        for (int i = 1; i <= j; ++i) {
          const double sgn = (i + 1) % 2 == 0 ? 1.0 : -1.0;
          s += (q + sgn * qn_[static_cast<std::size_t>(k)] * ipow(q, i)) / ipow(q - 1.0, i + 1) *
               dzt(i, j);
        }
        mat[static_cast<std::size_t>((j - 1) * mm + k)] = s;
      }
      rhs[static_cast<std::size_t>(j - 1)] = bernoulli(j + 1) / (j + 1);
    }
    auto f = lu_factor(mat, mm);
    d_.resize(static_cast<std::size_t>(mm));
    std::vector<double> work(static_cast<std::size_t>(mm));
    solve_refined(f.a.data(), f.piv.data(), mat.data(), mm, rhs.data(), d_.data(), work.data());
  }

  // Boundary system for a_k, b_k; unknowns ordered [a_1..a_M, b_1..b_M].
  const int dim = 2 * mm;
  mat_.assign(static_cast<std::size_t>(dim * dim), 0.0);
  auto at = [&](int i, int j) -> double& { return mat_[static_cast<std::size_t>(i * dim + j)]; };
  const double nn = static_cast<double>(n_);
  for (int k = 0; k < mm; ++k) {
    const double q = q_[static_cast<std::size_t>(k)];
    const double qn = qn_[static_cast<std::size_t>(k)];
    // S1(j) = sum_t q Delta^t0^j / (q-1)^{t+1},  S2(j) = sum_t q^{N+t} Delta^t0^j / (1-q)^{t+1}
    // S3(j) = sum_t q^t Delta^t0^j / (1-q)^{t+1}
    auto s1 = [&](int j) {
      double s = 0.0;
      for (int t = 1; t <= j; ++t)
        s += q * dzt(t, j) / ipow(q - 1.0, t + 1);
      return s;
    };
    auto s2 = [&](int j) {
      double s = 0.0;
      for (int t = 1; t <= j; ++t)
        s += qn * ipow(q, t) * dzt(t, j) / ipow(1.0 - q, t + 1);
      return s;
    };
    auto s3 = [&](int j) {
      double s = 0.0;
      for (int t = 1; t <= j; ++t)
        s += ipow(q, t) * dzt(t, j) / ipow(1.0 - q, t + 1);
      return s;
    };
    auto s4 = [&](int j) { // sum_t q^{N+1} Delta^t0^j / (q-1)^{t+1}
      double s = 0.0;
      for (int t = 1; t <= j; ++t)
        s += qn * q * dzt(t, j) / ipow(q - 1.0, t + 1);
      return s;
    };
    for (int j = 1; j <= mm; ++j) {
      at(j - 1, k) = s1(j);
      at(j - 1, mm + k) = s2(j);
      double ra = s3(j), rb = s4(j);
      for (int al = 1; al <= j; ++al) {
        const double w = std::pow(nn, j - al) * binom_d(j, al);
        ra -= w * s2(al);
        rb -= w * s1(al);
      }
      at(mm + j - 1, k) = ra;
      at(mm + j - 1, mm + k) = rb;
    }
  }
  auto f = lu_factor(mat_, dim);
  cond_ = condition_1norm(f, mat_);
  lu_ = std::move(f.a);
  piv_ = std::move(f.piv);
}

Branch CoefficientEngine::classify(double omega) const {
  if (omega == 0.0)
    return Branch::ZeroOmega;
  const double x = omega * h_;
  const double n0 = std::nearbyint(x);
  if (std::abs(x - n0) < kResonanceTolerance)
    return n0 == 0.0 ? Branch::ZeroOmega : Branch::ResonantInteger;
  return Branch::Generic;
}

CompactCoefficients CoefficientEngine::compact(double omega) const {
  CompactCoefficients c;
  compact_into(omega, c);
  return c;
}

void CoefficientEngine::compact_into(double omega, CompactCoefficients& out) const {
  switch (classify(omega)) {
  case Branch::ZeroOmega:
    fill_zero(out);
    return;
  case Branch::ResonantInteger:
    solve_oscillatory(std::nearbyint(omega * h_) / h_, true, out);
    return;
  case Branch::Generic:
    solve_oscillatory(omega, false, out);
    return;
  }
}

void CoefficientEngine::fill_zero(CompactCoefficients& c) const {
  c.branch = Branch::ZeroOmega;
  c.n = n_;
  c.h = h_;
  c.a = a_;
  c.omega = 0.0;
  c.k_factor = 1.0;
  c.roots = q_;
  c.amp_a.assign(d_.begin(), d_.end());
  c.amp_b.assign(d_.begin(), d_.end());
  double end = 0.5;
  for (std::size_t k = 0; k < q_.size(); ++k)
    end -= d_[k] * (q_[k] - qn_[k]) / (1.0 - q_[k]);
  c.first = c.last = h_ * end;
}

CompactCoefficients CoefficientEngine::compact_zero() const {
  CompactCoefficients c;
  fill_zero(c);
  return c;
}

CompactCoefficients CoefficientEngine::compact_generic(double omega) const {
  const double x = omega * h_;
  if (x != 0.0 && x == std::nearbyint(x))
    throw InvalidArgument("generic branch requires omega h not a nonzero integer");
  CompactCoefficients c;
  solve_oscillatory(omega, false, c);
  return c;
}

CompactCoefficients CoefficientEngine::compact_resonant(double omega) const {
  const double n0 = std::nearbyint(omega * h_);
  if (n0 == 0.0)
    throw InvalidArgument("resonant branch requires omega h near a nonzero integer");
  CompactCoefficients c;
  solve_oscillatory(n0 / h_, true, c);
  return c;
}

void CoefficientEngine::solve_oscillatory(double omega, bool resonant, CompactCoefficients& c) const {
  const int mm = m_ - 1;
  const double x = omega * h_;
  OscillationTerms t;
  if (resonant) {
    t.k = 0.0;
    const cplx z(0.0, kTwoPi * x);
    cplx zp = z;
    for (int j = 0; j < m_; ++j) {
      t.pole[static_cast<std::size_t>(j)] = 1.0 / zp;
      zp *= z;
    }
  } else {
    t = oscillation_terms(m_, x);
  }
  const cplx ea = cis_cycles(omega * a_);
  const cplx eb = cis_cycles(omega * b_);
  const double kk = t.k;

  c.branch = resonant ? Branch::ResonantInteger : Branch::Generic;
  c.n = n_;
  c.h = h_;
  c.a = a_;
  c.omega = omega;
  c.k_factor = kk;
  c.roots = q_;
  c.amp_a.resize(static_cast<std::size_t>(mm));
  c.amp_b.resize(static_cast<std::size_t>(mm));

  if (mm > 0) {
    const int dim = 2 * mm;
    std::array<cplx, 2 * kMaxOrder> rhs{}, sol{}, work{};
    const double nn = static_cast<double>(n_);
    for (int j = 1; j <= mm; ++j) {
      const double jf = fact_d(j);
      const auto uj = static_cast<std::size_t>(j);
      rhs[uj - 1] = ea * (jf * t.pole[uj] - kk * t.minus[uj]);
      const double sgn = (j + 1) % 2 == 0 ? 1.0 : -1.0;
      cplx r2 = ea * (sgn * jf * t.pole[uj] - kk * t.plus[uj]);
      double w = 1.0; // N^{j - al}, al descending
      for (int al = j; al >= 1; --al) {
        const auto ua = static_cast<std::size_t>(al);
        const double sa = al % 2 == 0 ? 1.0 : -1.0;
        r2 += eb * w * (sa * (jf / fact_d(j - al)) * t.pole[ua] + kk * binom_d(j, al) * t.plus[ua]);
        w *= nn;
      }
      rhs[static_cast<std::size_t>(mm + j - 1)] = r2;
    }
    const double res = solve_refined(lu_.data(), piv_.data(), mat_.data(), dim, rhs.data(),
                                     sol.data(), work.data());
    if (!(res <= 1e-6))
      throw NumericalFailure("boundary system residual " + std::to_string(res) +
                             " exceeds 1e-6 (condition " + std::to_string(cond_) + ")");
    for (int k = 0; k < mm; ++k) {
      c.amp_a[static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(k)];
      c.amp_b[static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(mm + k)];
    }
  }

  cplx first = ea * (-t.pole[0] + kk * (1.0 + t.minus[0]));
  cplx last = eb * (t.pole[0] + kk * (1.0 + t.plus[0]));
  for (int k = 0; k < mm; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double q = q_[uk], qn = qn_[uk];
    first += c.amp_a[uk] * (q / (q - 1.0)) + c.amp_b[uk] * (qn / (1.0 - q));
    last += c.amp_a[uk] * (qn / (1.0 - q)) + c.amp_b[uk] * (q / (q - 1.0));
  }
  c.first = h_ * first;
  c.last = h_ * last;
}

CoefficientVector CoefficientEngine::coefficients(double omega) const {
  const CompactCoefficients c = compact(omega);
  CoefficientVector out;
  out.spec = QuadratureSpec{m_, omega, a_, b_, n_};
  out.values = c.expand();
  out.branch = c.branch;
  out.provenance = Provenance::ClosedForm;
  out.aux.roots = q_;
  out.aux.d = d_;
  out.aux.a = c.amp_a;
  out.aux.b = c.amp_b;
  out.aux.k_factor = c.k_factor;
  out.aux.omega_used = c.omega;
  out.aux.condition = c.branch == Branch::ZeroOmega ? 1.0 : cond_;
  return out;
}

// --- free functions --------------------------------------------------------

namespace {

CoefficientVector from_compact(const QuadratureSpec& spec, const CoefficientEngine& eng,
                               const CompactCoefficients& c) {
  CoefficientVector out;
  out.spec = spec;
  out.values = c.expand();
  out.branch = c.branch;
  out.aux.roots = eng.roots();
  out.aux.d = eng.zero_amplitudes();
  out.aux.a = c.amp_a;
  out.aux.b = c.amp_b;
  out.aux.k_factor = c.k_factor;
  out.aux.omega_used = c.omega;
  out.aux.condition = c.branch == Branch::ZeroOmega ? 1.0 : eng.boundary_condition();
  return out;
}

} // namespace

CoefficientVector coefficients_zero_omega(const QuadratureSpec& spec) {
  spec.validate();
  if (spec.omega != 0.0)
    throw InvalidArgument("coefficients_zero_omega requires omega = 0");
  CoefficientEngine eng(spec.m, spec.n, spec.a, spec.b);
  return from_compact(spec, eng, eng.compact_zero());
}

CoefficientVector coefficients_generic(const QuadratureSpec& spec) {
  spec.validate();
  const double x = spec.omega * spec.step();
  if (x == std::nearbyint(x))
    throw InvalidArgument("coefficients_generic requires omega h not an integer");
  CoefficientEngine eng(spec.m, spec.n, spec.a, spec.b);
  return from_compact(spec, eng, eng.compact_generic(spec.omega));
}

CoefficientVector coefficients_resonant(const QuadratureSpec& spec) {
  spec.validate();
  CoefficientEngine eng(spec.m, spec.n, spec.a, spec.b);
  return from_compact(spec, eng, eng.compact_resonant(spec.omega));
}

CoefficientVector coefficients(const QuadratureSpec& spec) {
  spec.validate();
  CoefficientEngine eng(spec.m, spec.n, spec.a, spec.b);
  return from_compact(spec, eng, eng.compact(spec.omega));
}

CoefficientVector transform_unit_to_ab(const CoefficientVector& unit, double a, double b,
                                       double omega) {
  if (unit.spec.a != 0.0 || unit.spec.b != 1.0)
    throw InvalidArgument("transform_unit_to_ab expects coefficients on [0,1]");
  if (!(a < b))
    throw InvalidArgument("transform_unit_to_ab: interval must satisfy a < b");
  CoefficientVector out = unit;
  out.spec.a = a;
  out.spec.b = b;
  out.spec.omega = omega;
  const cplx factor = (b - a) * cis_cycles(omega * a);
  for (auto& v : out.values)
    v *= factor;
  return out;
}

ErrorNormReport error_norm_zero_omega(int m, int n) {
  QuadratureSpec{m, 0.0, 0.0, 1.0, n}.validate();
  CoefficientEngine eng(m, n, 0.0, 1.0);
  const double h = 1.0 / n;
  ErrorNormReport rep;
  rep.m = m;
  rep.n = n;
  rep.bernoulli = bernoulli(2 * m);
  const double f2m = factorial(2 * m);
  double roots_sum = 0.0;
  const auto& q = eng.roots();
  const auto& d = eng.zero_amplitudes();
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double qn = ipow(q[k], n);
    double inner = 0.0;
    for (int i = 1; i <= 2 * m; ++i) {
      const double sgn = i % 2 == 0 ? 1.0 : -1.0;
      inner += (-qn * ipow(q[k], i) + sgn * q[k]) / ipow(1.0 - q[k], i + 1) *
               dzt(i, 2 * m);
    }
    roots_sum += d[k] * inner;
  }
  const double val = ipow(h, 2 * m) * rep.bernoulli / f2m + 2.0 * ipow(h, 2 * m + 1) / f2m * roots_sum;
  rep.norm_sq = ((m + 1) % 2 == 0 ? 1.0 : -1.0) * val;
  return rep;
}

cplx integrate(const CoefficientVector& c, std::span<const cplx> samples) {
  if (samples.size() != c.values.size())
    throw InvalidArgument("integrate: expected " + std::to_string(c.values.size()) +
                          " samples, got " + std::to_string(samples.size()));
  cplx acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    acc += c.values[i] * samples[i];
  return acc;
}

cplx integrate(const QuadratureSpec& spec, std::span<const cplx> samples) {
  if (samples.size() != static_cast<std::size_t>(spec.n) + 1)
    throw InvalidArgument("integrate: expected N + 1 = " + std::to_string(spec.n + 1) +
                          " samples, got " + std::to_string(samples.size()));
  return integrate(coefficients(spec), samples);
}

cplx oscillatory_moment(int alpha, double omega, double a, double b) {
  if (alpha < 0)
    throw InvalidArgument("oscillatory_moment: alpha must be nonnegative");
  const cplx c(0.0, kTwoPi * omega);
  const double r = std::max(std::abs(a), std::abs(b));
  if (std::abs(c) * r < 2.0) {
    // sum_n c^n / n! (b^{alpha+n+1} - a^{alpha+n+1}) / (alpha+n+1)
    cplx acc = 0.0, cn = 1.0;
    for (int k = 0; k < 80; ++k) {
      const int p = alpha + k + 1;
      acc += cn * (std::pow(b, p) - std::pow(a, p)) / static_cast<double>(p);
      cn *= c / static_cast<double>(k + 1);
      if (std::abs(cn) * std::pow(r, p) < 1e-300)
        break;
    }
    return acc;
  }
  // Antiderivative e^{cx} sum_k (-1)^k alpha!/(alpha-k)! x^{alpha-k} / c^{k+1}.
  auto prim = [&](double x) {
    cplx s = 0.0;
    double fall = 1.0;
    cplx cp = c;
    for (int k = 0; k <= alpha; ++k) {
      s += (k % 2 == 0 ? 1.0 : -1.0) * fall * std::pow(x, alpha - k) / cp;
      fall *= alpha - k;
      cp *= c;
    }
    return cis_cycles(omega * x) * s;
  };
  return prim(b) - prim(a);
}

} // namespace oqf
