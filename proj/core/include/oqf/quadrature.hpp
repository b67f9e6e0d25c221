#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace oqf {

using cplx = std::complex<double>;

/// One instance of the formula
///
///   int_a^b e^{2 pi i omega x} phi(x) dx  ~=  sum_{beta=0}^{N} C_beta phi(a + h beta)
///
/// optimal in L_2^{(m)}[a,b]. omega is in cycles per unit length (the
/// kernel is e^{2 pi i omega x}), never radians.
struct QuadratureSpec {
  int m = 2;
  double omega = 0.0;
  double a = 0.0;
  double b = 1.0;
  int n = 8;

  double step() const { return (b - a) / n; }
  double node(int beta) const { return a + step() * beta; }
  /// Throws InvalidArgument unless m >= 1, n >= 1, a < b, N + 1 >= m and
  /// all values are finite.
  void validate() const;
};

/// Which closed form produced a coefficient vector.
enum class Branch { ZeroOmega, Generic, ResonantInteger };
enum class Provenance { ClosedForm, Oracle };

std::string_view to_string(Branch b);
std::string_view to_string(Provenance p);

/// Resonance tolerance on dist(omega h, Z). Closer than this, the generic
/// formula is replaced by its limit at the nearest grid resonance.
inline constexpr double kResonanceTolerance = 1e-6;

/// Largest m accepted by the coefficient engine.
inline constexpr int kMaxOrder = 6;

struct CoefficientAux {
  std::vector<double> roots;  // q_k, roots of E_{2m-2} in (-1, 0)
  std::vector<double> d;      // zero-omega boundary amplitudes d_k
  std::vector<cplx> a, b;     // boundary amplitudes a_k, b_k (d_k when omega = 0)
  double k_factor = 1.0;      // K_{omega,m}; 0 on the resonant branch
  double omega_used = 0.0;    // omega after snapping to a resonance
  double condition = 1.0;     // 1-norm condition number of the boundary system
  double residual = 0.0;      // relative residual of the boundary solve
};

struct CoefficientVector {
  QuadratureSpec spec;
  std::vector<cplx> values;
  Branch branch = Branch::Generic;
  Provenance provenance = Provenance::ClosedForm;
  CoefficientAux aux;
};

/// Coefficients in factored form:
///
///   C_beta = h (K e^{2 pi i omega (a + h beta)} + sum_k a_k q_k^beta + b_k q_k^{N-beta})
///
/// for 0 < beta < N, with the two end weights stored explicitly. The
/// zero-omega formula has the same shape with K = 1 and a_k = b_k = d_k.
struct CompactCoefficients {
  Branch branch = Branch::Generic;
  int n = 0;
  double h = 0.0;
  double a = 0.0;
  double omega = 0.0;   // the omega actually used (snapped on the resonant branch)
  double k_factor = 0;  // K_{omega,m}
  std::vector<double> roots;
  std::vector<cplx> amp_a, amp_b;
  cplx first, last;     // C_0 and C_N

  cplx interior(int beta) const;
  std::vector<cplx> expand() const;
};

/// K_{omega,m}: amplitude of the oscillatory interior term. Defined by
/// continuity at omega h = 0 (value 1) and at nonzero integers (value 0).
double k_factor(int m, double omega, double h);

/// Pieces of the closed forms that depend on omega only through
/// z = 2 pi i omega h. With Lambda_j the regular part of the polylogarithm
/// Li_{-j}(e^mu) = j! (-mu)^{-j-1} + Lambda_j(mu):
///
///   pole[j]  = (1 - K) / z^{j+1}
///   plus[j]  = Lambda_j(z)
///   minus[j] = Lambda_j(-z)
///
/// All right-hand sides and end weights are combinations of these. Near
/// z = 0 every term of the printed formulas grows like z^{-j-1} while their
/// combinations stay bounded, so the small-|omega h| regime is evaluated
/// from convergent zeta series instead.
struct OscillationTerms {
  double k = 1.0;
  std::array<cplx, kMaxOrder> pole{}, plus{}, minus{}; // entries 0..m-1 used
};

/// Above this |omega h| the printed formulas are used directly.
inline constexpr double kSeriesThreshold = 0.25;

OscillationTerms oscillation_terms(int m, double omega_h);
/// Printed-formula route, exposed so tests can compare it with the series.
OscillationTerms oscillation_terms_direct(int m, double omega_h);
OscillationTerms oscillation_terms_series(int m, double omega_h);

/// Builds coefficients for one (m, N, [a,b]) and any omega. The boundary
/// system matrix does not depend on omega, so it is factored once and
/// reused: building coefficients for many frequencies costs one small
/// back-substitution each.
class CoefficientEngine {
public:
  CoefficientEngine(int m, int n, double a, double b);

  int order() const { return m_; }
  int intervals() const { return n_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  double step() const { return h_; }
  const std::vector<double>& roots() const { return q_; }

  /// Dispatch: omega h within the resonance tolerance of 0 gives the
  /// zero-omega formula, of a nonzero integer the resonant formula at that
  /// integer, anything else the generic formula.
  Branch classify(double omega) const;

  CompactCoefficients compact(double omega) const;
  /// Same as compact(), reusing the storage of `out`.
  void compact_into(double omega, CompactCoefficients& out) const;
  CompactCoefficients compact_zero() const;
  CompactCoefficients compact_generic(double omega) const;
  CompactCoefficients compact_resonant(double omega) const;

  CoefficientVector coefficients(double omega) const;
  double boundary_condition() const { return cond_; }
  const std::vector<double>& zero_amplitudes() const { return d_; }

private:
  void solve_oscillatory(double omega, bool resonant, CompactCoefficients& c) const;
  void fill_zero(CompactCoefficients& c) const;

  int m_, n_;
  double a_, b_, h_;
  std::vector<double> q_;
  std::vector<double> qn_; // q_k^N
  std::vector<double> d_;  // zero-omega amplitudes
  // LU factors of the (2m-2) x (2m-2) boundary system.
  std::vector<double> lu_;
  std::vector<double> mat_;
  std::vector<int> piv_;
  double cond_ = 1.0;
};

CoefficientVector coefficients_zero_omega(const QuadratureSpec& spec);
CoefficientVector coefficients_generic(const QuadratureSpec& spec);
CoefficientVector coefficients_resonant(const QuadratureSpec& spec);
CoefficientVector coefficients(const QuadratureSpec& spec);

/// Maps coefficients computed on [0,1] with frequency omega (b - a) to
/// [a,b]: C[a,b]_beta = (b - a) e^{2 pi i omega a} C[0,1]_beta.
CoefficientVector transform_unit_to_ab(const CoefficientVector& unit, double a, double b,
                                       double omega);

struct ErrorNormReport {
  int m = 0;
  int n = 0;
  double norm_sq = 0.0;
  double bernoulli = 0.0; // B_{2m}
};

/// Squared norm of the optimal error functional on [0,1] at omega = 0.
ErrorNormReport error_norm_zero_omega(int m, int n);

/// sum_beta C_beta samples[beta]; samples[beta] = phi(a + h beta).
cplx integrate(const QuadratureSpec& spec, std::span<const cplx> samples);
cplx integrate(const CoefficientVector& c, std::span<const cplx> samples);

/// Exact Bernoulli number B_n for 0 <= n <= 12.
double bernoulli(int n);

/// int_a^b e^{2 pi i omega x} x^alpha dx in closed form.
cplx oscillatory_moment(int alpha, double omega, double a, double b);

} // namespace oqf
