#pragma once

#include "oqf/quadrature.hpp"

#include <span>
#include <vector>

namespace oqf {

/// Samples phi(a + h beta), beta = 0..N.
struct SampledSignal {
  double a = -1.0;
  double b = 1.0;
  std::vector<cplx> values;

  int intervals() const { return static_cast<int>(values.size()) - 1; }
  double step() const { return (b - a) / intervals(); }
  void validate() const;
};

/// Uniform frequency grid omega_n = -W + n (2W / M), n = 0..M, with one
/// value per node.
struct SpectrumGrid {
  double omega_max = 0.0; // W
  int intervals = 0;      // M
  std::vector<cplx> values;

  static SpectrumGrid band(double omega_max, int intervals);
  double omega_min() const { return -omega_max; }
  double spacing() const { return 2.0 * omega_max / intervals; }
  double omega(int n) const;
  void validate() const;
};

/// Default band edge for detector spacing dt: the Nyquist frequency 1/(2 dt).
double nyquist_band(double dt);

/// Forward transform S(omega_n) = int_a^b e^{-2 pi i omega_n t} P(t) dt by
/// the optimal formula. Weights are built once per grid and reused for
/// every signal of that size.
class ForwardPlan {
public:
  /// With `nonnegative_only` the rows for omega_n < 0 stay zero; enough for
  /// a half-band inverse of a real signal.
  ForwardPlan(double a, double b, int n, double omega_max, int freq_intervals, int m,
              bool nonnegative_only = false);

  int order() const { return m_; }
  int signal_intervals() const { return n_; }
  int freq_intervals() const { return fm_; }
  double omega_max() const { return w_; }
  /// Weights C_beta for frequency -omega_n, row n.
  std::span<const cplx> weights(int n) const;

  SpectrumGrid apply(std::span<const cplx> samples) const;
  SpectrumGrid apply(std::span<const double> samples) const;

private:
  double a_, b_;
  int n_;
  double w_;
  int fm_;
  int m_;
  int first_; // first computed row
  std::vector<cplx> weights_; // (fm_ + 1) x (n_ + 1)
};

SpectrumGrid forward_transform(const SampledSignal& signal, const SpectrumGrid& freqs, int m);

/// Filtered inverse Q(t) = int_{-W}^{W} S(omega) |omega| e^{2 pi i omega t} d omega,
/// by the optimal formula over the frequency grid with oscillation
/// parameter t. Q is evaluated at each requested t; nothing is tabulated
/// or interpolated.
class InversePlan {
public:
  /// Quadrature interval for the filtered inverse.
  enum class Band {
    Full, // [-W, W] with M intervals
    Half  // [0, W] with M/2 intervals, Q = 2 Re(...); real projections only, M even
  };

  InversePlan(double omega_max, int freq_intervals, int m, Band band = Band::Full);

  /// Spectrum data with the ramp applied and the boundary sums
  /// U_k = sum_n q_k^n F_n, V_k = sum_n q_k^{M-n} F_n precomputed. In the
  /// half band only the nodes omega >= 0 are kept.
  struct Prepared {
    std::vector<cplx> ramped; // F_n = S(omega_n) |omega_n|
    std::vector<cplx> u, v;
  };

  int order() const { return engine_.order(); }
  int freq_intervals() const { return fm_; }
  double omega_max() const { return engine_.upper(); }
  Band band() const { return band_; }

  Prepared prepare(const SpectrumGrid& spectrum) const;

  /// Factored evaluation: O(M) per t.
  cplx evaluate(const Prepared& p, double t) const;
  /// Batched factored evaluation; the O(M) trigonometric sums run across
  /// the batch so they vectorize. `re`/`im` must have ts.size() entries;
  /// `im` may be empty.
  void evaluate_many(const Prepared& p, std::span<const double> ts, std::span<double> re,
                     std::span<double> im) const;
  /// Reference path: expand all M+1 weights and take the dot product.
  cplx evaluate_direct(const SpectrumGrid& spectrum, double t) const;

  const CoefficientEngine& engine() const { return engine_; }

private:
  int fm_;
  Band band_;
  CoefficientEngine engine_;
};

cplx filtered_inverse(const SpectrumGrid& spectrum, double t, int m);

// --- DFT baseline ------------------------------------------------------------

/// X_k = sum_n x_n e^{-2 pi i k n / L}, O(L^2).
std::vector<cplx> dft(std::span<const cplx> x);
/// x_n = (1/L) sum_k X_k e^{2 pi i k n / L}.
std::vector<cplx> idft(std::span<const cplx> x);

/// Discrete form of the |omega| ramp used by the DFT baseline.
enum class RampKind {
  /// DFT of the band-limited Ram-Lak kernel h(0) = 1/(4 dt^2),
  /// h(n) = -1/(pi n dt)^2 for odd n, 0 for even n != 0. Keeps the zero
  /// bin positive, which avoids the DC offset of the bare bin ramp.
  SpatialKernel,
  /// |omega_k| with omega_k = k / (L dt) folded to [-L/2, L/2].
  Bins
};

/// Ram-Lak filtering of one projection through the DFT: zero-pad to
/// `padded` samples (0 picks the next power of two >= 2 n), multiply by the
/// ramp, invert and return the first n samples. Units match the continuous
/// filtered projection int S(omega) |omega| e^{2 pi i omega t} d omega.
class DftRampFilter {
public:
  DftRampFilter(int n, double dt, int padded = 0, RampKind kind = RampKind::SpatialKernel);

  int size() const { return n_; }
  int padded() const { return l_; }
  std::span<const double> ramp() const { return ramp_; }
  std::vector<double> apply(std::span<const double> projection) const;
  /// Filtered samples at detector indices -margin .. n + margin - 1; the
  /// padding supplies the values beyond the detector range. Needs
  /// 2 margin <= padded() - size().
  std::vector<double> apply_extended(std::span<const double> projection, int margin) const;

private:
  int n_, l_;
  double dt_;
  std::vector<cplx> twiddle_; // e^{-2 pi i r / L}, r = 0..L-1
  std::vector<double> ramp_;
};

} // namespace oqf
