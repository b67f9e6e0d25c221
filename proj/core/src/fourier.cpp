#include "oqf/fourier.hpp"

#include "oqf/efpoly.hpp"
#include "oqf/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace oqf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx cis_cycles(double c) {
  const double f = c - std::nearbyint(c);
  return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

} // namespace

void SampledSignal::validate() const {
  if (values.size() < 2)
    throw InvalidArgument("signal needs at least two samples");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgument("signal extent must satisfy a < b");
}

SpectrumGrid SpectrumGrid::band(double omega_max, int intervals) {
  SpectrumGrid g;
  g.omega_max = omega_max;
  g.intervals = intervals;
  g.validate();
  g.values.assign(static_cast<std::size_t>(intervals) + 1, 0.0);
  return g;
}

double SpectrumGrid::omega(int n) const {
  // Symmetric construction keeps omega(M - n) == -omega(n) exactly.
  return (2.0 * n - intervals) * omega_max / intervals;
}

void SpectrumGrid::validate() const {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw InvalidArgument("spectrum band edge must be positive");
  if (intervals < 1)
    throw InvalidArgument("spectrum needs at least one frequency interval");
  if (!values.empty() && values.size() != static_cast<std::size_t>(intervals) + 1)
    throw InvalidArgument("spectrum has " + std::to_string(values.size()) + " values, expected " +
                          std::to_string(intervals + 1));
}

double nyquist_band(double dt) {
  if (!(dt > 0.0))
    throw InvalidArgument("detector spacing must be positive");
  return 0.5 / dt;
}

// --- forward -----------------------------------------------------------------

ForwardPlan::ForwardPlan(double a, double b, int n, double omega_max, int freq_intervals, int m,
                         bool nonnegative_only)
    : a_(a), b_(b), n_(n), w_(omega_max), fm_(freq_intervals), m_(m),
      first_(nonnegative_only ? (freq_intervals + 1) / 2 : 0) {
  const SpectrumGrid grid = SpectrumGrid::band(omega_max, freq_intervals);
  const CoefficientEngine engine(m, n, a, b);
  const auto row = static_cast<std::size_t>(n) + 1;
  weights_.assign(row * (static_cast<std::size_t>(fm_) + 1), cplx(0.0));
  CompactCoefficients c;
  for (int k = first_; k <= fm_; ++k) {
    engine.compact_into(-grid.omega(k), c);
    const auto w = c.expand();
    std::copy(w.begin(), w.end(), weights_.begin() + static_cast<std::ptrdiff_t>(row * static_cast<std::size_t>(k)));
  }
}

std::span<const cplx> ForwardPlan::weights(int n) const {
  const auto row = static_cast<std::size_t>(n_) + 1;
  return std::span<const cplx>(weights_).subspan(row * static_cast<std::size_t>(n), row);
}

SpectrumGrid ForwardPlan::apply(std::span<const cplx> samples) const {
  if (samples.size() != static_cast<std::size_t>(n_) + 1)
    throw InvalidArgument("forward transform: expected " + std::to_string(n_ + 1) + " samples");
  SpectrumGrid s = SpectrumGrid::band(w_, fm_);
  for (int k = first_; k <= fm_; ++k) {
    const auto w = weights(k);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      acc += w[i] * samples[i];
    s.values[static_cast<std::size_t>(k)] = acc;
  }
  return s;
}

SpectrumGrid ForwardPlan::apply(std::span<const double> samples) const {
  if (samples.size() != static_cast<std::size_t>(n_) + 1)
    throw InvalidArgument("forward transform: expected " + std::to_string(n_ + 1) + " samples");
  SpectrumGrid s = SpectrumGrid::band(w_, fm_);
  for (int k = first_; k <= fm_; ++k) {
    const auto w = weights(k);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      re += w[i].real() * samples[i];
      im += w[i].imag() * samples[i];
    }
    s.values[static_cast<std::size_t>(k)] = {re, im};
  }
  return s;
}

SpectrumGrid forward_transform(const SampledSignal& signal, const SpectrumGrid& freqs, int m) {
  signal.validate();
  freqs.validate();
  const ForwardPlan plan(signal.a, signal.b, signal.intervals(), freqs.omega_max, freqs.intervals, m);
  return plan.apply(std::span<const cplx>(signal.values));
}

// --- inverse -----------------------------------------------------------------

namespace {

int engine_intervals(int freq_intervals, InversePlan::Band band) {
  if (band == InversePlan::Band::Full)
    return freq_intervals;
  if (freq_intervals < 2 || freq_intervals % 2 != 0)
    throw InvalidArgument("half-band inverse needs an even number of frequency intervals");
  return freq_intervals / 2;
}

} // namespace

InversePlan::InversePlan(double omega_max, int freq_intervals, int m, Band band)
    : fm_(freq_intervals), band_(band),
      engine_(m, engine_intervals(freq_intervals, band), band == Band::Full ? -omega_max : 0.0,
              omega_max) {}

InversePlan::Prepared InversePlan::prepare(const SpectrumGrid& spectrum) const {
  spectrum.validate();
  const int mm = engine_.intervals();
  if (spectrum.intervals != fm_ || spectrum.omega_max != engine_.upper())
    throw InvalidArgument("inverse transform: spectrum grid does not match the plan");
  const int first = fm_ - mm;
  Prepared p;
  p.ramped.resize(static_cast<std::size_t>(mm) + 1);
  for (int n = 0; n <= mm; ++n)
    p.ramped[static_cast<std::size_t>(n)] =
        spectrum.values[static_cast<std::size_t>(first + n)] * std::abs(spectrum.omega(first + n));
  for (double q : engine_.roots()) {
    cplx u = 0.0, v = 0.0;
    // u = sum_{n=1}^{M-1} q^n F_n and v = sum q^{M-n} F_n by Horner.
    for (int n = mm - 1; n >= 1; --n)
      u = u * q + p.ramped[static_cast<std::size_t>(n)];
    for (int n = 1; n <= mm - 1; ++n)
      v = v * q + p.ramped[static_cast<std::size_t>(n)];
    p.u.push_back(u * q);
    p.v.push_back(v * q);
  }
  return p;
}

cplx InversePlan::evaluate(const Prepared& p, double t) const {
  double re = 0.0, im = 0.0;
  evaluate_many(p, std::span<const double>(&t, 1), std::span<double>(&re, 1), std::span<double>(&im, 1));
  return {re, im};
}

void InversePlan::evaluate_many(const Prepared& p, std::span<const double> ts, std::span<double> re,
                                std::span<double> im) const {
  if (re.size() != ts.size() || (!im.empty() && im.size() != ts.size()))
    throw InvalidArgument("evaluate_many: output size mismatch");
  constexpr std::size_t kBatch = 64;
  const int mm = engine_.intervals();
  const double h = engine_.step();
  const double a = engine_.lower();
  const std::size_t nk = engine_.roots().size();
  const cplx f0 = p.ramped.front(), fm = p.ramped.back();

  std::array<double, kBatch> zr{}, zi{}, ar{}, ai{};
  std::array<cplx, kBatch> base{};
  thread_local CompactCoefficients c;

  for (std::size_t start = 0; start < ts.size(); start += kBatch) {
    const std::size_t cnt = std::min(kBatch, ts.size() - start);
    bool any_k = false;
    for (std::size_t i = 0; i < cnt; ++i) {
      engine_.compact_into(ts[start + i], c);
      cplx q = c.first * f0 + c.last * fm;
      cplx bsum = 0.0;
      for (std::size_t k = 0; k < nk; ++k)
        bsum += c.amp_a[k] * p.u[k] + c.amp_b[k] * p.v[k];
      base[i] = q + h * bsum;
      const cplx z = cis_cycles(c.omega * h);
      zr[i] = z.real();
      zi[i] = z.imag();
      // Phase of the n = 1 node, folded into the final scale.
      const cplx e1 = c.k_factor == 0.0 ? cplx(0.0) : h * c.k_factor * cis_cycles(c.omega * a + c.omega * h);
      ar[i] = e1.real();
      ai[i] = e1.imag();
      any_k = any_k || c.k_factor != 0.0;
    }
    if (any_k && mm >= 2) {
      // Horner in z over F_{M-1}..F_1, across the batch.
      std::array<double, kBatch> sr{}, si{};
      for (int n = mm - 1; n >= 1; --n) {
        const double fr = p.ramped[static_cast<std::size_t>(n)].real();
        const double fi = p.ramped[static_cast<std::size_t>(n)].imag();
        for (std::size_t i = 0; i < kBatch; ++i) {
          const double nr = sr[i] * zr[i] - si[i] * zi[i] + fr;
          const double ni = sr[i] * zi[i] + si[i] * zr[i] + fi;
          sr[i] = nr;
          si[i] = ni;
        }
      }
      for (std::size_t i = 0; i < cnt; ++i)
        base[i] += cplx(ar[i], ai[i]) * cplx(sr[i], si[i]);
    }
    if (band_ == Band::Half) {
      for (std::size_t i = 0; i < cnt; ++i) {
        re[start + i] = 2.0 * base[i].real();
        if (!im.empty())
          im[start + i] = 0.0;
      }
      continue;
    }
    for (std::size_t i = 0; i < cnt; ++i) {
      re[start + i] = base[i].real();
      if (!im.empty())
        im[start + i] = base[i].imag();
    }
  }
}

cplx InversePlan::evaluate_direct(const SpectrumGrid& spectrum, double t) const {
  const Prepared p = prepare(spectrum);
  const auto w = engine_.coefficients(t).values;
  cplx acc = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n)
    acc += w[n] * p.ramped[n];
  return band_ == Band::Half ? cplx(2.0 * acc.real(), 0.0) : acc;
}

cplx filtered_inverse(const SpectrumGrid& spectrum, double t, int m) {
  spectrum.validate();
  const InversePlan plan(spectrum.omega_max, spectrum.intervals, m);
  return plan.evaluate(plan.prepare(spectrum), t);
}

// --- DFT baseline --------------------------------------------------------------

namespace {

std::vector<cplx> twiddles(std::size_t l) {
  std::vector<cplx> tw(l);
  for (std::size_t r = 0; r < l; ++r)
    tw[r] = cis_cycles(-static_cast<double>(r) / static_cast<double>(l));
  return tw;
}

std::vector<cplx> dft_with(std::span<const cplx> x, const std::vector<cplx>& tw, bool inverse) {
  const std::size_t l = x.size();
  std::vector<cplx> out(l);
  for (std::size_t k = 0; k < l; ++k) {
    cplx acc = 0.0;
    std::size_t r = 0;
    for (std::size_t n = 0; n < l; ++n) {
      const cplx w = inverse ? std::conj(tw[r]) : tw[r];
      acc += x[n] * w;
      r += k;
      if (r >= l)
        r -= l;
    }
    out[k] = inverse ? acc / static_cast<double>(l) : acc;
  }
  return out;
}

} // namespace

std::vector<cplx> dft(std::span<const cplx> x) { return dft_with(x, twiddles(x.size()), false); }

std::vector<cplx> idft(std::span<const cplx> x) { return dft_with(x, twiddles(x.size()), true); }

DftRampFilter::DftRampFilter(int n, double dt, int padded, RampKind kind) : n_(n), dt_(dt) {
  if (n < 2)
    throw InvalidArgument("ramp filter needs at least two samples");
  if (!(dt > 0.0))
    throw InvalidArgument("detector spacing must be positive");
  if (padded == 0) {
    l_ = 1;
    while (l_ < 2 * n)
      l_ *= 2;
  } else {
    if (padded < n)
      throw InvalidArgument("padded length must be >= the projection length");
    l_ = padded;
  }
  twiddle_ = twiddles(static_cast<std::size_t>(l_));
  ramp_.resize(static_cast<std::size_t>(l_));
  if (kind == RampKind::Bins) {
    for (int k = 0; k < l_; ++k) {
      const int kk = k <= l_ / 2 ? k : k - l_;
      ramp_[static_cast<std::size_t>(k)] = std::abs(kk) / (l_ * dt_);
    }
    return;
  }
  // dt * DFT of the kernel laid out circularly; the kernel is even, so the
  // transform is real.
  std::vector<double> h(static_cast<std::size_t>(l_), 0.0);
  h[0] = 0.25 / (dt_ * dt_);
  for (int k = 1; k < l_; ++k) {
    const int kk = k <= l_ / 2 ? k : k - l_;
    if (kk % 2 != 0) {
      const double d = std::numbers::pi * kk * dt_;
      h[static_cast<std::size_t>(k)] = -1.0 / (d * d);
    }
  }
  const auto l = static_cast<std::size_t>(l_);
  for (std::size_t k = 0; k < l; ++k) {
    double acc = 0.0;
    std::size_t r = 0;
    for (std::size_t t = 0; t < l; ++t) {
      acc += h[t] * twiddle_[r].real();
      r += k;
      if (r >= l)
        r -= l;
    }
    ramp_[k] = dt_ * acc;
  }
}

std::vector<double> DftRampFilter::apply(std::span<const double> projection) const {
  return apply_extended(projection, 0);
}

std::vector<double> DftRampFilter::apply_extended(std::span<const double> projection, int margin) const {
  if (projection.size() != static_cast<std::size_t>(n_))
    throw InvalidArgument("ramp filter: expected " + std::to_string(n_) + " samples");
  if (margin < 0 || 2 * margin > l_ - n_)
    throw InvalidArgument("ramp filter: margin " + std::to_string(margin) + " exceeds the zero padding");
  const auto l = static_cast<std::size_t>(l_);
  // Forward DFT of the zero-padded real projection: only the first n
  // inputs are nonzero.
  std::vector<cplx> spec(l);
  for (std::size_t k = 0; k < l; ++k) {
    double re = 0.0, im = 0.0;
    std::size_t r = 0;
    for (std::size_t t = 0; t < projection.size(); ++t) {
      re += projection[t] * twiddle_[r].real();
      im += projection[t] * twiddle_[r].imag();
      r += k;
      if (r >= l)
        r -= l;
    }
    spec[k] = cplx(re, im) * ramp_[k];
  }
  // Inverse DFT at samples -margin .. n + margin - 1 (negative indices wrap
  // into the padding), real part.
  std::vector<double> out(static_cast<std::size_t>(n_ + 2 * margin));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const long j = static_cast<long>(i) - margin;
    const auto t = static_cast<std::size_t>(j < 0 ? j + l_ : j);
    double acc = 0.0;
    std::size_t r = 0;
    for (std::size_t k = 0; k < l; ++k) {
      // Re(X_k e^{+2 pi i k t / L})
      acc += spec[k].real() * twiddle_[r].real() + spec[k].imag() * twiddle_[r].imag();
      r += t;
      if (r >= l)
        r -= l;
    }
    out[i] = acc / static_cast<double>(l);
  }
  return out;
}

} // namespace oqf
