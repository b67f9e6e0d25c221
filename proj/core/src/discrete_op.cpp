#include "oqf/discrete_op.hpp"

#include "oqf/detail/extended.hpp"
#include "oqf/efpoly.hpp"
#include "oqf/error.hpp"

#include <algorithm>
#include <cmath>

namespace oqf {

using detail::ext_abs;
using detail::extended;

namespace {

// Operator coefficients evaluated in an arbitrary real type.
template <class Real>
struct OperatorCore {
  int m;
  Real h, p, c;
  std::vector<Real> q, amp;

  OperatorCore(int order, double step) : m(order), h(step) {
    Real fact = 1;
    for (int i = 2; i <= 2 * m - 1; ++i)
      fact *= i;
    p = fact / ipow(h, 2 * m);
    c = -ipow(Real(2), 2 * m - 1);
    if (m >= 2) {
      const auto even = ef_coefficients(2 * m - 2);
      const auto odd = ef_coefficients(2 * m - 1);
      for (double q0 : ef_roots_inside(2 * m - 2)) {
        Real qk = polish_root(std::span<const std::int64_t>(even), static_cast<Real>(q0));
        q.push_back(qk);
        amp.push_back(ipow(Real(1) - qk, 2 * m + 1) /
                      horner(std::span<const std::int64_t>(odd), qk));
      }
    }
  }

  Real at(long beta) const {
    const long b = beta < 0 ? -beta : beta;
    Real s = 0;
    if (b >= 2) {
      for (std::size_t k = 0; k < q.size(); ++k)
        s += amp[k] * ipow(q[k], b - 1);
      return p * s;
    }
    if (b == 1) {
      s = 1;
      for (Real a : amp)
        s += a;
      return p * s;
    }
    s = c;
    for (std::size_t k = 0; k < q.size(); ++k)
      s += amp[k] / q[k];
    return p * s;
  }

  Real kernel(Real x) const { return g_kernel_t<Real>(m, x); }
};

void check_order(int m, double h) {
  if (m < 1)
    throw InvalidArgument("discrete operator: order m must be >= 1");
  if (!(h > 0) || !std::isfinite(h))
    throw InvalidArgument("discrete operator: step h must be positive");
}

} // namespace

double g_kernel(int m, double x) {
  if (m < 1)
    throw InvalidArgument("g_kernel: order m must be >= 1");
  return g_kernel_t<double>(m, x);
}

DiscreteOperator::DiscreteOperator(int m, double h) : m_(m), h_(h) {
  check_order(m, h);
  OperatorCore<double> core(m, h);
  p_ = core.p;
  c_ = core.c;
  q_ = core.q;
  amp_ = core.amp;
}

double DiscreteOperator::operator()(long beta) const {
  const long b = beta < 0 ? -beta : beta;
  double s;
  if (b >= 2) {
    s = 0.0;
    for (std::size_t k = 0; k < q_.size(); ++k)
      s += amp_[k] * ipow(q_[k], b - 1);
  } else if (b == 1) {
    s = 1.0;
    for (double a : amp_)
      s += a;
  } else {
    s = c_;
    for (std::size_t k = 0; k < q_.size(); ++k)
      s += amp_[k] / q_[k];
  }
  return p_ * s;
}

double d_discrete(const DiscreteOperator& op, long beta) { return op(beta); }

namespace {

// Terms beyond the window decay like |q|^W but carry a factor up to W^{2m}
// from the kernel or the monomial.
double tail_size(const DiscreteOperator& op, int window) {
  double qmax = 0.0;
  for (double q : op.roots())
    qmax = std::max(qmax, std::abs(q));
  return std::pow(qmax, window) * std::pow(static_cast<double>(window), 2 * op.order());
}

bool window_ok(const DiscreteOperator& op, int window) {
  return op.roots().empty() ? window >= 2 : tail_size(op, window) < 1e-14;
}

} // namespace

int default_window(const DiscreteOperator& op) {
  int w = 2;
  while (w < 10000 && !window_ok(op, w))
    ++w;
  return w;
}

ConvolutionReport verify_convolution(const DiscreteOperator& op, int window) {
  if (window < 1)
    throw InvalidArgument("verify_convolution: window must be positive");
  const OperatorCore<extended> core(op.order(), op.step());
  const long w = window;
  std::vector<extended> d(static_cast<std::size_t>(w) + 1);
  for (long g = 0; g <= w; ++g)
    d[static_cast<std::size_t>(g)] = core.at(g);

  ConvolutionReport rep;
  rep.window = window;
  rep.window_adequate = window_ok(op, window);

  std::vector<extended> kern(static_cast<std::size_t>(w + w / 2) + 1);
  for (std::size_t n = 0; n < kern.size(); ++n)
    kern[n] = core.kernel(core.h * static_cast<extended>(n));

  extended worst = 0;
  for (long beta = -w / 2; beta <= w / 2; ++beta) {
    extended acc = 0;
    for (long g = -w; g <= w; ++g) {
      const long dist = beta - g;
      acc += d[static_cast<std::size_t>(g < 0 ? -g : g)] *
             kern[static_cast<std::size_t>(dist < 0 ? -dist : dist)];
    }
    acc *= core.h;
    if (beta == 0)
      acc -= 1;
    worst = std::max(worst, ext_abs(acc));
  }
  rep.max_residual = static_cast<double>(worst);

  // Tail beyond the window, measured at the worst-placed beta = window/2.
  if (!core.q.empty()) {
    extended tail = 0;
    for (long g = w + 1; g <= w + 20000; ++g) {
      extended term = ext_abs(core.h * core.at(g)) *
                      core.kernel(core.h * static_cast<extended>(g + w / 2));
      tail += 2 * term;
      if (term < tail * extended(1e-30) || term == 0)
        break;
    }
    rep.truncation_bound = static_cast<double>(tail);
  }
  return rep;
}

MomentReport verify_moments(const DiscreteOperator& op, int k, int window) {
  const int m = op.order();
  if (k < 0 || k > 2 * m)
    throw InvalidArgument("verify_moments: degree must lie in [0, 2m]");
  if (window < 1)
    throw InvalidArgument("verify_moments: window must be positive");
  const OperatorCore<extended> core(m, op.step());
  MomentReport rep;
  rep.degree = k;
  rep.window = window;
  rep.expected = k == 2 * m ? factorial(2 * m) : 0.0;

  extended acc = core.at(0) * (k == 0 ? extended(1) : extended(0));
  for (long b = 1; b <= window; ++b) {
    extended x = core.h * static_cast<extended>(b);
    extended xk = ipow(x, k);
    // beta and -beta together: odd powers cancel exactly.
    acc += core.at(b) * (xk + (k % 2 == 0 ? xk : -xk));
  }
  rep.value = static_cast<double>(acc);

  if (!core.q.empty()) {
    extended tail = 0;
    for (long b = window + 1; b <= window + 20000; ++b) {
      extended term = 2 * ext_abs(core.at(b)) * ipow(core.h * static_cast<extended>(b), k);
      tail += term;
      if (term < tail * extended(1e-30) || term == 0)
        break;
    }
    rep.truncation_bound = static_cast<double>(tail);
  }
  return rep;
}

} // namespace oqf
