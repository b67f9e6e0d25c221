#pragma once

#include <cmath>
#include <vector>

namespace oqf {

/// G_m(x) = |x|^{2m-1} / (2 (2m-1)!), the fundamental solution of
/// d^{2m}/dx^{2m} on the line.
double g_kernel(int m, double x);

/// g_kernel in an arbitrary real type.
template <class Real>
Real g_kernel_t(int m, Real x) {
  Real fact = 1;
  for (int i = 2; i <= 2 * m - 1; ++i)
    fact *= i;
  Real ax = x < 0 ? Real(-x) : x;
  Real p = 1;
  for (int i = 0; i < 2 * m - 1; ++i)
    p *= ax;
  return p / (2 * fact);
}

/// Discrete analogue D_m(h*beta) of d^{2m}/dx^{2m} on the grid h*Z:
/// the grid function with h * (D_m * G_m) = delta.
class DiscreteOperator {
public:
  DiscreteOperator(int m, double h);

  int order() const { return m_; }
  double step() const { return h_; }
  /// p = (2m-1)! / h^{2m}
  double scale() const { return p_; }
  /// C = -2^{2m-1}
  double center() const { return c_; }
  /// A_k = (1 - q_k)^{2m+1} / E_{2m-1}(q_k)
  const std::vector<double>& amplitudes() const { return amp_; }
  /// Roots of E_{2m-2} inside (-1, 0), ascending.
  const std::vector<double>& roots() const { return q_; }

  double operator()(long beta) const;

private:
  int m_;
  double h_;
  double p_;
  double c_;
  std::vector<double> q_;
  std::vector<double> amp_;
};

double d_discrete(const DiscreteOperator& op, long beta);

/// Smallest W with max|q_k|^W W^{2m} < 1e-14, capped at 10^4 (2 when m = 1).
int default_window(const DiscreteOperator& op);

struct ConvolutionReport {
  int window = 0;
  /// max over |beta| <= window/2 of |h sum_{|gamma|<=window} D(h gamma) G(h beta - h gamma) - delta(beta)|
  double max_residual = 0.0;
  /// Upper bound of the neglected |gamma| > window terms at the worst beta.
  double truncation_bound = 0.0;
  /// False when the window violates max|q_k|^W W^{2m} < 1e-14.
  bool window_adequate = true;
};

/// The sums are carried out in extended precision with roots re-polished
/// there: the terms grow like |beta|^{2m-1}, so double rounding would
/// swamp the identity long before the truncation term does.
ConvolutionReport verify_convolution(const DiscreteOperator& op, int window);

struct MomentReport {
  int degree = 0;
  int window = 0;
  double value = 0.0;    // sum_{|beta|<=window} D(h beta) (h beta)^k
  double expected = 0.0; // 0 for k < 2m, (2m)! for k = 2m
  double truncation_bound = 0.0;
};

MomentReport verify_moments(const DiscreteOperator& op, int k, int window);

} // namespace oqf
