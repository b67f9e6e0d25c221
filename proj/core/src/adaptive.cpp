#include "oqf/adaptive.hpp"

#include "oqf/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace oqf {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Piece {
  double a, b;
  std::complex<double> value;
  double err_re, err_im;
  double worst() const { return std::max(err_re, err_im); }
  bool operator<(const Piece& o) const { return worst() < o.worst(); }
};

Piece evaluate(const std::function<std::complex<double>(double)>& f, double a, double b) {
  Piece p{a, b, {}, 0.0, 0.0};
  double e = 0.0;
  const double re = GK::integrate([&](double x) { return f(x).real(); }, a, b, 0, 0.0, &e);
  p.err_re = e;
  const double im = GK::integrate([&](double x) { return f(x).imag(); }, a, b, 0, 0.0, &e);
  p.err_im = e;
  p.value = {re, im};
  return p;
}

} // namespace

AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol, std::span<const double> breakpoints,
                                  int max_intervals) {
  if (!(a < b))
    throw InvalidArgument("integrate_adaptive: need a < b");
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b)
      cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  std::priority_queue<Piece> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] < cuts[i + 1])
      heap.push(evaluate(f, cuts[i], cuts[i + 1]));

  auto totals = [&] {
    auto copy = heap;
    double er = 0.0, ei = 0.0;
    while (!copy.empty()) {
      er += copy.top().err_re;
      ei += copy.top().err_im;
      copy.pop();
    }
    return std::max(er, ei);
  };

  AdaptiveResult res;
  double total_err = totals();
  while (total_err > abs_tol && static_cast<int>(heap.size()) < max_intervals) {
    Piece p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      heap.push(p);
      break;
    }
    Piece l = evaluate(f, p.a, mid), r = evaluate(f, mid, p.b);
    total_err += std::max(l.err_re + r.err_re - p.err_re, l.err_im + r.err_im - p.err_im);
    heap.push(l);
    heap.push(r);
    if (heap.size() % 64 == 0)
      total_err = totals();
  }
  total_err = totals();
  res.intervals = static_cast<int>(heap.size());
  res.error_estimate = total_err;
  res.converged = total_err <= abs_tol;
  // Sum in ascending position order for reproducibility.
  std::vector<Piece> pieces;
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const auto& p : pieces)
    res.value += p.value;
  return res;
}

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, std::span<const double> breakpoints) {
  return integrate_adaptive([&](double x) { return std::complex<double>(f(x), 0.0); }, a, b, abs_tol,
                            breakpoints)
      .value.real();
}

} // namespace oqf
