#pragma once

#include "oqf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace oqf::test {

/// max_i |x_i - y_i| / max_i |y_i|
inline double max_rel_diff(std::span<const cplx> x, std::span<const cplx> y) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diff = std::max(diff, std::abs(x[i] - y[i]));
    scale = std::max(scale, std::abs(y[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

inline double max_abs_diff(std::span<const cplx> x, std::span<const cplx> y) {
  double diff = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    diff = std::max(diff, std::abs(x[i] - y[i]));
  return diff;
}

inline std::vector<cplx> sample(const QuadratureSpec& spec, auto&& f) {
  std::vector<cplx> out(static_cast<std::size_t>(spec.n) + 1);
  for (int beta = 0; beta <= spec.n; ++beta)
    out[static_cast<std::size_t>(beta)] = f(spec.node(beta));
  return out;
}

} // namespace oqf::test
