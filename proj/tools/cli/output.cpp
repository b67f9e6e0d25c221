#include "output.hpp"

#include "oqf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace oqf::cli {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f)
    throw InvalidArgument("cannot open '" + path + "' for writing");
  f << text;
  if (!f)
    throw InvalidArgument("write failed for '" + path + "'");
}

Json number_or_sentinel(double v) {
  if (std::isnan(v))
    return nullptr;
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return v;
}

Json exactness_report(const CoefficientVector& c) {
  const auto& s = c.spec;
  Json rows = Json::array();
  for (int alpha = 0; alpha < s.m; ++alpha) {
    cplx sum = 0.0;
    for (int beta = 0; beta <= s.n; ++beta)
      sum += c.values[static_cast<std::size_t>(beta)] * std::pow(s.node(beta), alpha);
    const cplx exact = oscillatory_moment(alpha, s.omega, s.a, s.b);
    const double err = std::abs(sum - exact);
    // Scale by int_a^b |x|^alpha dx as well: the oscillatory moment vanishes at resonances.
    const auto abs_moment = [&](double x) { return std::copysign(std::pow(std::abs(x), alpha + 1), x) / (alpha + 1); };
    const double scale = std::max(std::abs(exact), abs_moment(s.b) - abs_moment(s.a));
    rows.push_back({{"alpha", alpha}, {"abs_error", err}, {"rel_error", err / scale}});
  }
  return rows;
}

Json coefficient_json(const CoefficientVector& c) {
  const auto& s = c.spec;
  Json j;
  j["m"] = s.m;
  j["omega"] = s.omega;
  j["a"] = s.a;
  j["b"] = s.b;
  j["n"] = s.n;
  j["h"] = s.step();
  j["branch"] = std::string(to_string(c.branch));
  j["provenance"] = std::string(to_string(c.provenance));
  j["k_factor"] = c.aux.k_factor;
  j["omega_used"] = c.aux.omega_used;
  j["boundary_condition"] = c.aux.condition;
  j["boundary_residual"] = c.aux.residual;
  j["exactness"] = exactness_report(c);
  Json rows = Json::array();
  for (int beta = 0; beta <= s.n; ++beta) {
    const cplx v = c.values[static_cast<std::size_t>(beta)];
    rows.push_back({{"beta", beta}, {"re", v.real()}, {"im", v.imag()}});
  }
  j["coefficients"] = std::move(rows);
  return j;
}

std::string coefficient_csv(const CoefficientVector& c, const std::string& extra_header) {
  const auto& s = c.spec;
  std::ostringstream os;
  os << "# m=" << s.m << " omega=" << csv_number(s.omega) << " a=" << csv_number(s.a)
     << " b=" << csv_number(s.b) << " n=" << s.n << " branch=" << to_string(c.branch)
     << " provenance=" << to_string(c.provenance) << extra_header << '\n';
  os << "beta,re,im\n";
  for (int beta = 0; beta <= s.n; ++beta) {
    const cplx v = c.values[static_cast<std::size_t>(beta)];
    os << beta << ',' << csv_number(v.real()) << ',' << csv_number(v.imag()) << '\n';
  }
  return os.str();
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv")
    throw InvalidArgument("--format must be json or csv, got '" + format + "'");
}

} // namespace oqf::cli
