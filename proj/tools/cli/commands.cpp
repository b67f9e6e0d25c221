#include "commands.hpp"

#include "output.hpp"
#include "params.hpp"

#include "oqf/convergence.hpp"
#include "oqf/discrete_op.hpp"
#include "oqf/efpoly.hpp"
#include "oqf/oracle.hpp"
#include "oqf/quadrature.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace oqf::cli {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> ladder;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size())
        throw std::invalid_argument(item);
      ladder.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidArgument("--ladder expects comma-separated integers, got '" + text + "'");
    }
  }
  if (ladder.empty())
    throw InvalidArgument("--ladder is empty");
  return ladder;
}

} // namespace

// --- coeffs ------------------------------------------------------------------

void add_coeffs(CLI::App& root, std::ostream& out) {
  struct Args {
    int m = 2;
    double omega = 0.0, a = 0.0, b = 1.0;
    int n = 8;
    std::string format = "json", output;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("coeffs", "Optimal quadrature weights for int_a^b e^{2 pi i omega x} phi(x) dx");
  auto params = std::make_shared<Params>(app, "coeffs");
  params->add("m", args->m, "Smoothness order (space L2^(m))");
  params->add("omega", args->omega, "Frequency in cycles per unit length");
  params->add("a", args->a, "Left endpoint");
  params->add("b", args->b, "Right endpoint");
  params->add("n", args->n, "Number of intervals N (N + 1 nodes)");
  params->add("format", args->format, "json or csv");
  params->add("output", args->output, "Output file (default: stdout)");
  app->callback([args, params, &out] {
    params->apply_config();
    check_format(args->format);
    const QuadratureSpec spec{args->m, args->omega, args->a, args->b, args->n};
    spec.validate();
    const CoefficientVector c = coefficients(spec);
    if (args->format == "csv") {
      emit(coefficient_csv(c), args->output, out);
      return;
    }
    Json j;
    j["command"] = "coeffs";
    j.update(coefficient_json(c));
    emit(dump(j), args->output, out);
  });
}

// --- oracle ------------------------------------------------------------------

void add_oracle(CLI::App& root, std::ostream& out) {
  struct Args {
    int m = 2;
    double omega = 0.0, a = 0.0, b = 1.0;
    int n = 8;
    std::string format = "json", output;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("oracle", "Weights from a direct solve of the full defining system");
  auto params = std::make_shared<Params>(app, "oracle");
  params->add("m", args->m, "Smoothness order");
  params->add("omega", args->omega, "Frequency in cycles per unit length");
  params->add("a", args->a, "Left endpoint (the system is solved on [0,1] and mapped)");
  params->add("b", args->b, "Right endpoint");
  params->add("n", args->n, "Number of intervals N (at most 64)");
  params->add("format", args->format, "json or csv");
  params->add("output", args->output, "Output file (default: stdout)");
  app->callback([args, params, &out] {
    params->apply_config();
    check_format(args->format);
    const QuadratureSpec spec{args->m, args->omega, args->a, args->b, args->n};
    spec.validate();
    const OracleSolution sol = solve_oracle(spec.m, spec.omega * (spec.b - spec.a), spec.n);
    CoefficientVector c = transform_unit_to_ab(sol.coeffs, spec.a, spec.b, spec.omega);
    c.provenance = Provenance::Oracle;
    const CoefficientVector closed = coefficients(spec);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      diff = std::max(diff, std::abs(c.values[i] - closed.values[i]));
      scale = std::max(scale, std::abs(c.values[i]));
    }
    const double rel = scale > 0.0 ? diff / scale : diff;
    if (args->format == "csv") {
      emit(coefficient_csv(c, " condition=" + csv_number(sol.condition) + " residual=" +
                                  csv_number(sol.residual) + " closed_form_rel_diff=" + csv_number(rel)),
           args->output, out);
      return;
    }
    Json j;
    j["command"] = "oracle";
    j.update(coefficient_json(c));
    j.erase("boundary_condition");
    j.erase("boundary_residual");
    j["condition"] = sol.condition;
    j["residual"] = sol.residual;
    j["closed_form_branch"] = std::string(to_string(closed.branch));
    j["closed_form_rel_diff"] = rel;
    Json poly = Json::array();
    for (const cplx& p : sol.poly)
      poly.push_back({{"re", p.real()}, {"im", p.imag()}});
    j["poly_unit"] = std::move(poly);
    emit(dump(j), args->output, out);
  });
}

// --- efpoly ------------------------------------------------------------------

void add_efpoly(CLI::App& root, std::ostream& out) {
  struct Args {
    int k = 2;
    std::string output;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("efpoly", "Euler-Frobenius polynomial coefficients and roots");
  auto params = std::make_shared<Params>(app, "efpoly");
  params->add("k", args->k, "Degree");
  params->add("output", args->output, "Output file (default: stdout)");
  app->callback([args, params, &out] {
    params->apply_config();
    const EFPolynomial p = euler_frobenius(args->k);
    Json j;
    j["command"] = "efpoly";
    j["k"] = p.degree;
    j["coefficients"] = p.coeffs;
    j["roots_inside"] = p.roots_inside;
    Json outside = Json::array();
    for (auto it = p.roots_inside.rbegin(); it != p.roots_inside.rend(); ++it)
      outside.push_back(1.0 / *it);
    j["roots_outside"] = std::move(outside);
    Json resid = Json::array();
    for (double q : p.roots_inside)
      resid.push_back(std::abs(p(q)));
    j["root_residuals"] = std::move(resid);
    emit(dump(j), args->output, out);
  });
}

// --- verify ------------------------------------------------------------------

void add_verify(CLI::App& root, std::ostream& out) {
  struct Args {
    int m = 2;
    double h = 0.1;
    int window = 0;
    std::string output;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("verify", "Convolution and moment identities of the discrete operator D_m");
  app->set_help_flag("--help", "Print this help message and exit");
  auto params = std::make_shared<Params>(app, "verify");
  params->add("m", args->m, "Order");
  params->add("h", args->h, "Grid step");
  params->add("window", args->window, "Truncation window (0: smallest with max|q|^W W^(2m) < 1e-14)");
  params->add("output", args->output, "Output file (default: stdout)");
  app->callback([args, params, &out] {
    params->apply_config();
    const DiscreteOperator op(args->m, args->h);
    const int window = args->window > 0 ? args->window : default_window(op);
    const ConvolutionReport conv = verify_convolution(op, window);
    Json j;
    j["command"] = "verify";
    j["m"] = op.order();
    j["h"] = op.step();
    j["window"] = window;
    j["roots"] = op.roots();
    j["convolution"] = {{"max_residual", conv.max_residual},
                        {"truncation_bound", conv.truncation_bound},
                        {"window_adequate", conv.window_adequate}};
    Json moments = Json::array();
    for (int k = 0; k <= 2 * op.order(); ++k) {
      const MomentReport r = verify_moments(op, k, window);
      const double err = std::abs(r.value - r.expected);
      moments.push_back({{"k", k},
                         {"value", r.value},
                         {"expected", r.expected},
                         {"abs_error", err},
                         {"rel_error", r.expected != 0.0 ? err / std::abs(r.expected) : err},
                         {"truncation_bound", r.truncation_bound}});
    }
    j["moments"] = std::move(moments);
    emit(dump(j), args->output, out);
  });
}

// --- convergence -------------------------------------------------------------

void add_convergence(CLI::App& root, std::ostream& out) {
  struct Args {
    int m = 2;
    std::string integrand = "exp";
    double omega = 3.3, a = 0.0, b = 1.0;
    std::string ladder = "32,64,128,256,512";
    std::string format = "json", output;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("convergence", "Error against N for a test integrand with a known integral");
  auto params = std::make_shared<Params>(app, "convergence");
  params->add("m", args->m, "Smoothness order");
  params->add("integrand", args->integrand, "exp, cos, sin3 or expneg2");
  params->add("omega", args->omega, "Frequency in cycles per unit length");
  params->add("a", args->a, "Left endpoint");
  params->add("b", args->b, "Right endpoint");
  params->add("ladder", args->ladder, "Comma-separated N values");
  params->add("format", args->format, "json or csv");
  params->add("output", args->output, "Output file (default: stdout)");
  app->callback([args, params, &out] {
    params->apply_config();
    check_format(args->format);
    const std::vector<int> ladder = parse_ladder(args->ladder);
    const ConvergenceReport r = convergence_study(args->m, args->integrand, args->omega, args->a, args->b, ladder);
    if (args->format == "csv") {
      std::ostringstream os;
      os << "# m=" << r.m << " integrand=" << r.integrand << " omega=" << csv_number(r.omega)
         << " a=" << csv_number(r.a) << " b=" << csv_number(r.b)
         << " fitted_order=" << csv_number(r.fitted_order) << '\n';
      os << "n,h,error\n";
      for (const auto& p : r.points)
        os << p.n << ',' << csv_number(p.h) << ',' << csv_number(p.error) << '\n';
      emit(os.str(), args->output, out);
      return;
    }
    Json j;
    j["command"] = "convergence";
    j["m"] = r.m;
    j["integrand"] = r.integrand;
    j["formula"] = test_integrand(r.integrand).formula;
    j["omega"] = r.omega;
    j["a"] = r.a;
    j["b"] = r.b;
    j["exact"] = {{"re", r.exact.real()}, {"im", r.exact.imag()}};
    Json pts = Json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const auto& p = r.points[i];
      Json row = {{"n", p.n}, {"h", p.h}, {"error", p.error}};
      if (i > 0)
        row["local_order"] = number_or_sentinel(std::log(r.points[i - 1].error / p.error) /
                                                std::log(r.points[i - 1].h / p.h));
      pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["fitted_order"] = number_or_sentinel(r.fitted_order);
    emit(dump(j), args->output, out);
  });
}

} // namespace oqf::cli
