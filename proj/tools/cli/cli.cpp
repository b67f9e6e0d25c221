#include "cli.hpp"

#include "commands.hpp"

#include "oqf/error.hpp"

#include <ostream>

namespace oqf::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Optimal quadrature for oscillatory Fourier integrals and FBP reconstruction", "oqf");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  add_coeffs(app, out);
  add_oracle(app, out);
  add_efpoly(app, out);
  add_verify(app, out);
  add_convergence(app, out);
  add_reconstruct(app, out, err);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

} // namespace oqf::cli
