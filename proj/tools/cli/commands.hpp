#pragma once

#include <CLI11.hpp>

#include <iosfwd>

namespace oqf::cli {

void add_coeffs(CLI::App& root, std::ostream& out);
void add_oracle(CLI::App& root, std::ostream& out);
void add_efpoly(CLI::App& root, std::ostream& out);
void add_verify(CLI::App& root, std::ostream& out);
void add_convergence(CLI::App& root, std::ostream& out);
void add_reconstruct(CLI::App& root, std::ostream& out, std::ostream& err);

} // namespace oqf::cli
