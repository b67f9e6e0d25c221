#pragma once

#include "oqf/quadrature.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace oqf::cli {

using Json = nlohmann::ordered_json;

/// %.12g, the rounding used for every CSV cell.
std::string csv_number(double v);

/// Writes `text` to `path`, or to `out` when the path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out);

/// JSON has no infinities or NaN: +inf becomes "inf", -inf "-inf", NaN null.
Json number_or_sentinel(double v);

/// max_alpha |sum_beta C_beta x_beta^alpha - int_a^b e^{2 pi i omega x} x^alpha dx|
/// for alpha < m, one entry per alpha.
Json exactness_report(const CoefficientVector& c);

/// Shared table layout of `coeffs` and `oracle`.
Json coefficient_json(const CoefficientVector& c);
std::string coefficient_csv(const CoefficientVector& c, const std::string& extra_header = "");

void check_format(const std::string& format);

} // namespace oqf::cli
