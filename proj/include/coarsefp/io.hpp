#pragma once

#include "coarsefp/centres.hpp"
#include "coarsefp/groups.hpp"
#include "coarsefp/metric.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace coarsefp {

std::string read_text_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

/// Points from CSV text: one point per line, comma separated. Blank lines and lines starting with
/// '#' are skipped. Errors name the line: "<source>:<line>: ...".
std::vector<Vector> parse_points_csv(const std::string& text, const std::string& source = "<input>");

/// Points from JSON: either [[...], ...] or {"points": [[...], ...]}.
std::vector<Vector> parse_points_json(const nlohmann::json& j, const std::string& source = "<input>");

/// Dispatches on the extension (.json, otherwise CSV).
std::vector<Vector> read_points(const std::string& path);

/// {order, mult: flat row-major or nested rows, gens, label?}
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

nlohmann::json vector_json(const Vector& v);

/// One eigenvalue per line, 17 significant digits.
void write_spectrum_csv(std::ostream& out, const std::vector<double>& eigenvalues);

}  // namespace coarsefp
