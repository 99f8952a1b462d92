#include "coarsefp/io.hpp"

#include "coarsefp/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace coarsefp {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

namespace {

double parse_field(const std::string& field, const std::string& where) {
  const auto b = field.find_first_not_of(" \t\r");
  const auto e = field.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw InputError(where + ": empty field");
  const std::string f = field.substr(b, e - b + 1);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(f.c_str(), &end);
  if (end != f.c_str() + f.size() || errno == ERANGE) throw InputError(where + ": not a number: '" + f + "'");
  if (!std::isfinite(v)) throw InputError(where + ": non-finite value '" + f + "'");
  return v;
}

}  // namespace

std::vector<Vector> parse_points_csv(const std::string& text, const std::string& source) {
  std::vector<Vector> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long dim = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::vector<double> row;
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ',')) row.push_back(parse_field(field, where));
    if (!line.empty() && line.back() == ',') throw InputError(where + ": trailing comma");
    if (dim < 0) dim = static_cast<long>(row.size());
    if (static_cast<long>(row.size()) != dim) {
      throw InputError(where + ": expected " + std::to_string(dim) + " columns, found " + std::to_string(row.size()));
    }
    out.push_back(Eigen::Map<const Vector>(row.data(), static_cast<Eigen::Index>(row.size())));
  }
  if (out.empty()) throw InputError(source + ": no points");
  return out;
}

std::vector<Vector> parse_points_json(const nlohmann::json& j, const std::string& source) {
  const nlohmann::json& arr = j.is_object() && j.contains("points") ? j.at("points") : j;
  if (!arr.is_array() || arr.empty()) throw InputError(source + ": expected a non-empty array of points");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    if (!p.is_array() || p.empty()) throw InputError(source + ": point " + std::to_string(i) + " is not an array");
    Vector v(static_cast<Eigen::Index>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!p[k].is_number()) throw InputError(source + ": point " + std::to_string(i) + " has a non-numeric entry");
      v[static_cast<Eigen::Index>(k)] = p[k].get<double>();
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw InputError(source + ": point " + std::to_string(i) + " has the wrong dimension");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> read_points(const std::string& path) {
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (json) return parse_points_json(read_json_file(path), path);
  return parse_points_csv(read_text_file(path), path);
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  try {
    const int order = j.at("order").get<int>();
    std::vector<std::int32_t> table;
    for (const auto& row : j.at("mult")) {
      if (row.is_array()) {
        for (const auto& e : row) table.push_back(e.get<std::int32_t>());
      } else {
        table.push_back(row.get<std::int32_t>());
      }
    }
    auto gens = j.at("gens").get<std::vector<std::int32_t>>();
    const std::string label = j.value("label", std::string("table:") + std::to_string(order));
    return FiniteGroup(order, std::move(table), std::move(gens), label);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group JSON: ") + e.what());
  }
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  return {{"order", g.order()}, {"mult", g.table()}, {"gens", g.gens()}, {"label", g.label()}};
}

nlohmann::json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

void write_spectrum_csv(std::ostream& out, const std::vector<double>& eigenvalues) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (double e : eigenvalues) out << e << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace coarsefp
