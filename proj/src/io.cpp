#include "pip/io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "pip/error.hpp"

namespace pip {

using nlohmann::json;

json to_json(const NewtonNodeSet& nodes) {
  json gens = json::array();
  for (const auto& g : nodes.generators()) gens.push_back(std::vector<double>(g.values().begin(), g.values().end()));
  json affine = nullptr;
  if (const auto& tau = nodes.affine()) {
    json a = json::array();
    for (std::size_t i = 0; i < tau->dim(); ++i) {
      const auto row = tau->matrix().row(i);
      a.push_back(std::vector<double>(row.begin(), row.end()));
    }
    affine = {{"A", a}, {"b", std::vector<double>(tau->offset().begin(), tau->offset().end())}};
  }
  return {{"m", nodes.dim()}, {"n", nodes.degree()}, {"generators", gens}, {"affine", affine}};
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

NewtonNodeSet node_set_from_json(const json& j) {
  const int m = field<int>(j, "m");
  const int n = field<int>(j, "n");
  const auto gens = field<std::vector<std::vector<double>>>(j, "generators");
  if (m < 1 || n < 0) throw InvalidArgument("node set: need m >= 1, n >= 0");
  if (gens.size() != static_cast<std::size_t>(m)) throw InvalidArgument("node set: need one generator per dimension");
  std::vector<GeneratingNodes1D> generators;
  for (const auto& g : gens) {
    if (g.size() != static_cast<std::size_t>(n) + 1) throw InvalidArgument("node set: generators need n+1 entries");
    generators.emplace_back(g);
  }
  std::optional<AffineMap> tau;
  if (j.contains("affine") && !j.at("affine").is_null()) {
    const auto& aj = j.at("affine");
    const auto rows = field<std::vector<std::vector<double>>>(aj, "A");
    const auto b = field<std::vector<double>>(aj, "b");
    if (rows.size() != static_cast<std::size_t>(m) || b.size() != static_cast<std::size_t>(m)) {
      throw InvalidArgument("node set: affine map must be m x m with |b| = m");
    }
    DenseMatrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != static_cast<std::size_t>(m)) throw InvalidArgument("node set: ragged affine matrix");
      for (std::size_t k = 0; k < rows[i].size(); ++k) a(i, k) = rows[i][k];
    }
    tau.emplace(std::move(a), b);
  }
  return NewtonNodeSet(n, std::move(generators), std::move(tau));
}

json to_json(const NewtonPoly& q) {
  return {{"form", "newton"},
          {"m", q.dim()},
          {"n", q.degree()},
          {"coefficients", std::vector<double>(q.coefficients().begin(), q.coefficients().end())},
          {"nodeset", to_json(q.nodes())}};
}

json to_json(const MonomialPoly& p) {
  return {{"form", "monomial"},
          {"m", p.dim()},
          {"n", p.degree()},
          {"coefficients", std::vector<double>(p.coefficients().begin(), p.coefficients().end())},
          {"nodeset", nullptr}};
}

AnyPoly poly_from_json(const json& j) {
  const auto form = field<std::string>(j, "form");
  const int m = field<int>(j, "m");
  const int n = field<int>(j, "n");
  auto coeffs = field<std::vector<double>>(j, "coefficients");
  if (m < 1 || n < 0) throw InvalidArgument("polynomial: need m >= 1, n >= 0");
  if (coeffs.size() != count_coefficients(m, n)) {
    throw InvalidArgument("polynomial: expected N(m,n) = " + std::to_string(count_coefficients(m, n)) +
                          " coefficients, got " + std::to_string(coeffs.size()));
  }
  if (form == "newton") {
    if (!j.contains("nodeset") || j.at("nodeset").is_null()) throw InvalidArgument("newton polynomial needs a nodeset");
    auto nodes = node_set_from_json(j.at("nodeset"));
    if (nodes.dim() != m || nodes.degree() != n) throw InvalidArgument("polynomial: nodeset shape differs from (m, n)");
    return NewtonPoly(std::move(nodes), std::move(coeffs));
  }
  if (form == "monomial") return MonomialPoly(m, n, std::move(coeffs));
  throw InvalidArgument("polynomial: unknown form '" + form + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("invalid coordinate '" + cell + "'");
    }
    if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw InvalidArgument("invalid coordinate '" + cell + "'");
    }
    p.push_back(v);
  }
  if (p.empty()) throw InvalidArgument("empty point");
  return p;
}

PointSet read_points_csv(std::istream& in, int m) {
  PointSet points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto p = parse_point(line);
    if (p.size() != static_cast<std::size_t>(m)) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected " + std::to_string(m) + " columns");
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace pip
