#pragma once

// File formats.
//
// Node set:   { "m": int, "n": int, "generators": [[reals]...], "affine": {"A": [[...]], "b": [...]} | null }
// Polynomial: { "form": "newton"|"monomial", "m": int, "n": int,
//               "coefficients": [reals in LowerSet order], "nodeset": <node set> | null }
//
// Points CSV: one point per line, m comma-separated columns.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pip/nodes.hpp"
#include "pip/solver.hpp"

namespace pip {

nlohmann::json to_json(const NewtonNodeSet& nodes);
NewtonNodeSet node_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NewtonPoly& q);
nlohmann::json to_json(const MonomialPoly& p);

using AnyPoly = std::variant<NewtonPoly, MonomialPoly>;
AnyPoly poly_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Parses "a,b,c" into reals.
std::vector<double> parse_point(const std::string& text);

PointSet read_points_csv(std::istream& in, int m);

}  // namespace pip
