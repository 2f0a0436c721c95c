#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pip/cli.hpp"
#include "pip/error.hpp"
#include "pip/io.hpp"
#include "pip/poly.hpp"

using namespace pip;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pip_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pip_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("node set json round trip") {
  DenseMatrix a = DenseMatrix::identity(2);
  a(0, 1) = 0.5;
  const auto set = generate_newton_nodes(2, 3, NodeKind::Chebyshev, AffineMap(a, {0.25, -1.0}));
  const auto back = node_set_from_json(nlohmann::json::parse(to_json(set).dump()));
  REQUIRE(back.size() == set.size());
  for (std::size_t r = 0; r < set.size(); ++r) CHECK(back.node(r) == set.node(r));
  CHECK(to_json(generate_newton_nodes(1, 1, NodeKind::Equidistant))["affine"].is_null());

  nlohmann::json bad = to_json(set);
  bad["generators"][0].erase(0);
  CHECK_THROWS_AS(node_set_from_json(bad), InvalidArgument);
}

TEST_CASE("polynomial json round trip") {
  const auto q = interpolate_function(generate_newton_nodes(2, 3, NodeKind::Chebyshev),
                                      [](auto x) { return x[0] - x[1] * x[1]; }).poly;
  const auto j = to_json(q);
  CHECK(j["form"] == "newton");
  const auto any = poly_from_json(nlohmann::json::parse(j.dump()));
  const auto& back = std::get<NewtonPoly>(any);
  for (std::size_t r = 0; r < q.size(); ++r) CHECK(back.coefficients()[r] == q.coefficients()[r]);

  const auto p = newton_to_monomial(q);
  const auto jm = to_json(p);
  CHECK(jm["form"] == "monomial");
  CHECK(jm["nodeset"].is_null());
  const auto& pm = std::get<MonomialPoly>(poly_from_json(jm));
  CHECK(pm.size() == p.size());

  auto short_coeffs = j;
  short_coeffs["coefficients"].erase(0);
  CHECK_THROWS_AS(poly_from_json(short_coeffs), InvalidArgument);
  auto bad_form = j;
  bad_form["form"] = "chebyshev";
  CHECK_THROWS_AS(poly_from_json(bad_form), InvalidArgument);
}

TEST_CASE("points parsing") {
  CHECK(parse_point("0.5,-1,2e-1") == std::vector<double>{0.5, -1, 0.2});
  CHECK_THROWS_AS(parse_point("1,,2"), InvalidArgument);
  CHECK_THROWS_AS(parse_point("1,a"), InvalidArgument);
  std::istringstream csv("0,1\n0.5,0.5\n\n-1,2\n");
  const auto pts = read_points_csv(csv, 2);
  CHECK(pts.size() == 3);
  CHECK(pts[2][1] == 2.0);
  std::istringstream ragged("0,1\n0.5\n");
  CHECK_THROWS_AS(read_points_csv(ragged, 2), InvalidArgument);
}

TEST_CASE("cli interpolate, eval, diff, integrate, convert") {
  const auto q = scratch("q.json");
  auto r = cli({"interpolate", "--m", "2", "--n", "4", "--nodes", "cheb", "--fn", "builtin:runge", "--out", q});
  REQUIRE(r.code == 0);
  const auto any = poly_from_json(read_json_file(q));
  CHECK(std::get<NewtonPoly>(any).size() == 15);

  r = cli({"eval", "--poly", q, "--point", "0,0"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(0.05));

  const auto cubic = scratch("cubic.json");
  REQUIRE(cli({"interpolate", "--m", "2", "--n", "3", "--fn", "x^2*y + 1", "--out", cubic}).code == 0);
  r = cli({"diff", "--poly", cubic, "--dim", "1", "--point", "0.5,2"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(2.0).epsilon(1e-12));
  r = cli({"integrate", "--poly", cubic, "--box", "0:1,0:2"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(2.0 / 3.0 + 2.0).epsilon(1e-12));

  const auto pts = scratch("pts.csv");
  std::ofstream(pts) << "0,0\n1,1\n-1,0.5\n";
  r = cli({"eval", "--poly", cubic, "--points", pts});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<double> vals;
  for (std::string line; std::getline(lines, line);) vals.push_back(std::stod(line));
  REQUIRE(vals.size() == 3);
  CHECK(vals[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(1.5).epsilon(1e-12));

  const auto mono = scratch("mono.json");
  REQUIRE(cli({"convert", "--poly", cubic, "--out", mono}).code == 0);
  r = cli({"eval", "--poly", mono, "--point", "1,1"});
  CHECK(std::stod(r.out) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cli({"diff", "--poly", mono, "--dim", "1", "--point", "0,0"}).code == 1);
}

TEST_CASE("cli nodes") {
  auto r = cli({"nodes", "--m", "2", "--n", "1", "--nodes", "equi"});
  CHECK(r.code == 0);
  const auto set = node_set_from_json(nlohmann::json::parse(r.out));
  CHECK(set.size() == 3);
  r = cli({"nodes", "--m", "2", "--n", "2", "--csv"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
}

TEST_CASE("cli bench") {
  auto r = cli({"bench", "runge", "--m", "5", "--degrees", "2:6:2", "--samples", "400", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 3 * 2);

  const auto a = cli({"bench", "accuracy", "--m", "2:3", "--trials", "2", "--seed", "3", "--no-time"});
  const auto b = cli({"bench", "accuracy", "--m", "2:3", "--trials", "2", "--seed", "3", "--no-time"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 1 + 2 * 2 * 4);

  r = cli({"bench", "runtime", "--m", "2:5", "--trials", "1", "--methods", "pip", "--min-time", "0"});
  CHECK(r.code == 0);
  CHECK(r.err.find("fit pip") != std::string::npos);

  r = cli({"bench", "lebesgue", "--n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("10,cheb,2.") != std::string::npos);
}

TEST_CASE("cli errors and exit codes") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"nodes", "--m", "2", "--n", "2", "--bogus"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"nodes", "--m", "2"}).code == 1);
  CHECK(cli({"nodes", "--m", "2", "--n", "2", "--nodes", "leja"}).code == 1);
  auto r = cli({"interpolate", "--m", "2", "--n", "2", "--fn", "x1 + ("});
  CHECK(r.code == 1);
  CHECK(r.err.find("unbalanced") != std::string::npos);
  CHECK(cli({"interpolate", "--m", "1", "--n", "2", "--fn", "1/x1"}).code == 2);
  CHECK(cli({"eval", "--poly", "/nonexistent/q.json", "--point", "0"}).code == 1);
  CHECK(cli({"bench", "runge", "--degrees", "4:2"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}
