#include "pip/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pip/bench.hpp"
#include "pip/error.hpp"
#include "pip/expr.hpp"
#include "pip/io.hpp"
#include "pip/poly.hpp"

namespace pip {

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    write_text_file(path, text);
  }
}

PointSet gather_points(const std::string& point, const std::string& file, int m) {
  if (!point.empty() == !file.empty()) throw InvalidArgument("give exactly one of --point or --points");
  if (!point.empty()) {
    PointSet ps;
    const auto p = parse_point(point);
    if (p.size() != static_cast<std::size_t>(m)) {
      throw InvalidArgument("--point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(m));
    }
    ps.push_back(p);
    return ps;
  }
  std::ifstream in(file);
  if (!in) throw InvalidArgument("cannot open '" + file + "'");
  return read_points_csv(in, m);
}

Box parse_box(const std::string& text, int m) {
  if (text.empty()) return Box::cube(m, -1.0, 1.0);
  std::vector<std::pair<double, double>> intervals;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto colon = cell.find(':');
    if (colon == std::string::npos) throw InvalidArgument("--box entries look like a:b");
    try {
      intervals.emplace_back(std::stod(cell.substr(0, colon)), std::stod(cell.substr(colon + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("--box entry '" + cell + "' is not a:b");
    }
  }
  if (intervals.size() != static_cast<std::size_t>(m)) throw InvalidArgument("--box needs one interval per dimension");
  return Box(std::move(intervals));
}

struct Options {
  int m = 2;
  int n = 3;
  std::string nodes = "cheb";
  std::string fn;
  std::string nodeset;
  std::string out;
  std::string poly;
  std::string point;
  std::string points;
  std::string box;
  int dim = 1;
  bool csv = false;

  std::string m_range = "2:10";
  std::string degrees = "2:24:2";
  std::string methods = "pip,lu-cheb,lu-random,inversion";
  std::string fit_m;
  int trials = 5;
  int samples = 400;
  int resolution = 0;
  double min_time = 0.01;
  std::uint64_t seed = 1;
  bool no_time = false;
};

void add_out(CLI::App* app, Options& o) { app->add_option("--out", o.out, "Output file (default: stdout)"); }

int run(CLI::App& app, Options& o, std::ostream& out, std::ostream& err) {
  CLI::App* nodes = app.get_subcommand("nodes");
  CLI::App* interpolate = app.get_subcommand("interpolate");
  CLI::App* eval = app.get_subcommand("eval");
  CLI::App* diff = app.get_subcommand("diff");
  CLI::App* integrate = app.get_subcommand("integrate");
  CLI::App* convert = app.get_subcommand("convert");
  CLI::App* bench = app.get_subcommand("bench");

  if (nodes->parsed()) {
    const auto set = generate_newton_nodes(o.m, o.n, parse_node_kind(o.nodes));
    if (o.csv) {
      std::string text;
      const auto pts = set.points();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t d = 0; d < pts.dim(); ++d) text += (d ? "," : "") + real(pts[i][d]);
        text += '\n';
      }
      emit(out, o.out, text);
    } else {
      emit(out, o.out, to_json(set).dump(2));
    }
    return 0;
  }

  if (interpolate->parsed()) {
    std::optional<NewtonNodeSet> set;
    if (!o.nodeset.empty()) {
      set.emplace(node_set_from_json(read_json_file(o.nodeset)));
    } else {
      set.emplace(generate_newton_nodes(o.m, o.n, parse_node_kind(o.nodes)));
    }
    const Expression f = make_function(o.fn, set->dim());
    const auto result = interpolate_function(*set, [&](std::span<const double> x) { return f(x); });
    emit(out, o.out, to_json(result.poly).dump(2));
    err << "residual " << real(result.residual) << '\n';
    return 0;
  }

  if (eval->parsed() || diff->parsed()) {
    const AnyPoly any = poly_from_json(read_json_file(o.poly));
    const int m = std::visit([](const auto& p) { return p.dim(); }, any);
    const PointSet pts = gather_points(o.point, o.points, m);
    std::string text;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double v = 0.0;
      if (eval->parsed()) {
        v = std::visit(
            [&](const auto& p) {
              if constexpr (std::is_same_v<std::decay_t<decltype(p)>, NewtonPoly>) {
                return eval_newton(p, pts[i]);
              } else {
                return eval_monomial(p, pts[i]);
              }
            },
            any);
      } else {
        const auto* q = std::get_if<NewtonPoly>(&any);
        if (!q) throw InvalidArgument("diff needs a Newton-form polynomial");
        if (o.dim < 1 || o.dim > m) throw InvalidArgument("--dim must be in 1.." + std::to_string(m));
        v = partial_derivative(*q, o.dim - 1, pts[i]);
      }
      text += real(v) + '\n';
    }
    emit(out, o.out, text);
    return 0;
  }

  if (integrate->parsed()) {
    const AnyPoly any = poly_from_json(read_json_file(o.poly));
    const auto* q = std::get_if<NewtonPoly>(&any);
    if (!q) throw InvalidArgument("integrate needs a Newton-form polynomial");
    emit(out, o.out, real(integrate_hypercube(*q, parse_box(o.box, q->dim()))));
    return 0;
  }

  if (convert->parsed()) {
    const AnyPoly any = poly_from_json(read_json_file(o.poly));
    const auto* q = std::get_if<NewtonPoly>(&any);
    if (!q) throw InvalidArgument("convert expects a Newton-form polynomial");
    emit(out, o.out, to_json(newton_to_monomial(*q)).dump(2));
    return 0;
  }

  if (bench->parsed()) {
    CLI::App* accuracy = bench->get_subcommand("accuracy");
    CLI::App* runtime = bench->get_subcommand("runtime");
    CLI::App* runge = bench->get_subcommand("runge");
    CLI::App* lebesgue = bench->get_subcommand("lebesgue");

    if (accuracy->parsed() || runtime->parsed()) {
      const auto ms = parse_range(o.m_range);
      ExperimentConfig cfg;
      cfg.m_min = ms.front();
      cfg.m_max = ms.back();
      cfg.n = o.n;
      cfg.trials = o.trials;
      cfg.seed = o.seed;
      cfg.methods = parse_methods(o.methods);
      cfg.min_time_s = o.min_time;
      const auto records = accuracy->parsed() ? experiment_accuracy(cfg) : experiment_runtime(cfg);
      std::ostringstream csv;
      write_records_csv(csv, records, !o.no_time);
      emit(out, o.out, csv.str());
      if (runtime->parsed()) {
        const auto fit_ms = o.fit_m.empty() ? ms : parse_range(o.fit_m);
        for (Method method : cfg.methods) {
          const auto fit = fit_records(records, method, fit_ms.front(), fit_ms.back());
          err << "fit " << to_string(method) << " p=" << real(fit.prefactor) << " q=" << real(fit.exponent)
              << " R2=" << real(fit.r_squared) << '\n';
        }
      }
      return 0;
    }
    if (runge->parsed()) {
      const auto degrees = parse_range(o.degrees);
      const auto rows = experiment_runge(o.m, degrees, o.samples, o.seed);
      std::ostringstream csv;
      write_runge_csv(csv, rows);
      emit(out, o.out, csv.str());
      return 0;
    }
    if (lebesgue->parsed()) {
      const NodeKind kind = parse_node_kind(o.nodes);
      const auto gen = kind == NodeKind::Chebyshev ? chebyshev_1d(o.n) : equidistant_1d(o.n);
      const int resolution = o.resolution > 0 ? o.resolution : std::max(10000, 10 * (o.n + 1));
      const auto est = estimate_lebesgue_1d(gen, resolution, to_string(kind));
      std::string text = "n,kind,lambda,resolution\n" + std::to_string(est.n) + "," + est.kind + "," +
                         real(est.lambda) + "," + std::to_string(est.resolution) + "\n";
      emit(out, o.out, text);
      return 0;
    }
  }
  err << app.help();
  return kUsage;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Multivariate Newton interpolation on unisolvent node sets"};
  app.require_subcommand(1);

  const std::string expr_help =
      "Target function: an expression in x1..xm (x, y, z for m <= 3) with + - * / ^, "
      "sin cos exp sqrt abs, pi; ^ is right associative and unary minus binds tighter than ^ "
      "(-x^2 is (-x)^2); or builtin:runge, builtin:coslak, builtin:const(c)";

  auto* nodes = app.add_subcommand("nodes", "Generate a Newton node set (JSON, or CSV of points)");
  nodes->add_option("--m", o.m, "Dimension")->required();
  nodes->add_option("--n", o.n, "Degree")->required();
  nodes->add_option("--nodes", o.nodes, "Generator family: cheb or equi");
  nodes->add_flag("--csv", o.csv, "Emit the points as CSV instead of the node-set JSON");
  add_out(nodes, o);

  auto* interpolate = app.add_subcommand("interpolate", "Interpolate a function, emit Newton polynomial JSON");
  interpolate->add_option("--m", o.m, "Dimension");
  interpolate->add_option("--n", o.n, "Degree");
  interpolate->add_option("--nodes", o.nodes, "Generator family: cheb or equi");
  interpolate->add_option("--nodeset", o.nodeset, "Node-set JSON file (overrides --m/--n/--nodes)");
  interpolate->add_option("--fn", o.fn, expr_help)->required();
  add_out(interpolate, o);

  auto* eval = app.add_subcommand("eval", "Evaluate a polynomial JSON at points");
  eval->add_option("--poly", o.poly, "Polynomial JSON file")->required();
  eval->add_option("--point", o.point, "One point, comma separated");
  eval->add_option("--points", o.points, "CSV file of points, one per line");
  add_out(eval, o);

  auto* diff = app.add_subcommand("diff", "Partial derivative of a Newton polynomial at points");
  diff->add_option("--poly", o.poly, "Polynomial JSON file")->required();
  diff->add_option("--dim", o.dim, "Variable index, 1-based")->required();
  diff->add_option("--point", o.point, "One point, comma separated");
  diff->add_option("--points", o.points, "CSV file of points, one per line");
  add_out(diff, o);

  auto* integrate = app.add_subcommand("integrate", "Integral of a Newton polynomial over a box");
  integrate->add_option("--poly", o.poly, "Polynomial JSON file")->required();
  integrate->add_option("--box", o.box, "Box as a:b,a:b,... (default [-1,1]^m)");
  add_out(integrate, o);

  auto* convert = app.add_subcommand("convert", "Convert a Newton polynomial to monomial form");
  convert->add_option("--poly", o.poly, "Polynomial JSON file")->required();
  add_out(convert, o);

  auto* bench = app.add_subcommand("bench", "Experiments");
  bench->require_subcommand(1);
  for (const char* name : {"accuracy", "runtime"}) {
    auto* sub = bench->add_subcommand(name, std::string(name) == "accuracy" ? "Coefficient recovery error"
                                                                             : "Runtime scaling and power-law fit");
    sub->add_option("--m", o.m_range, "Dimension range a:b");
    sub->add_option("--n", o.n, "Degree");
    sub->add_option("--trials", o.trials, "Trials per dimension");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--methods", o.methods, "Comma-separated: pip,lu-cheb,lu-random,inversion");
    sub->add_flag("--no-time", o.no_time, "Replace timings by '-' in the CSV");
    if (std::string(name) == "runtime") {
      sub->add_option("--fit-m", o.fit_m, "Dimension range a:b used for the power-law fit");
      sub->add_option("--min-time", o.min_time, "Minimum seconds per timing (repeats short runs)");
    }
    add_out(sub, o);
  }
  auto* runge = bench->add_subcommand("runge", "Runge function convergence, Chebyshev vs equidistant");
  runge->add_option("--m", o.m, "Dimension");
  runge->add_option("--degrees", o.degrees, "Degree range a:b:s");
  runge->add_option("--samples", o.samples, "Number of random evaluation points");
  runge->add_option("--seed", o.seed, "Random seed");
  add_out(runge, o);
  auto* lebesgue = bench->add_subcommand("lebesgue", "1D Lebesgue constant estimate");
  lebesgue->add_option("--n", o.n, "Degree")->required();
  lebesgue->add_option("--nodes", o.nodes, "Generator family: cheb or equi");
  lebesgue->add_option("--resolution", o.resolution, "Grid points on [-1,1]");
  add_out(lebesgue, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    return run(app, o, out, err);
  } catch (const ParseError& e) {
    err << "error: --fn " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const SizeLimitError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const OverflowError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace pip
