#include "pip/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pip/error.hpp"
#include "pip/poly.hpp"
#include "pip/solver.hpp"

namespace pip {

std::string to_string(Method m) {
  switch (m) {
    case Method::Pip:
      return "pip";
    case Method::LuCheb:
      return "lu-cheb";
    case Method::LuRandom:
      return "lu-random";
    case Method::Inversion:
      return "inversion";
  }
  return "?";
}

Method parse_method(const std::string& tag) {
  if (tag == "pip") return Method::Pip;
  if (tag == "lu-cheb") return Method::LuCheb;
  if (tag == "lu-random") return Method::LuRandom;
  if (tag == "inversion") return Method::Inversion;
  throw InvalidArgument("unknown method '" + tag + "' (pip, lu-cheb, lu-random, inversion)");
}

std::vector<Method> parse_methods(const std::string& csv) {
  std::vector<Method> out;
  std::stringstream ss(csv);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    if (!tag.empty()) out.push_back(parse_method(tag));
  }
  if (out.empty()) throw InvalidArgument("no methods given");
  return out;
}

TrialRng::TrialRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto s : stream) push(s);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double TrialRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

// Keeps timed pip work from being optimized away.
volatile double g_sink = 0.0;

using Clock = std::chrono::steady_clock;

// Stream tags keep the coefficient, node and value draws independent.
constexpr std::uint64_t kCoeffStream = 1;
constexpr std::uint64_t kNodeStream = 2;
constexpr std::uint64_t kValueStream = 3;
constexpr std::uint64_t kRungeStream = 4;
constexpr int kRandomNodeAttempts = 3;

std::vector<double> draw(TrialRng& rng, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = rng.uniform();
  return v;
}

PointSet random_points(TrialRng& rng, int m, std::size_t count) {
  return PointSet(static_cast<std::size_t>(m), draw(rng, count * static_cast<std::size_t>(m)));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<double> sample_monomial(const MonomialPoly& p, const PointSet& points) {
  std::vector<double> v(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) v[i] = eval_monomial(p, points[i]);
  return v;
}

// Solves on random nodes, redrawing after a singular system.
template <class Solve>
bool with_random_nodes(TrialRng& rng, int m, std::size_t count, Solve&& solve) {
  for (int attempt = 0; attempt < kRandomNodeAttempts; ++attempt) {
    const PointSet points = random_points(rng, m, count);
    try {
      solve(points);
      return true;
    } catch (const NumericalError&) {
    }
  }
  return false;
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

std::vector<BenchRecord> experiment_accuracy(const ExperimentConfig& cfg) {
  std::vector<BenchRecord> out;
  for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
    const std::uint64_t count = count_coefficients(m, cfg.n);
    const auto N = static_cast<std::size_t>(count);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t tm = static_cast<std::uint64_t>(m);
      const std::uint64_t tt = static_cast<std::uint64_t>(trial);
      TrialRng coeff_rng(cfg.seed, {kCoeffStream, tm, tt});
      const auto c = draw(coeff_rng, N);

      for (Method method : cfg.methods) {
        BenchRecord rec{method, m, cfg.n, count, trial, cfg.seed, 0.0, 0.0};
        const auto t0 = Clock::now();
        switch (method) {
          case Method::Pip: {
            const auto nodes = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev);
            const NewtonPoly truth(nodes, c);
            std::vector<double> values(N);
            for (std::size_t r = 0; r < N; ++r) values[r] = eval_newton(truth, nodes.node(r));
            const auto got = pip_solve(nodes, values);
            rec.max_err = max_abs_diff(c, got.coefficients());
            break;
          }
          case Method::LuCheb:
          case Method::Inversion: {
            const auto points = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev).points();
            const MonomialPoly truth(m, cfg.n, c);
            const auto values = sample_monomial(truth, points);
            if (method == Method::LuCheb) {
              rec.max_err = max_abs_diff(c, solve_vandermonde_lu(points, values, m, cfg.n).poly.coefficients());
            } else {
              rec.max_err = max_abs_diff(c, invert_vandermonde(points, m, cfg.n).multiply(values));
            }
            break;
          }
          case Method::LuRandom: {
            TrialRng node_rng(cfg.seed, {kNodeStream, tm, tt});
            const MonomialPoly truth(m, cfg.n, c);
            const bool ok = with_random_nodes(node_rng, m, N, [&](const PointSet& points) {
              const auto values = sample_monomial(truth, points);
              rec.max_err = max_abs_diff(c, solve_vandermonde_lu(points, values, m, cfg.n).poly.coefficients());
            });
            if (!ok) {
              rec.failed = true;
              rec.max_err = std::numeric_limits<double>::quiet_NaN();
            }
            break;
          }
        }
        rec.time_s = elapsed(t0);
        out.push_back(rec);
      }
    }
  }
  return out;
}

std::vector<BenchRecord> experiment_runtime(const ExperimentConfig& cfg) {
  std::vector<BenchRecord> out;
  for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
    const std::uint64_t count = count_coefficients(m, cfg.n);
    const auto N = static_cast<std::size_t>(count);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t tm = static_cast<std::uint64_t>(m);
      const std::uint64_t tt = static_cast<std::uint64_t>(trial);
      TrialRng value_rng(cfg.seed, {kValueStream, tm, tt});
      const auto f = draw(value_rng, N);

      for (Method method : cfg.methods) {
        BenchRecord rec{method, m, cfg.n, count, trial, cfg.seed, 0.0, 0.0};
        // Runs the timed work once and returns the node residual.
        auto run_once = [&]() -> double {
          switch (method) {
            case Method::Pip: {
              const auto nodes = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev);
              const auto q = pip_solve(nodes, f);
              g_sink = q.coefficients()[0];
              return 0.0;
            }
            case Method::LuCheb: {
              const auto points = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev).points();
              return solve_vandermonde_lu(points, f, m, cfg.n).residual;
            }
            case Method::Inversion: {
              const auto points = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev).points();
              const auto v = build_vandermonde(points, m, cfg.n);
              const auto c = invert_vandermonde(points, m, cfg.n).multiply(f);
              return max_abs_diff(v.multiply(c), f);
            }
            case Method::LuRandom: {
              TrialRng node_rng(cfg.seed, {kNodeStream, tm, tt});
              double residual = std::numeric_limits<double>::quiet_NaN();
              with_random_nodes(node_rng, m, N, [&](const PointSet& points) {
                residual = solve_vandermonde_lu(points, f, m, cfg.n).residual;
              });
              return residual;
            }
          }
          return 0.0;
        };

        int runs = 0;
        double residual = 0.0;
        const auto t0 = Clock::now();
        do {
          residual = run_once();
          ++runs;
        } while (elapsed(t0) < cfg.min_time_s);
        rec.time_s = elapsed(t0) / runs;

        if (method == Method::Pip) {
          // Residual outside the timed region.
          const auto nodes = generate_newton_nodes(m, cfg.n, NodeKind::Chebyshev);
          residual = max_abs_diff(evaluate_at_nodes(pip_solve(nodes, f)), f);
        }
        rec.max_err = residual;
        rec.failed = std::isnan(residual);
        out.push_back(rec);
      }
    }
  }
  return out;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw InvalidArgument("fit_power_law: need at least 3 samples");
  std::vector<double> lx, ly;
  for (const auto& [n, t] : samples) {
    if (!(n > 0) || !(t > 0)) throw InvalidArgument("fit_power_law: sizes and times must be positive");
    lx.push_back(std::log(n));
    ly.push_back(std::log(t));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("fit_power_law: all sizes are equal");
  const double q = sxy / sxx;
  const double intercept = my - q * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + q * lx[i]);
    ss_res += r * r;
  }
  // A perfect fit (including constant data) has R^2 = 1.
  const double r2 = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return {std::exp(intercept), q, r2};
}

PowerLawFit fit_records(std::span<const BenchRecord> records, Method method, int fit_m_min, int fit_m_max) {
  std::map<int, std::vector<double>> times;
  std::map<int, std::uint64_t> sizes;
  for (const auto& r : records) {
    if (r.method != method || r.failed || r.m < fit_m_min || r.m > fit_m_max) continue;
    times[r.m].push_back(r.time_s);
    sizes[r.m] = r.count;
  }
  std::vector<std::pair<double, double>> samples;
  for (auto& [m, ts] : times) {
    std::sort(ts.begin(), ts.end());
    const std::size_t h = ts.size() / 2;
    const double median = ts.size() % 2 ? ts[h] : 0.5 * (ts[h - 1] + ts[h]);
    samples.emplace_back(static_cast<double>(sizes[m]), median);
  }
  return fit_power_law(samples);
}

std::vector<RungeRow> experiment_runge(int m, std::span<const int> degrees, int samples, std::uint64_t seed) {
  if (m < 1 || samples < 1) throw InvalidArgument("experiment_runge: need m >= 1 and samples >= 1");
  auto runge = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return 1.0 / (1.0 + 25.0 * s);
  };
  TrialRng rng(seed, {kRungeStream, static_cast<std::uint64_t>(m)});
  const PointSet points = random_points(rng, m, static_cast<std::size_t>(samples));
  std::vector<double> exact(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) exact[i] = runge(points[i]);

  std::vector<RungeRow> rows;
  for (int degree : degrees) {
    for (NodeKind kind : {NodeKind::Chebyshev, NodeKind::Equidistant}) {
      const auto nodes = generate_newton_nodes(m, degree, kind);
      std::vector<double> values(nodes.size());
      for (std::size_t r = 0; r < nodes.size(); ++r) values[r] = runge(nodes.canonical_node(r));
      const auto q = pip_solve(nodes, values);
      double max_rel = 0, sum_rel = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double rel = std::abs(eval_newton(q, points[i]) - exact[i]) / exact[i];
        max_rel = std::max(max_rel, rel);
        sum_rel += rel;
      }
      rows.push_back({degree, kind, max_rel, sum_rel / static_cast<double>(points.size())});
    }
  }
  return rows;
}

LebesgueEstimate estimate_lebesgue_1d(const GeneratingNodes1D& nodes, int resolution, std::string kind) {
  const std::size_t count = nodes.size();
  if (resolution < 10 * static_cast<int>(count)) {
    throw InvalidArgument("estimate_lebesgue_1d: resolution must be at least 10 (n+1)");
  }
  // Cardinal functions in barycentric form. Evaluating the Newton form of
  // unit data loses all accuracy around n = 50 on monotonically ordered nodes.
  std::vector<double> w(count, 1.0);
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t k = 0; k < count; ++k)
      if (k != j) w[j] /= nodes[j] - nodes[k];
  }
  const double wmax = std::abs(*std::max_element(w.begin(), w.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  for (double& v : w) v /= wmax;

  double lambda = 0.0;
  for (int s = 0; s < resolution; ++s) {
    const double x = -1.0 + 2.0 * s / (resolution - 1);
    double num = 0.0, den = 0.0;
    bool on_node = false;
    for (std::size_t j = 0; j < count; ++j) {
      if (x == nodes[j]) {
        on_node = true;
        break;
      }
      const double t = w[j] / (x - nodes[j]);
      num += std::abs(t);
      den += t;
    }
    lambda = std::max(lambda, on_node ? 1.0 : num / std::abs(den));
  }
  return {nodes.degree(), std::move(kind), lambda, resolution};
}

double chebyshev_lebesgue_asymptote(int n) {
  return 2.0 / std::numbers::pi * (std::log(static_cast<double>(n)) + std::numbers::egamma + std::log(8.0 / std::numbers::pi));
}

std::vector<int> parse_range(const std::string& text) {
  std::vector<long> parts;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ':')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(cell, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("invalid range '" + text + "' (expected a:b or a:b:s)");
    }
    if (used != cell.size()) throw InvalidArgument("invalid range '" + text + "' (expected a:b or a:b:s)");
    parts.push_back(v);
  }
  if (parts.empty() || parts.size() > 3) throw InvalidArgument("invalid range '" + text + "' (expected a:b or a:b:s)");
  const long a = parts[0];
  const long b = parts.size() >= 2 ? parts[1] : a;
  const long s = parts.size() == 3 ? parts[2] : 1;
  if (s <= 0 || b < a) throw InvalidArgument("invalid range '" + text + "': need a <= b and a positive step");
  std::vector<int> out;
  for (long v = a; v <= b; v += s) out.push_back(static_cast<int>(v));
  return out;
}

namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_records_csv(std::ostream& out, std::vector<BenchRecord> records, bool include_time) {
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.method, a.m, a.n, a.trial) < std::tie(b.method, b.m, b.n, b.trial);
  });
  out << "method,m,n,N,trial,seed,time_s,max_err\n";
  for (const auto& r : records) {
    out << to_string(r.method) << ',' << r.m << ',' << r.n << ',' << r.count << ',' << r.trial << ',' << r.seed << ','
        << (include_time ? format_real(r.time_s) : std::string("-")) << ',' << format_real(r.max_err) << '\n';
  }
}

void write_runge_csv(std::ostream& out, std::span<const RungeRow> rows) {
  out << "degree,kind,max_rel_err,mean_rel_err\n";
  for (const auto& r : rows) {
    out << r.degree << ',' << to_string(r.kind) << ',' << format_real(r.max_rel_err) << ','
        << format_real(r.mean_rel_err) << '\n';
  }
}

}  // namespace pip
