#pragma once

// Experiment harness: coefficient recovery, runtime scaling, Runge
// convergence and 1D Lebesgue constants, with CSV output and a power-law
// cost-model fit.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pip/nodes.hpp"

namespace pip {

enum class Method { Pip, LuCheb, LuRandom, Inversion };

std::string to_string(Method m);
Method parse_method(const std::string& tag);
std::vector<Method> parse_methods(const std::string& csv);

struct BenchRecord {
  Method method;
  int m;
  int n;
  std::uint64_t count;  // N(m,n)
  int trial;
  std::uint64_t seed;
  double time_s;
  double max_err;  // NaN for a failed trial
  bool failed = false;
};

struct PowerLawFit {
  double prefactor;
  double exponent;
  double r_squared;
};

struct LebesgueEstimate {
  int n;
  std::string kind;
  double lambda;
  int resolution;
};

struct RungeRow {
  int degree;
  NodeKind kind;
  double max_rel_err;
  double mean_rel_err;
};

/// Random stream for one (seed, stream...) tuple. Uses a 64-bit Mersenne
/// twister seeded through seed_seq, and its own uniform conversion, so draws
/// are identical across standard libraries.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);
  /// Uniform on [lo, hi).
  double uniform(double lo = -1.0, double hi = 1.0);

 private:
  std::mt19937_64 engine_;
};

struct ExperimentConfig {
  int m_min = 2;
  int m_max = 10;
  int n = 3;
  int trials = 5;
  std::uint64_t seed = 1;
  std::vector<Method> methods = {Method::Pip, Method::LuCheb, Method::LuRandom, Method::Inversion};
  // runtime only: each timing repeats the measured work until at least this
  // much wall time has passed and reports the per-run mean
  double min_time_s = 0.01;
};

/// Draws i.i.d. U[-1,1] coefficients (Newton form for pip, normal form for
/// the matrix methods; the same draw for every method), samples the
/// polynomial at the method's nodes, recovers it, and records
/// ||c - c~||_inf.
std::vector<BenchRecord> experiment_accuracy(const ExperimentConfig& cfg);

/// Times node generation plus solve on U[-1,1] function values.
std::vector<BenchRecord> experiment_runtime(const ExperimentConfig& cfg);

/// Power-law fit of the median time per m for one method, restricted to
/// m in [fit_m_min, fit_m_max].
PowerLawFit fit_records(std::span<const BenchRecord> records, Method method, int fit_m_min, int fit_m_max);

/// OLS on (log N, log t): t ~ p N^q. Needs at least 3 samples with t > 0.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples);

/// Relative error of Chebyshev and equidistant Newton interpolants of the
/// Runge function 1/(1+25|x|^2) on `samples` fixed U[-1,1]^m points.
std::vector<RungeRow> experiment_runge(int m, std::span<const int> degrees, int samples, std::uint64_t seed);

/// max over a uniform grid on [-1,1] of sum_j |L_j(x)|, with the cardinal
/// functions L_j of the nodes evaluated in barycentric form.
LebesgueEstimate estimate_lebesgue_1d(const GeneratingNodes1D& nodes, int resolution, std::string kind = "custom");

/// (2/pi)(ln n + gamma + ln(8/pi)).
double chebyshev_lebesgue_asymptote(int n);

/// "a:b" or "a:b:s" (inclusive); a single integer is a one-element range.
std::vector<int> parse_range(const std::string& text);

void write_records_csv(std::ostream& out, std::vector<BenchRecord> records, bool include_time = true);
void write_runge_csv(std::ostream& out, std::span<const RungeRow> rows);

}  // namespace pip
