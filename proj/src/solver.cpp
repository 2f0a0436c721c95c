#include "pip/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "pip/error.hpp"
#include "pip/poly.hpp"

namespace pip {

NewtonPoly::NewtonPoly(NewtonNodeSet nodes, std::vector<double> coefficients)
    : nodes_(std::move(nodes)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != nodes_.size()) throw InvalidArgument("NewtonPoly: need N(m,n) coefficients");
}

MonomialPoly::MonomialPoly(int m, int n, std::vector<double> coefficients)
    : MonomialPoly(std::make_shared<const LowerSet>(m, n), std::move(coefficients)) {}

MonomialPoly::MonomialPoly(std::shared_ptr<const LowerSet> index, std::vector<double> coefficients)
    : index_(std::move(index)), coeffs_(std::move(coefficients)) {
  if (!index_ || coeffs_.size() != index_->size()) throw InvalidArgument("MonomialPoly: need N(m,n) coefficients");
}

std::vector<double> divided_differences_1d(const GeneratingNodes1D& nodes, std::span<const double> values) {
  if (values.size() != nodes.size()) throw InvalidArgument("divided_differences_1d: need one value per node");
  std::vector<double> c(values.begin(), values.end());
  const std::size_t count = c.size();
  for (std::size_t j = 0; j + 1 < count; ++j) {
    // c[k] holds f_j(p_{k+1}); advance every later entry to f_{j+1}.
    for (std::size_t k = j + 1; k < count; ++k) {
      const double gap = nodes[k] - nodes[j];
      if (std::abs(gap) < kNodeGapTolerance) throw NumericalError("divided_differences_1d: duplicate nodes");
      c[k] = (c[k] - c[j]) / gap;
    }
  }
  return c;
}

namespace {

// Calls fn(rank, slack) for every multi-index beta over the first `dims`
// dimensions with |beta| <= budget, where `corner` is the rank of beta = 0 and
// slack = budget - |beta|. The trailing coordinates are whatever the corner
// carries.
template <class Fn>
void for_each_base(const LowerSet& index, int dims, int budget, std::size_t corner, Fn&& fn) {
  if (dims == 0) {
    fn(corner, budget);
    return;
  }
  std::size_t r = corner;
  for (int k = 0; k <= budget; ++k) {
    for_each_base(index, dims - 1, budget - k, r, fn);
    if (k < budget) r = index.successor(r, dims - 1);
  }
}

class PipSolver {
 public:
  PipSolver(const NewtonNodeSet& nodes, std::span<double> v, SolveStats* stats)
      : nodes_(nodes), index_(nodes.index()), v_(v), stats_(stats) {}

  // Slab: active dimensions 0..dims-1, the top active one restricted to
  // alpha_{dims-1} >= shift, trailing coordinates fixed by `corner`, total
  // remaining degree `budget`.
  void solve(int dims, int budget, int shift, std::size_t corner) {
    if (stats_) ++stats_->calls;
    if (dims == 0 || budget == 0) return;

    const int d = dims - 1;
    const auto& g = nodes_.generator(d);
    const double plane = g[static_cast<std::size_t>(shift)];

    // Hat transform of the part above the hyperplane x_d = plane.
    std::uint64_t touched = 0;
    for_each_base(index_, d, budget - 1, corner, [&](std::size_t base, int slack) {
      const double below = v_[base];
      std::size_t r = base;
      for (int k = 1; k <= slack + 1; ++k) {
        r = index_.successor(r, d);
        const double gap = g[static_cast<std::size_t>(shift + k)] - plane;
        if (std::abs(gap) < kNodeGapTolerance) {
          throw NumericalError("pip_solve: generator gap below tolerance in dimension " + std::to_string(d + 1));
        }
        v_[r] = (v_[r] - below) / gap;
      }
      touched += static_cast<std::uint64_t>(slack) + 1;
    });
    if (stats_) stats_->flops += 2 * touched;

    solve(dims - 1, budget, 0, corner);
    solve(dims, budget - 1, shift + 1, index_.successor(corner, d));
  }

 private:
  const NewtonNodeSet& nodes_;
  const LowerSet& index_;
  std::span<double> v_;
  SolveStats* stats_;
};

}  // namespace

NewtonPoly pip_solve(const NewtonNodeSet& nodes, std::span<const double> values, SolveStats* stats) {
  if (values.size() != nodes.size()) {
    throw InvalidArgument("pip_solve: expected " + std::to_string(nodes.size()) + " values, got " +
                          std::to_string(values.size()));
  }
  std::vector<double> coeffs(values.begin(), values.end());
  PipSolver(nodes, coeffs, stats).solve(nodes.dim(), nodes.degree(), 0, 0);
  return NewtonPoly(nodes, std::move(coeffs));
}

Interpolant interpolate_function(const NewtonNodeSet& nodes, const std::function<double(std::span<const double>)>& f) {
  std::vector<double> samples(nodes.size());
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const auto p = nodes.node(r);
    const double y = f(p);
    if (!std::isfinite(y)) {
      std::string where = "(";
      for (std::size_t i = 0; i < p.size(); ++i) where += (i ? "," : "") + std::to_string(p[i]);
      throw NumericalError("interpolate_function: non-finite sample at node " + nodes.index().unrank(r).to_string() +
                           " = " + where + ")");
    }
    samples[r] = y;
  }
  NewtonPoly q = pip_solve(nodes, samples);
  const auto fitted = evaluate_at_nodes(q);
  double residual = 0.0;
  for (std::size_t r = 0; r < samples.size(); ++r) residual = std::max(residual, std::abs(fitted[r] - samples[r]));
  return {std::move(q), residual};
}

std::size_t dense_limit() {
  if (const char* env = std::getenv("PIP_DENSE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 3000;
}

namespace {

void check_dense_size(std::uint64_t count, const char* who) {
  if (count > dense_limit()) {
    throw SizeLimitError(std::string(who) + ": N(m,n) = " + std::to_string(count) + " exceeds the dense limit " +
                         std::to_string(dense_limit()) + " (set PIP_DENSE_LIMIT to raise it)");
  }
}

}  // namespace

DenseMatrix build_vandermonde(const PointSet& points, int m, int n) {
  const std::uint64_t count = count_coefficients(m, n);
  check_dense_size(count, "build_vandermonde");
  if (points.size() != count || points.dim() != static_cast<std::size_t>(m)) {
    throw InvalidArgument("build_vandermonde: need N(m,n) points in R^m");
  }
  const LowerSet index(m, n);
  const auto N = static_cast<std::size_t>(count);
  const auto dims = static_cast<std::size_t>(m);
  const auto width = static_cast<std::size_t>(n) + 1;
  DenseMatrix v(N, N);
  std::vector<double> powers(dims * width);
  for (std::size_t i = 0; i < N; ++i) {
    const auto p = points[i];
    for (std::size_t d = 0; d < dims; ++d) {
      powers[d * width] = 1.0;
      for (std::size_t k = 1; k < width; ++k) powers[d * width + k] = powers[d * width + k - 1] * p[d];
    }
    auto row = v.row(i);
    for (std::size_t r = 0; r < N; ++r) {
      const auto alpha = index.exponents(r);
      double x = 1.0;
      for (std::size_t d = 0; d < dims; ++d) {
        if (alpha[d]) x *= powers[d * width + static_cast<std::size_t>(alpha[d])];
      }
      row[r] = x;
    }
  }
  return v;
}

DenseMatrix build_newton_vandermonde(const NewtonNodeSet& nodes) {
  check_dense_size(nodes.size(), "build_newton_vandermonde");
  const std::size_t N = nodes.size();
  DenseMatrix v(N, N);
  for (std::size_t b = 0; b < N; ++b) {
    const auto p = nodes.canonical_node(b);
    auto row = v.row(b);
    for (std::size_t a = 0; a < N; ++a) row[a] = eval_basis(nodes, nodes.index().unrank(a), p);
  }
  return v;
}

VandermondeSolution solve_vandermonde_lu(const PointSet& points, std::span<const double> values, int m, int n) {
  auto v = build_vandermonde(points, m, n);
  if (values.size() != v.rows()) throw InvalidArgument("solve_vandermonde_lu: need one value per point");
  const LuDecomposition lu(v);
  if (lu.singular(kPivotTolerance)) {
    throw NumericalError("solve_vandermonde_lu: Vandermonde matrix is singular; the points are not unisolvent");
  }
  auto c = lu.solve(values);
  const auto fitted = v.multiply(c);
  double residual = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) residual = std::max(residual, std::abs(fitted[i] - values[i]));
  return {MonomialPoly(m, n, std::move(c)), residual};
}

DenseMatrix invert_vandermonde(const PointSet& points, int m, int n) {
  const LuDecomposition lu(build_vandermonde(points, m, n));
  if (lu.singular(kPivotTolerance)) {
    throw NumericalError("invert_vandermonde: Vandermonde matrix is singular; the points are not unisolvent");
  }
  return lu.inverse();
}

}  // namespace pip
