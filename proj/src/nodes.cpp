#include "pip/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pip/error.hpp"
#include "pip/solver.hpp"

namespace pip {

GeneratingNodes1D::GeneratingNodes1D(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("GeneratingNodes1D: at least one node required");
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericalError("GeneratingNodes1D: non-finite node");
  }
  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] <= kNodeGapTolerance) {
      throw NumericalError("GeneratingNodes1D: nodes " + std::to_string(sorted[i - 1]) + " and " +
                           std::to_string(sorted[i]) + " coincide");
    }
  }
}

GeneratingNodes1D chebyshev_1d(int n) {
  if (n < 0) throw InvalidArgument("chebyshev_1d: n must be nonnegative");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n + 1; ++k) {
    p[static_cast<std::size_t>(k - 1)] = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * (n + 1)));
  }
  // cos(pi/2) is 6e-17 in floating point; the midpoint is exactly zero.
  if (n % 2 == 0) p[static_cast<std::size_t>(n / 2)] = 0.0;
  return GeneratingNodes1D(std::move(p));
}

GeneratingNodes1D equidistant_1d(int n, double a, double b) {
  if (n < 0) throw InvalidArgument("equidistant_1d: n must be nonnegative");
  if (!(a < b)) throw InvalidArgument("equidistant_1d: need a < b");
  if (n == 0) return GeneratingNodes1D({0.5 * (a + b)});
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) p[static_cast<std::size_t>(j)] = a + j * (b - a) / n;
  p.back() = b;
  return GeneratingNodes1D(std::move(p));
}

AffineMap::AffineMap(DenseMatrix a, std::vector<double> b) : a_(std::move(a)), offset_(std::move(b)) {
  const std::size_t m = offset_.size();
  if (a_.rows() != m || a_.cols() != m) throw InvalidArgument("AffineMap: A must be m x m with |b| = m");
  LuDecomposition lu(a_);
  if (lu.singular(1e-12)) throw InvalidArgument("AffineMap: matrix is rank deficient");
  a_inv_ = lu.inverse();
}

std::vector<double> AffineMap::apply(std::span<const double> x) const {
  auto y = a_.multiply(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset_[i];
  return y;
}

std::vector<double> AffineMap::apply_inverse(std::span<const double> y) const {
  if (y.size() != dim()) throw InvalidArgument("AffineMap: dimension mismatch");
  std::vector<double> shifted(y.begin(), y.end());
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= offset_[i];
  return a_inv_.multiply(shifted);
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Chebyshev:
      return "cheb";
    case NodeKind::Equidistant:
      return "equi";
  }
  return "?";
}

NodeKind parse_node_kind(const std::string& name) {
  if (name == "cheb" || name == "chebyshev") return NodeKind::Chebyshev;
  if (name == "equi" || name == "equidistant") return NodeKind::Equidistant;
  throw InvalidArgument("unknown node kind '" + name + "' (expected cheb or equi)");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 || coords_.size() % dim_ != 0) throw InvalidArgument("PointSet: ragged coordinates");
}

void PointSet::push_back(std::span<const double> p) {
  if (dim_ == 0) dim_ = p.size();
  if (p.size() != dim_) throw InvalidArgument("PointSet: dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

namespace {

int checked_dim(int n, const std::vector<GeneratingNodes1D>& generators, const std::optional<AffineMap>& tau) {
  if (generators.empty()) throw InvalidArgument("NewtonNodeSet: need m >= 1");
  if (n < 0) throw InvalidArgument("NewtonNodeSet: need n >= 0");
  for (const auto& g : generators) {
    if (g.size() != static_cast<std::size_t>(n) + 1) {
      throw InvalidArgument("NewtonNodeSet: every generator needs n+1 nodes");
    }
  }
  if (tau && tau->dim() != generators.size()) throw InvalidArgument("NewtonNodeSet: affine map dimension mismatch");
  return static_cast<int>(generators.size());
}

}  // namespace

NewtonNodeSet::NewtonNodeSet(int n, std::vector<GeneratingNodes1D> generators, std::optional<AffineMap> tau) {
  const int m = checked_dim(n, generators, tau);
  state_ = std::make_shared<const State>(State{n, std::move(generators), std::move(tau), LowerSet(m, n)});
}

std::vector<double> NewtonNodeSet::canonical_node(std::size_t r) const {
  const auto alpha = state_->index.exponents(r);
  std::vector<double> x(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) x[i] = state_->generators[i][static_cast<std::size_t>(alpha[i])];
  return x;
}

std::vector<double> NewtonNodeSet::node(std::size_t r) const {
  if (r >= size()) throw InvalidArgument("NewtonNodeSet::node: position out of range");
  auto x = canonical_node(r);
  return state_->tau ? state_->tau->apply(x) : x;
}

PointSet NewtonNodeSet::points() const {
  PointSet out;
  for (std::size_t r = 0; r < size(); ++r) out.push_back(node(r));
  return out;
}

NewtonNodeSet generate_newton_nodes(int m, int n, NodeKind kind, std::optional<AffineMap> tau) {
  if (m < 1) throw InvalidArgument("generate_newton_nodes: need m >= 1");
  std::vector<NodeKind> kinds(static_cast<std::size_t>(m), kind);
  return generate_newton_nodes(m, n, kinds, std::move(tau));
}

NewtonNodeSet generate_newton_nodes(int m, int n, std::span<const NodeKind> kinds, std::optional<AffineMap> tau) {
  if (m < 1 || n < 0) throw InvalidArgument("generate_newton_nodes: need m >= 1, n >= 0");
  if (kinds.size() != static_cast<std::size_t>(m)) throw InvalidArgument("generate_newton_nodes: one kind per dimension");
  std::vector<GeneratingNodes1D> gens;
  gens.reserve(kinds.size());
  for (NodeKind k : kinds) gens.push_back(k == NodeKind::Chebyshev ? chebyshev_1d(n) : equidistant_1d(n));
  return NewtonNodeSet(n, std::move(gens), std::move(tau));
}

std::vector<double> node_for(const NewtonNodeSet& set, const MultiIndex& alpha) {
  return set.node(set.index().rank(alpha));
}

bool check_unisolvent_oracle(const PointSet& points, int m, int n) {
  const std::uint64_t count = count_coefficients(m, n);
  if (count > kOracleLimit) {
    throw SizeLimitError("check_unisolvent_oracle: N(m,n) = " + std::to_string(count) + " exceeds " +
                         std::to_string(kOracleLimit));
  }
  if (points.size() != count || points.dim() != static_cast<std::size_t>(m)) {
    throw InvalidArgument("check_unisolvent_oracle: need exactly N(m,n) points in R^m");
  }
  LuDecomposition lu(build_vandermonde(points, m, n));
  return lu.min_pivot() > 1e-10 * lu.max_pivot();
}

}  // namespace pip
