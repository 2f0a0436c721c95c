#pragma once

// Node generation: 1D generator families and the multidimensional Newton
// node grid { (p_{1,alpha_1+1}, ..., p_{m,alpha_m+1}) : |alpha| <= n },
// optionally pushed through an affine map.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pip/index.hpp"
#include "pip/linalg.hpp"

namespace pip {

/// Minimum pairwise gap accepted between 1D generating nodes.
inline constexpr double kNodeGapTolerance = 1e-12;

class GeneratingNodes1D {
 public:
  /// Throws NumericalError if two values are closer than kNodeGapTolerance
  /// or a value is not finite.
  explicit GeneratingNodes1D(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  int degree() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// p_k = cos((2k-1) pi / (2(n+1))), k = 1..n+1, in decreasing order.
GeneratingNodes1D chebyshev_1d(int n);

/// n+1 equally spaced points on [a, b]; the midpoint when n == 0.
GeneratingNodes1D equidistant_1d(int n, double a = -1.0, double b = 1.0);

/// tau(x) = A x + b with A of full rank.
class AffineMap {
 public:
  AffineMap(DenseMatrix a, std::vector<double> b);

  std::size_t dim() const noexcept { return offset_.size(); }
  const DenseMatrix& matrix() const noexcept { return a_; }
  const DenseMatrix& inverse_matrix() const noexcept { return a_inv_; }
  std::span<const double> offset() const noexcept { return offset_; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_inverse(std::span<const double> y) const;

 private:
  DenseMatrix a_;
  DenseMatrix a_inv_;
  std::vector<double> offset_;
};

enum class NodeKind { Chebyshev, Equidistant };

std::string to_string(NodeKind kind);
NodeKind parse_node_kind(const std::string& name);

/// N points in R^m stored row by row.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ ? coords_.size() / dim_ : 0; }
  std::span<const double> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<double> operator[](std::size_t i) { return {coords_.data() + i * dim_, dim_}; }
  void push_back(std::span<const double> p);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Immutable; copies share one underlying state.
class NewtonNodeSet {
 public:
  /// One generator of length n+1 per dimension.
  NewtonNodeSet(int n, std::vector<GeneratingNodes1D> generators, std::optional<AffineMap> tau = std::nullopt);

  int dim() const noexcept { return static_cast<int>(state_->generators.size()); }
  int degree() const noexcept { return state_->n; }
  std::size_t size() const noexcept { return state_->index.size(); }

  const LowerSet& index() const noexcept { return state_->index; }
  std::shared_ptr<const LowerSet> shared_index() const noexcept { return {state_, &state_->index}; }
  const GeneratingNodes1D& generator(int i) const { return state_->generators[static_cast<std::size_t>(i)]; }
  const std::vector<GeneratingNodes1D>& generators() const noexcept { return state_->generators; }
  const std::optional<AffineMap>& affine() const noexcept { return state_->tau; }
  bool canonical() const noexcept { return !state_->tau.has_value(); }

  /// Node for the multi-index at LowerSet position r, in ambient coordinates.
  std::vector<double> node(std::size_t r) const;
  /// Same node before the affine map is applied.
  std::vector<double> canonical_node(std::size_t r) const;

  /// All nodes in LowerSet order, ambient coordinates.
  PointSet points() const;

 private:
  struct State {
    int n;
    std::vector<GeneratingNodes1D> generators;
    std::optional<AffineMap> tau;
    LowerSet index;
  };
  std::shared_ptr<const State> state_;
};

NewtonNodeSet generate_newton_nodes(int m, int n, NodeKind kind, std::optional<AffineMap> tau = std::nullopt);
NewtonNodeSet generate_newton_nodes(int m, int n, std::span<const NodeKind> kinds,
                                    std::optional<AffineMap> tau = std::nullopt);

/// Node for alpha; throws InvalidArgument when alpha is not in A_{m,n}.
std::vector<double> node_for(const NewtonNodeSet& set, const MultiIndex& alpha);

/// Largest N(m,n) the brute-force oracle accepts.
inline constexpr std::size_t kOracleLimit = 2000;

/// Brute-force unisolvence check: factor the monomial Vandermonde matrix
/// V_{m,n}(P) with partial pivoting and accept when the smallest pivot is
/// larger than 1e-10 times the largest.
bool check_unisolvent_oracle(const PointSet& points, int m, int n);

}  // namespace pip
