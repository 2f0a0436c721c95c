#pragma once

// Interpolation solvers: the recursive multivariate divided-difference scheme
// on Newton nodes and the dense Vandermonde baselines it is compared against.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pip/index.hpp"
#include "pip/linalg.hpp"
#include "pip/nodes.hpp"

namespace pip {

/// Q(x) = sum_alpha c_alpha N_alpha(x), N_alpha(x) = prod_i prod_{j < alpha_i} (x_i - p_{i,j}),
/// in canonical coordinates of the bound node set. Coefficients follow the
/// LowerSet order.
class NewtonPoly {
 public:
  NewtonPoly(NewtonNodeSet nodes, std::vector<double> coefficients);

  int dim() const noexcept { return nodes_.dim(); }
  int degree() const noexcept { return nodes_.degree(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const NewtonNodeSet& nodes() const noexcept { return nodes_; }
  const LowerSet& index() const noexcept { return nodes_.index(); }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }

 private:
  NewtonNodeSet nodes_;
  std::vector<double> coeffs_;
};

/// Normal form sum_alpha c_alpha x^alpha with coefficients in LowerSet order.
class MonomialPoly {
 public:
  MonomialPoly(int m, int n, std::vector<double> coefficients);
  MonomialPoly(std::shared_ptr<const LowerSet> index, std::vector<double> coefficients);

  int dim() const noexcept { return index_->dim(); }
  int degree() const noexcept { return index_->degree(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const LowerSet& index() const noexcept { return *index_; }
  std::shared_ptr<const LowerSet> shared_index() const noexcept { return index_; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

 private:
  std::shared_ptr<const LowerSet> index_;
  std::vector<double> coeffs_;
};

/// Newton coefficients c_k = f_k(p_{k+1}) with
/// f_k(x) = (f_{k-1}(x) - f_{k-1}(p_k)) / (x - p_k), computed in place in O(n^2).
std::vector<double> divided_differences_1d(const GeneratingNodes1D& nodes, std::span<const double> values);

struct SolveStats {
  // floating-point operations spent in hat transforms
  std::uint64_t flops = 0;
  // recursion calls (vertices of the recursion tree visited)
  std::uint64_t calls = 0;
};

/// Newton coefficients of the interpolant of `values` (one per node, LowerSet
/// order). The recursion splits A_{m,n} at the hyperplane x_m = p_{m,1}; each
/// value above the plane is replaced by (f(p_alpha) - f(p_alpha')) / (p_{m,alpha_m+1} - p_{m,1})
/// where alpha' zeroes alpha_m, then both halves recurse. Works in place on a
/// single coefficient array.
NewtonPoly pip_solve(const NewtonNodeSet& nodes, std::span<const double> values, SolveStats* stats = nullptr);

struct Interpolant {
  NewtonPoly poly;
  // max over nodes of |Q(p_alpha) - f(p_alpha)|
  double residual;
};

/// Samples f at every node (ambient coordinates) and solves.
Interpolant interpolate_function(const NewtonNodeSet& nodes, const std::function<double(std::span<const double>)>& f);

/// Matrix-size guard for the dense baselines; PIP_DENSE_LIMIT overrides the
/// default of 3000.
std::size_t dense_limit();

/// Monomial Vandermonde matrix: row i holds p_i^alpha in LowerSet order.
DenseMatrix build_vandermonde(const PointSet& points, int m, int n);

/// Newton-basis Vandermonde matrix, entry (beta, alpha) = N_alpha(p_beta).
DenseMatrix build_newton_vandermonde(const NewtonNodeSet& nodes);

struct VandermondeSolution {
  MonomialPoly poly;
  // ||V C - F||_inf
  double residual;
};

/// Relative pivot tolerance below which the baselines report singularity.
inline constexpr double kPivotTolerance = 1e-12;

/// Solves V_{m,n}(P) C = F by LU with partial pivoting. Throws NumericalError
/// when V is singular to tolerance.
VandermondeSolution solve_vandermonde_lu(const PointSet& points, std::span<const double> values, int m, int n);

/// Explicit inverse of V_{m,n}(P) through its LU factors.
DenseMatrix invert_vandermonde(const PointSet& points, int m, int n);

}  // namespace pip
