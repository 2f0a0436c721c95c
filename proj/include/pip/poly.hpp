#pragma once

// Operations on Newton-form polynomials: evaluation, derivatives, box
// integrals and conversion to normal form. All traversals follow the same
// split Q = Q1(x_1..x_{m-1}) + (x_m - p_{m,1}) Q2(x) that the solver uses.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pip/solver.hpp"

namespace pip {

class Box {
 public:
  Box(std::vector<std::pair<double, double>> intervals);
  static Box cube(int m, double a, double b);

  std::size_t dim() const noexcept { return intervals_.size(); }
  double lower(std::size_t i) const { return intervals_[i].first; }
  double upper(std::size_t i) const { return intervals_[i].second; }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

struct EvalStats {
  std::uint64_t coefficient_reads = 0;
};

/// Q(x) with x in ambient coordinates (tau^{-1} is applied for affine sets).
/// Reads each coefficient exactly once.
double eval_newton(const NewtonPoly& q, std::span<const double> x, EvalStats* stats = nullptr);

/// dQ/dx_i at x, i zero-based, ambient coordinates.
double partial_derivative(const NewtonPoly& q, int i, std::span<const double> x);

/// Exact integral over a box; canonical node sets only.
double integrate_hypercube(const NewtonPoly& q, const Box& box);

/// Normal form of q; canonical node sets only. O(n N).
MonomialPoly newton_to_monomial(const NewtonPoly& q);

double eval_monomial(const MonomialPoly& p, std::span<const double> x);

/// prod_i prod_{j < alpha_i} (x_i - p_{i,j}) with x in canonical coordinates.
double eval_basis(const NewtonNodeSet& nodes, const MultiIndex& alpha, std::span<const double> x);

/// Values of q at all of its own nodes, LowerSet order, in O(n N). This is
/// the inverse of pip_solve.
std::vector<double> evaluate_at_nodes(const NewtonPoly& q);

}  // namespace pip
