#include "pip/poly.hpp"

#include <cmath>

#include "pip/error.hpp"

namespace pip {

Box::Box(std::vector<std::pair<double, double>> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw InvalidArgument("Box: need at least one interval");
  for (const auto& [a, b] : intervals_) {
    if (!(a < b)) throw InvalidArgument("Box: every interval needs a < b");
  }
}

Box Box::cube(int m, double a, double b) {
  if (m < 1) throw InvalidArgument("Box::cube: need m >= 1");
  return Box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(m), {a, b}));
}

namespace {

void check_point(const NewtonPoly& q, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(q.dim())) {
    throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, polynomial has dimension " +
                          std::to_string(q.dim()));
  }
}

std::vector<double> to_canonical(const NewtonPoly& q, std::span<const double> x) {
  check_point(q, x);
  const auto& tau = q.nodes().affine();
  return tau ? tau->apply_inverse(x) : std::vector<double>(x.begin(), x.end());
}

// Slab traversal shared by the evaluators: active dimensions 0..dims-1, top
// active dimension restricted to alpha >= shift, `corner` the rank of the
// slab's first index.
class Horner {
 public:
  Horner(const NewtonPoly& q, std::span<const double> x, EvalStats* stats)
      : q_(q), index_(q.index()), c_(q.coefficients()), x_(x), stats_(stats) {}

  double value(int dims, int budget, int shift, std::size_t corner) const {
    if (dims == 0 || budget == 0) {
      if (stats_) ++stats_->coefficient_reads;
      return c_[corner];
    }
    const int d = dims - 1;
    const double factor = x_[static_cast<std::size_t>(d)] - q_.nodes().generator(d)[static_cast<std::size_t>(shift)];
    const double lower = value(dims - 1, budget, 0, corner);
    return lower + factor * value(dims, budget - 1, shift + 1, index_.successor(corner, d));
  }

  // (value, directional derivative along `dir`) carried through the product rule.
  std::pair<double, double> with_derivative(int dims, int budget, int shift, std::size_t corner,
                                            std::span<const double> dir) const {
    if (dims == 0 || budget == 0) return {c_[corner], 0.0};
    const int d = dims - 1;
    const double factor = x_[static_cast<std::size_t>(d)] - q_.nodes().generator(d)[static_cast<std::size_t>(shift)];
    const auto [s, ds] = with_derivative(dims - 1, budget, 0, corner, dir);
    const auto [r, dr] = with_derivative(dims, budget - 1, shift + 1, index_.successor(corner, d), dir);
    return {s + factor * r, ds + dir[static_cast<std::size_t>(d)] * r + factor * dr};
  }

 private:
  const NewtonPoly& q_;
  const LowerSet& index_;
  std::span<const double> c_;
  std::span<const double> x_;
  EvalStats* stats_;
};

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

void require_canonical(const NewtonPoly& q, const char* who) {
  if (!q.nodes().canonical()) {
    throw InvalidArgument(std::string(who) +
                          ": node set carries an affine map; compose f with tau and interpolate on the canonical "
                          "nodes instead");
  }
}

// In-place conversion of the slab polynomial S + (x_d - p_shift) R to
// monomials in x_d (with R's exponents stored one position higher).
void to_monomial(const NewtonPoly& q, std::span<double> v, int dims, int budget, int shift, std::size_t corner) {
  if (dims == 0 || budget == 0) return;
  const LowerSet& index = q.index();
  const int d = dims - 1;
  to_monomial(q, v, dims - 1, budget, 0, corner);
  to_monomial(q, v, dims, budget - 1, shift + 1, index.successor(corner, d));
  const double p = q.nodes().generator(d)[static_cast<std::size_t>(shift)];
  for_each_base(index, d, budget - 1, corner, [&](std::size_t base, int slack) {
    // Position e of the fibre holds exponent e after this pass; read e+1
    // before it is overwritten.
    std::size_t r = base;
    for (int e = 0; e <= slack; ++e) {
      const std::size_t next = index.successor(r, d);
      v[r] -= p * v[next];
      r = next;
    }
  });
}

void at_nodes(const NewtonPoly& q, std::span<double> v, int dims, int budget, int shift, std::size_t corner) {
  if (dims == 0 || budget == 0) return;
  const LowerSet& index = q.index();
  const int d = dims - 1;
  at_nodes(q, v, dims - 1, budget, 0, corner);
  at_nodes(q, v, dims, budget - 1, shift + 1, index.successor(corner, d));
  const auto& g = q.nodes().generator(d);
  const double plane = g[static_cast<std::size_t>(shift)];
  for_each_base(index, d, budget - 1, corner, [&](std::size_t base, int slack) {
    const double below = v[base];
    std::size_t r = base;
    for (int k = 1; k <= slack + 1; ++k) {
      r = index.successor(r, d);
      v[r] = below + (g[static_cast<std::size_t>(shift + k)] - plane) * v[r];
    }
  });
}

}  // namespace

double eval_newton(const NewtonPoly& q, std::span<const double> x, EvalStats* stats) {
  const auto xc = to_canonical(q, x);
  return Horner(q, xc, stats).value(q.dim(), q.degree(), 0, 0);
}

double partial_derivative(const NewtonPoly& q, int i, std::span<const double> x) {
  if (i < 0 || i >= q.dim()) throw InvalidArgument("partial_derivative: dimension index out of range");
  const auto xc = to_canonical(q, x);
  // d/dy_i of Q(A^{-1}(y - b)) is the derivative along column i of A^{-1}.
  std::vector<double> dir(static_cast<std::size_t>(q.dim()), 0.0);
  if (const auto& tau = q.nodes().affine()) {
    for (std::size_t j = 0; j < dir.size(); ++j) dir[j] = tau->inverse_matrix()(j, static_cast<std::size_t>(i));
  } else {
    dir[static_cast<std::size_t>(i)] = 1.0;
  }
  return Horner(q, xc, nullptr).with_derivative(q.dim(), q.degree(), 0, 0, dir).second;
}

double integrate_hypercube(const NewtonPoly& q, const Box& box) {
  require_canonical(q, "integrate_hypercube");
  if (box.dim() != static_cast<std::size_t>(q.dim())) throw InvalidArgument("integrate_hypercube: box dimension mismatch");
  const int m = q.dim();
  const int n = q.degree();
  const auto width = static_cast<std::size_t>(n) + 1;

  // weights[d][k] = integral over [a_d, b_d] of prod_{j<k} (t - p_{d,j}).
  std::vector<double> weights(static_cast<std::size_t>(m) * width);
  std::vector<double> omega(width + 1);
  std::vector<double> pa(width + 1), pb(width + 1);
  for (int d = 0; d < m; ++d) {
    const double a = box.lower(static_cast<std::size_t>(d));
    const double b = box.upper(static_cast<std::size_t>(d));
    pa[0] = a;
    pb[0] = b;
    for (std::size_t j = 1; j <= width; ++j) {
      pa[j] = pa[j - 1] * a;
      pb[j] = pb[j - 1] * b;
    }
    std::fill(omega.begin(), omega.end(), 0.0);
    omega[0] = 1.0;
    const auto& g = q.nodes().generator(d);
    for (std::size_t k = 0; k < width; ++k) {
      if (k > 0) {
        // omega <- omega * (t - p_{k-1})
        const double p = g[k - 1];
        for (std::size_t j = k; j > 0; --j) omega[j] = omega[j - 1] - p * omega[j];
        omega[0] = -p * omega[0];
      }
      double w = 0.0;
      for (std::size_t j = 0; j <= k; ++j) w += omega[j] * (pb[j] - pa[j]) / static_cast<double>(j + 1);
      weights[static_cast<std::size_t>(d) * width + k] = w;
    }
  }

  const LowerSet& index = q.index();
  const auto c = q.coefficients();
  auto integrate = [&](auto&& self, int dims, int budget, std::size_t corner) -> double {
    if (dims == 0) return c[corner];
    const int d = dims - 1;
    double acc = 0.0;
    std::size_t r = corner;
    for (int k = 0; k <= budget; ++k) {
      acc += weights[static_cast<std::size_t>(d) * width + static_cast<std::size_t>(k)] * self(self, d, budget - k, r);
      if (k < budget) r = index.successor(r, d);
    }
    return acc;
  };
  return integrate(integrate, m, n, 0);
}

MonomialPoly newton_to_monomial(const NewtonPoly& q) {
  require_canonical(q, "newton_to_monomial");
  std::vector<double> v(q.coefficients().begin(), q.coefficients().end());
  to_monomial(q, v, q.dim(), q.degree(), 0, 0);
  return MonomialPoly(q.nodes().shared_index(), std::move(v));
}

double eval_monomial(const MonomialPoly& p, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(p.dim())) throw InvalidArgument("eval_monomial: dimension mismatch");
  const auto m = static_cast<std::size_t>(p.dim());
  const auto width = static_cast<std::size_t>(p.degree()) + 1;
  std::vector<double> powers(m * width);
  for (std::size_t d = 0; d < m; ++d) {
    powers[d * width] = 1.0;
    for (std::size_t k = 1; k < width; ++k) powers[d * width + k] = powers[d * width + k - 1] * x[d];
  }
  const auto c = p.coefficients();
  double acc = 0.0;
  for (std::size_t r = 0; r < p.size(); ++r) {
    const auto alpha = p.index().exponents(r);
    double term = c[r];
    for (std::size_t d = 0; d < m; ++d) term *= powers[d * width + static_cast<std::size_t>(alpha[d])];
    acc += term;
  }
  return acc;
}

double eval_basis(const NewtonNodeSet& nodes, const MultiIndex& alpha, std::span<const double> x) {
  const auto m = static_cast<std::size_t>(nodes.dim());
  if (alpha.dim() != m || x.size() != m) throw InvalidArgument("eval_basis: dimension mismatch");
  double prod = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& g = nodes.generator(static_cast<int>(i));
    if (static_cast<std::size_t>(alpha[i]) > g.size()) throw InvalidArgument("eval_basis: exponent exceeds degree");
    for (int j = 0; j < alpha[i]; ++j) prod *= x[i] - g[static_cast<std::size_t>(j)];
  }
  return prod;
}

std::vector<double> evaluate_at_nodes(const NewtonPoly& q) {
  std::vector<double> v(q.coefficients().begin(), q.coefficients().end());
  at_nodes(q, v, q.dim(), q.degree(), 0, 0);
  return v;
}

}  // namespace pip
