#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pip/error.hpp"
#include "pip/poly.hpp"

using namespace pip;

namespace {

NewtonPoly random_poly(std::mt19937_64& rng, int m, int n, NodeKind kind = NodeKind::Chebyshev) {
  auto set = generate_newton_nodes(m, n, kind);
  auto c = oracle::uniform(rng, set.size());
  return NewtonPoly(std::move(set), std::move(c));
}

std::vector<std::vector<double>> generator_table(const NewtonNodeSet& set) {
  std::vector<std::vector<double>> g;
  for (const auto& gen : set.generators()) g.emplace_back(gen.values().begin(), gen.values().end());
  return g;
}

std::vector<oracle::Index> index_table(const LowerSet& set) {
  std::vector<oracle::Index> out;
  for (std::size_t r = 0; r < set.size(); ++r) {
    const auto e = set.exponents(r);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

// Newton form of a polynomial given by a callable, via interpolation.
NewtonPoly fit(int m, int n, const std::function<double(std::span<const double>)>& f) {
  return interpolate_function(generate_newton_nodes(m, n, NodeKind::Chebyshev), f).poly;
}

}  // namespace

TEST_CASE("evaluation basics") {
  auto set = generate_newton_nodes(3, 2, NodeKind::Chebyshev);
  std::vector<double> c(set.size(), 0.0);
  c[0] = 7.0;
  const NewtonPoly seven(set, c);
  CHECK(eval_newton(seven, std::vector<double>{0.3, -2.0, 5.0}) == 7.0);

  NewtonNodeSet grid(2, std::vector<GeneratingNodes1D>(2, GeneratingNodes1D({0, 1, 2})));
  const NewtonPoly lin(grid, {0, 1, 2, 0, 0, 0});
  CHECK(eval_newton(lin, std::vector<double>{0.3, 0.4}) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK_THROWS_AS(eval_newton(lin, std::vector<double>{0.3}), InvalidArgument);
}

TEST_CASE("evaluation matches the naive sum") {
  std::mt19937_64 rng(1);
  for (int m = 1; m <= 4; ++m) {
    const auto q = random_poly(rng, m, 4);
    const auto g = generator_table(q.nodes());
    const auto idx = index_table(q.index());
    for (int t = 0; t < 50; ++t) {
      const auto x = oracle::uniform(rng, static_cast<std::size_t>(m));
      const double naive = oracle::newton_sum(g, idx, q.coefficients(), x);
      CHECK(std::abs(eval_newton(q, x) - naive) <= 1e-12 * std::max(1.0, std::abs(naive)));
    }
  }
}

TEST_CASE("each coefficient is read once") {
  std::mt19937_64 rng(2);
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const auto q = random_poly(rng, m, n);
      EvalStats stats;
      eval_newton(q, oracle::uniform(rng, static_cast<std::size_t>(m)), &stats);
      CHECK(stats.coefficient_reads == count_coefficients(m, n));
    }
  }
}

TEST_CASE("evaluation is linear in the coefficients") {
  std::mt19937_64 rng(3);
  const auto q1 = random_poly(rng, 3, 4);
  const auto q2 = random_poly(rng, 3, 4);
  const double a = oracle::uniform(rng, 1)[0];
  const double b = oracle::uniform(rng, 1)[0];
  std::vector<double> c(q1.size());
  for (std::size_t r = 0; r < c.size(); ++r) c[r] = a * q1.coefficients()[r] + b * q2.coefficients()[r];
  const NewtonPoly mix(q1.nodes(), c);
  for (int t = 0; t < 20; ++t) {
    const auto x = oracle::uniform(rng, 3);
    CHECK(eval_newton(mix, x) == doctest::Approx(a * eval_newton(q1, x) + b * eval_newton(q2, x)).epsilon(1e-12));
  }
}

TEST_CASE("partial derivatives") {
  const auto xy = fit(2, 2, [](auto x) { return x[0] * x[1]; });
  CHECK(partial_derivative(xy, 0, std::vector<double>{2, 3}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(partial_derivative(xy, 1, std::vector<double>{2, 3}) == doctest::Approx(2.0).epsilon(1e-12));

  const auto c = fit(3, 3, [](auto) { return 4.0; });
  for (int i = 0; i < 3; ++i) CHECK(partial_derivative(c, i, std::vector<double>{0.1, 0.2, 0.3}) == 0.0);
  CHECK_THROWS_AS(partial_derivative(c, 3, std::vector<double>{0, 0, 0}), InvalidArgument);

  std::mt19937_64 rng(4);
  const auto q = random_poly(rng, 3, 5);
  const double h = 1e-5;
  for (int t = 0; t < 100; ++t) {
    auto x = oracle::uniform(rng, 3);
    for (int i = 0; i < 3; ++i) {
      auto xp = x, xm = x;
      xp[static_cast<std::size_t>(i)] += h;
      xm[static_cast<std::size_t>(i)] -= h;
      const double fd = (eval_newton(q, xp) - eval_newton(q, xm)) / (2 * h);
      const double d = partial_derivative(q, i, x);
      CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("derivatives through an affine map") {
  DenseMatrix a(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = 0.5;
  a(1, 0) = -0.3;
  a(1, 1) = 1.5;
  const AffineMap tau(a, {0.1, -0.2});
  auto f = [](std::span<const double> x) { return x[0] * x[0] * x[1] - 3 * x[1]; };
  const auto q = interpolate_function(generate_newton_nodes(2, 3, NodeKind::Chebyshev, tau), f).poly;
  const std::vector<double> x{0.4, 0.7};
  CHECK(eval_newton(q, x) == doctest::Approx(f(x)).epsilon(1e-10));
  CHECK(partial_derivative(q, 0, x) == doctest::Approx(2 * x[0] * x[1]).epsilon(1e-10));
  CHECK(partial_derivative(q, 1, x) == doctest::Approx(x[0] * x[0] - 3).epsilon(1e-10));
  CHECK_THROWS_AS(integrate_hypercube(q, Box::cube(2, -1, 1)), InvalidArgument);
  CHECK_THROWS_AS(newton_to_monomial(q), InvalidArgument);
}

TEST_CASE("hypercube integrals") {
  const auto sq = fit(2, 2, [](auto x) { return x[0] * x[0] + x[1] * x[1]; });
  CHECK(integrate_hypercube(sq, Box::cube(2, -1, 1)) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  const auto one = fit(3, 2, [](auto) { return 1.0; });
  CHECK(integrate_hypercube(one, Box::cube(3, 0, 2)) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK_THROWS_AS(Box({{1.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(integrate_hypercube(one, Box::cube(2, 0, 1)), InvalidArgument);

  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m) {
    const auto q = random_poly(rng, m, 4);
    const auto p = newton_to_monomial(q);
    std::vector<std::pair<double, double>> iv;
    for (int i = 0; i < m; ++i) iv.emplace_back(-1.0 + 0.3 * i, 0.5 + 0.2 * i);
    const double want = oracle::monomial_integral(index_table(p.index()), p.coefficients(), iv);
    CHECK(std::abs(integrate_hypercube(q, Box(iv)) - want) <= 1e-11);
  }
}

TEST_CASE("derivative of the integral in its upper limit") {
  std::mt19937_64 rng(6);
  const auto q = random_poly(rng, 2, 4);
  const double b = 0.6, h = 1e-5;
  const double fd = (integrate_hypercube(q, Box({{-1, b + h}, {-1, 1}})) -
                     integrate_hypercube(q, Box({{-1, b - h}, {-1, 1}}))) / (2 * h);
  // restricted to x_1 = b, integrate over x_2 with Gauss-Legendre (5 points is exact for degree 9)
  const double gx[] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  const double gw[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                       0.2369268850561891};
  double slice = 0.0;
  for (int k = 0; k < 5; ++k) slice += gw[k] * eval_newton(q, std::vector<double>{b, gx[k]});
  CHECK(fd == doctest::Approx(slice).epsilon(1e-7));
}

TEST_CASE("newton to monomial conversion") {
  NewtonNodeSet one_d(2, {GeneratingNodes1D({0, 1, 2})});
  const auto p = newton_to_monomial(NewtonPoly(one_d, {0, 1, 1}));
  CHECK(oracle::max_abs_diff(p.coefficients(), std::vector<double>{0, 0, 1}) == 0.0);
  CHECK(eval_monomial(p, std::vector<double>{3.0}) == 9.0);

  const auto c = newton_to_monomial(fit(3, 3, [](auto) { return -2.5; }));
  CHECK(c.coefficients()[0] == doctest::Approx(-2.5).epsilon(1e-15));
  for (std::size_t r = 1; r < c.size(); ++r) CHECK(std::abs(c.coefficients()[r]) <= 1e-14);

  std::mt19937_64 rng(7);
  const auto q = random_poly(rng, 3, 3);
  const auto mono = newton_to_monomial(q);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::uniform(rng, 3);
    CHECK(std::abs(eval_monomial(mono, x) - eval_newton(q, x)) <= 1e-9);
  }

  const MonomialPoly zero(2, 3, std::vector<double>(10, 0.0));
  CHECK(eval_monomial(zero, std::vector<double>{0.3, 0.9}) == 0.0);
  CHECK_THROWS_AS(eval_monomial(zero, std::vector<double>{0.3}), InvalidArgument);
}

TEST_CASE("monomial round trip through interpolation") {
  std::mt19937_64 rng(8);
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const MonomialPoly p(m, n, oracle::uniform(rng, count_coefficients(m, n)));
      const auto q = fit(m, n, [&](auto x) { return eval_monomial(p, x); });
      CHECK(oracle::max_abs_diff(newton_to_monomial(q).coefficients(), p.coefficients()) <= 1e-10);
    }
  }
}

TEST_CASE("newton basis") {
  const auto set = generate_newton_nodes(2, 3, NodeKind::Chebyshev);
  CHECK(eval_basis(set, MultiIndex{0, 0}, std::vector<double>{0.7, -4.0}) == 1.0);
  NewtonNodeSet two(2, {GeneratingNodes1D({0, 1, 5})});
  CHECK(eval_basis(two, MultiIndex{2}, std::vector<double>{2.0}) == 2.0);
  for (std::size_t a = 0; a < set.size(); ++a) {
    const auto alpha = set.index().unrank(a);
    CHECK(eval_basis(set, alpha, set.node(a)) != 0.0);
    for (std::size_t b = 0; b < set.size(); ++b) {
      if (!alpha.dominated_by(set.index().unrank(b))) CHECK(eval_basis(set, alpha, set.node(b)) == 0.0);
    }
  }
}

TEST_CASE("evaluate_at_nodes inverts pip_solve") {
  std::mt19937_64 rng(9);
  for (int m = 1; m <= 4; ++m) {
    const auto q = random_poly(rng, m, 5, NodeKind::Equidistant);
    const auto v = evaluate_at_nodes(q);
    for (std::size_t r = 0; r < q.size(); ++r)
      CHECK(v[r] == doctest::Approx(eval_newton(q, q.nodes().node(r))).epsilon(1e-12));
    CHECK(oracle::max_abs_diff(pip_solve(q.nodes(), v).coefficients(), q.coefficients()) <= 1e-9);
  }
}
