#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pip/error.hpp"
#include "pip/index.hpp"

using namespace pip;

TEST_CASE("count_coefficients") {
  CHECK(count_coefficients(2, 2) == 6);
  CHECK(count_coefficients(100, 3) == 176851);
  CHECK(count_coefficients(35, 3) == 8436);
  CHECK(static_cast<double>(count_coefficients(100, 3)) / count_coefficients(35, 3) == doctest::Approx(20.96).epsilon(1e-3));
  for (int m = 0; m < 40; ++m) CHECK(count_coefficients(m, 0) == 1);
  CHECK(count_coefficients(0, 7) == 1);
  CHECK_THROWS_AS(count_coefficients(-1, 2), InvalidArgument);
  CHECK_THROWS_AS(count_coefficients(200, 200), OverflowError);
  CHECK(count_coefficients(33, 33) == 7219428434016265740ULL);  // C(66,33)
  CHECK_THROWS_AS(count_coefficients(34, 34), OverflowError);
}

TEST_CASE("count_degree_monomials") {
  CHECK(count_degree_monomials(2, 2) == 3);
  CHECK(count_degree_monomials(3, 1) == 3);
  for (int m = 1; m < 10; ++m) CHECK(count_degree_monomials(m, 0) == 1);
  CHECK_THROWS_AS(count_degree_monomials(0, 1), InvalidArgument);
}

TEST_CASE("lower set sizes agree with the counting functions") {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      LowerSet set(m, n);
      CHECK(set.size() == count_coefficients(m, n));
      std::uint64_t total = 0;
      for (int k = 0; k <= n; ++k) total += count_degree_monomials(m, k);
      CHECK(total == count_coefficients(m, n));
    }
  }
}

TEST_CASE("lower set enumeration order") {
  LowerSet a(1, 3);
  for (std::size_t r = 0; r < 4; ++r) CHECK(a.unrank(r) == MultiIndex{static_cast<int>(r)});

  LowerSet b(2, 2);
  const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(b.size() == expected.size());
  for (std::size_t r = 0; r < expected.size(); ++r) CHECK(b.unrank(r) == expected[r]);

  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const auto ref = oracle::lower_set(m, n);
      LowerSet set(m, n);
      REQUIRE(set.size() == ref.size());
      for (std::size_t r = 0; r < ref.size(); ++r) {
        const auto e = set.exponents(r);
        CHECK(std::vector<int>(e.begin(), e.end()) == ref[r]);
      }
    }
  }
}

TEST_CASE("rank and unrank are inverse") {
  LowerSet set(3, 4);
  for (std::size_t r = 0; r < set.size(); ++r) CHECK(set.rank(set.unrank(r)) == r);
  LowerSet big(7, 6);
  for (std::size_t r = 0; r < big.size(); ++r) REQUIRE(big.rank(big.exponents(r)) == r);
  CHECK_THROWS_AS(set.rank(MultiIndex{3, 2, 0}), InvalidArgument);
  CHECK_THROWS_AS(set.rank(MultiIndex{1, 1}), InvalidArgument);
  CHECK_THROWS_AS(set.rank(MultiIndex{-1, 0, 0}), InvalidArgument);
}

TEST_CASE("order is a linear extension of dominance") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      LowerSet set(m, n);
      for (std::size_t r = 0; r < set.size(); ++r) {
        CHECK(set.order(r) <= n);
        for (std::size_t s = 0; s < set.size(); ++s) {
          if (r != s && set.unrank(r).dominated_by(set.unrank(s))) CHECK(r < s);
        }
      }
    }
  }
}

TEST_CASE("successor table") {
  LowerSet set(3, 4);
  for (std::size_t r = 0; r < set.size(); ++r) {
    for (int d = 0; d < 3; ++d) {
      const std::size_t s = set.successor(r, d);
      if (set.order(r) == 4) {
        CHECK(s == LowerSet::npos);
      } else {
        const auto e = set.exponents(r);
        std::vector<int> next(e.begin(), e.end());
        ++next[static_cast<std::size_t>(d)];
        CHECK(s == set.rank(next));
      }
    }
  }
}

TEST_CASE("multi-index basics") {
  MultiIndex a{1, 0, 2};
  CHECK(a.dim() == 3);
  CHECK(a.order() == 3);
  CHECK(a.dominated_by(MultiIndex{1, 1, 2}));
  CHECK_FALSE(a.dominated_by(MultiIndex{0, 5, 5}));
  CHECK(a.to_string() == "(1,0,2)");
  CHECK_THROWS_AS(MultiIndex({1, -1}), InvalidArgument);
}

TEST_CASE("pip tree shape") {
  PipTree t12(1, 2);
  CHECK(t12.leaves().size() == 3);
  CHECK(t12.depth() == 2);
  std::multiset<std::vector<int>> got(t12.descent_vectors().begin(), t12.descent_vectors().end());
  std::multiset<std::vector<int>> want{{3}, {2}, {1}};
  CHECK(got == want);

  CHECK(PipTree(2, 1).depth() == 2);

  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 4; ++n) {
      PipTree t(m, n);
      CHECK(t.leaves().size() == count_coefficients(m, n));
      if (n >= 1) CHECK(t.depth() == m + n - 1);
      const auto& root = t.vertices().front();
      CHECK(root.dim == m);
      CHECK(root.deg == n);
      for (const auto& v : t.vertices()) {
        if (v.is_leaf()) {
          CHECK((v.dim == 0 || v.deg == 0));
        } else {
          CHECK(t.vertices()[v.left].dim == v.dim - 1);
          CHECK(t.vertices()[v.left].deg == v.deg);
          CHECK(t.vertices()[v.right].dim == v.dim);
          CHECK(t.vertices()[v.right].deg == v.deg - 1);
        }
      }
    }
  }
  CHECK_THROWS_AS(PipTree(10, 10, 1000), SizeLimitError);
}

TEST_CASE("descent vectors map bijectively onto the lower set") {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      PipTree t(m, n);
      LowerSet set(m, n);
      std::set<std::size_t> seen;
      std::set<std::vector<int>> paths;
      for (const auto& d : t.descent_vectors()) {
        paths.insert(d);
        const MultiIndex a = descent_to_multiindex(d, n);
        CHECK(a.order() <= n);
        seen.insert(set.rank(a));
      }
      CHECK(paths.size() == set.size());
      CHECK(seen.size() == set.size());
    }
  }
}

TEST_CASE("descent vector examples and validation") {
  const int n = 3;
  // Leaf at degree 0 in dimension m: k_m = n + 1, nothing else visited.
  CHECK(descent_to_multiindex(std::vector<int>{0, 0, n + 1}, n) == MultiIndex({0, 0, n}));
  // m = 1: the all-right path.
  CHECK(descent_to_multiindex(std::vector<int>{n + 1}, n) == MultiIndex{n});
  // (1,...,1,n+1) would need n right moves plus a left descent, which runs
  // past degree 0; it is not a leaf path for m >= 2.
  CHECK_THROWS_AS(descent_to_multiindex(std::vector<int>{1, 1, n + 1}, n), InvalidArgument);
  CHECK_THROWS_AS(descent_to_multiindex(std::vector<int>{1, 0, 2}, n), InvalidArgument);
  CHECK_THROWS_AS(descent_to_multiindex(std::vector<int>{0, 0, 0}, n), InvalidArgument);
  CHECK_THROWS_AS(descent_to_multiindex(std::vector<int>{9}, n), InvalidArgument);
  CHECK_THROWS_AS(descent_to_multiindex(std::vector<int>{}, n), InvalidArgument);
}
