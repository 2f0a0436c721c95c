#pragma once

// Multi-index combinatorics for the total-degree space Pi_{m,n}.
//
// Every multi-index array in this library (node sets, Newton coefficients,
// monomial coefficients, file formats) uses one global ordering: total degree
// first, then lexicographic with alpha_1 most significant and larger exponents
// first. For m = 2, n = 2 that is (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pip {

/// C(m+n, n), the dimension of Pi_{m,n}. Throws OverflowError if the result
/// does not fit in 64 bits.
std::uint64_t count_coefficients(int m, int n);

/// Number of monomials of exact degree k in m variables, C(m+k,m) - C(m+k-1,m).
std::uint64_t count_degree_monomials(int m, int k);

/// Binomial coefficient with overflow checking.
std::uint64_t binomial(std::uint64_t top, std::uint64_t bottom);

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  std::size_t dim() const noexcept { return exps_.size(); }
  int order() const noexcept;
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const noexcept { return exps_; }

  /// Componentwise alpha_i <= other_i.
  bool dominated_by(const MultiIndex& other) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exps_;
};

/// The downward-closed set A_{m,n} = { alpha : |alpha| <= n } in canonical order.
///
/// Positions are stored flat (m ints per index). A successor table gives the
/// position of alpha + e_d in O(1), which the solver and evaluator use to walk
/// fibres without hashing.
class LowerSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  LowerSet(int m, int n);

  int dim() const noexcept { return m_; }
  int degree() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }

  /// Exponents of the index at position r.
  std::span<const int> exponents(std::size_t r) const {
    return {exps_.data() + r * static_cast<std::size_t>(m_), static_cast<std::size_t>(m_)};
  }
  MultiIndex unrank(std::size_t r) const;

  /// Position of alpha. Throws InvalidArgument if alpha is not in the set.
  std::size_t rank(std::span<const int> alpha) const;
  std::size_t rank(const MultiIndex& alpha) const { return rank(alpha.exponents()); }

  /// Position of alpha + e_d (d zero-based), or npos when |alpha| == n.
  std::size_t successor(std::size_t r, int d) const {
    return succ_[r * static_cast<std::size_t>(m_) + static_cast<std::size_t>(d)];
  }

  int order(std::size_t r) const;

 private:
  // C(s + t, t)
  std::size_t stars_and_bars(int s, int t) const {
    return compositions_[static_cast<std::size_t>(s) * static_cast<std::size_t>(m_ + 1) +
                         static_cast<std::size_t>(t)];
  }

  int m_;
  int n_;
  std::size_t size_;
  std::vector<int> exps_;
  std::vector<std::size_t> succ_;
  // offsets_[k] = number of indices of order < k
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> compositions_;
};

/// Binary recursion tree of the interpolation problem. The root is labelled
/// (m, n); vertex (d, g) has left child (d-1, g) and right child (d, g-1);
/// vertices with d == 0 or g == 0 are leaves.
class PipTree {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  struct Vertex {
    int dim;
    int deg;
    std::size_t left = npos;
    std::size_t right = npos;
    bool is_leaf() const noexcept { return left == npos; }
  };

  /// Builds the tree; throws SizeLimitError if N(m,n) exceeds max_leaves.
  PipTree(int m, int n, std::uint64_t max_leaves = 1'000'000);

  int dim() const noexcept { return m_; }
  int degree() const noexcept { return n_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  /// Leaf vertex ids in left-to-right order.
  const std::vector<std::size_t>& leaves() const noexcept { return leaves_; }
  /// Descent vector of each leaf path, parallel to leaves(): entry i counts
  /// the path vertices whose dimension label is i + 1.
  const std::vector<std::vector<int>>& descent_vectors() const noexcept { return descents_; }
  /// Longest root-to-leaf edge count.
  int depth() const noexcept { return depth_; }

 private:
  int m_;
  int n_;
  int depth_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> leaves_;
  std::vector<std::vector<int>> descents_;
};

/// Maps a leaf descent vector of T_{m,n} (m = descent.size()) to its
/// multi-index, alpha_i = max(k_i - 1, 0). Throws InvalidArgument if the
/// vector does not describe a leaf path of T_{m,n}.
MultiIndex descent_to_multiindex(std::span<const int> descent, int n);

}  // namespace pip
