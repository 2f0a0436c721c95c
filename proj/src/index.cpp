#include "pip/index.hpp"

#include <algorithm>
#include <numeric>

#include "pip/error.hpp"

namespace pip {

std::uint64_t binomial(std::uint64_t top, std::uint64_t bottom) {
  if (bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  unsigned __int128 c = 1;
  for (std::uint64_t k = 1; k <= bottom; ++k) {
    // c * (top - bottom + k) / k is exact at every step.
    c = c * (top - bottom + k) / k;
    if (c > UINT64_MAX) {
      throw OverflowError("binomial(" + std::to_string(top) + ", " + std::to_string(bottom) +
                          ") does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t count_coefficients(int m, int n) {
  if (m < 0 || n < 0) throw InvalidArgument("count_coefficients: m and n must be nonnegative");
  return binomial(static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n),
                  static_cast<std::uint64_t>(n));
}

std::uint64_t count_degree_monomials(int m, int k) {
  if (m < 1 || k < 0) throw InvalidArgument("count_degree_monomials: need m >= 1, k >= 0");
  // C(m+k,m) - C(m+k-1,m) = C(m+k-1, k)
  return binomial(static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(k) - 1,
                  static_cast<std::uint64_t>(k));
}

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("MultiIndex: negative exponent");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

int MultiIndex::order() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (other.dim() != dim()) throw InvalidArgument("MultiIndex: dimension mismatch");
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps_[i]);
  }
  return s + ")";
}

namespace {

// Appends all compositions of `total` into `parts` nonnegative parts, first
// part descending.
void append_compositions(int total, int parts, std::vector<int>& prefix, std::vector<int>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    prefix.push_back(first);
    append_compositions(total - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

LowerSet::LowerSet(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 0) throw InvalidArgument("LowerSet: need m >= 1, n >= 0");
  const std::uint64_t count = count_coefficients(m, n);
  if (count > (1ULL << 32)) throw SizeLimitError("LowerSet: N(m,n) too large to enumerate");
  size_ = static_cast<std::size_t>(count);

  // compositions_[s * (m + 1) + t] = C(s + t, t) for s <= n, t <= m; every
  // entry is at most N(m,n).
  const auto cols = static_cast<std::size_t>(m + 1);
  compositions_.assign((static_cast<std::size_t>(n) + 1) * cols, 1);
  for (std::size_t s = 1; s <= static_cast<std::size_t>(n); ++s) {
    for (std::size_t t = 1; t < cols; ++t) {
      compositions_[s * cols + t] = compositions_[s * cols + t - 1] + compositions_[(s - 1) * cols + t];
    }
  }

  exps_.reserve(size_ * static_cast<std::size_t>(m));
  offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k <= n; ++k) {
    offsets_[static_cast<std::size_t>(k)] = exps_.size() / static_cast<std::size_t>(m);
    append_compositions(k, m, prefix, exps_);
  }
  offsets_[static_cast<std::size_t>(n) + 1] = size_;

  succ_.assign(size_ * static_cast<std::size_t>(m), npos);
  std::vector<int> alpha(static_cast<std::size_t>(m));
  for (std::size_t r = 0; r < size_; ++r) {
    auto e = exponents(r);
    if (order(r) == n) continue;
    std::copy(e.begin(), e.end(), alpha.begin());
    for (int d = 0; d < m; ++d) {
      ++alpha[static_cast<std::size_t>(d)];
      succ_[r * static_cast<std::size_t>(m) + static_cast<std::size_t>(d)] = rank(alpha);
      --alpha[static_cast<std::size_t>(d)];
    }
  }
}

MultiIndex LowerSet::unrank(std::size_t r) const {
  if (r >= size_) throw InvalidArgument("LowerSet::unrank: position out of range");
  auto e = exponents(r);
  return MultiIndex(std::vector<int>(e.begin(), e.end()));
}

int LowerSet::order(std::size_t r) const {
  auto e = exponents(r);
  return std::accumulate(e.begin(), e.end(), 0);
}

std::size_t LowerSet::rank(std::span<const int> alpha) const {
  if (alpha.size() != static_cast<std::size_t>(m_)) {
    throw InvalidArgument("LowerSet::rank: dimension mismatch");
  }
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw InvalidArgument("LowerSet::rank: negative exponent");
    total += a;
  }
  if (total > n_) throw InvalidArgument("LowerSet::rank: order exceeds degree");

  // Within a degree, count the indices that precede alpha: for each leading
  // coordinate, those with a larger entry and an equal prefix. The count of
  // compositions of s into t parts summed over s < r is C(r - 1 + t, t).
  std::size_t pos = offsets_[static_cast<std::size_t>(total)];
  int remaining = total;
  for (int i = 0; i + 1 < m_; ++i) {
    const int a = alpha[static_cast<std::size_t>(i)];
    const int tail = m_ - i - 1;
    if (remaining > a) {
      pos += stars_and_bars(remaining - a - 1, tail);
    }
    remaining -= a;
  }
  return pos;
}

PipTree::PipTree(int m, int n, std::uint64_t max_leaves) : m_(m), n_(n) {
  if (m < 1 || n < 0) throw InvalidArgument("PipTree: need m >= 1, n >= 0");
  const std::uint64_t leaves = count_coefficients(m, n);
  if (leaves > max_leaves) {
    throw SizeLimitError("PipTree: N(m,n) = " + std::to_string(leaves) + " exceeds limit " +
                         std::to_string(max_leaves));
  }
  vertices_.reserve(static_cast<std::size_t>(2 * leaves - 1));
  leaves_.reserve(static_cast<std::size_t>(leaves));
  descents_.reserve(static_cast<std::size_t>(leaves));

  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  // Depth-first, left before right; counts tracks the current path.
  auto visit = [&](auto&& self, int dim, int deg, int depth) -> std::size_t {
    const std::size_t id = vertices_.size();
    vertices_.push_back({dim, deg});
    if (dim >= 1) ++counts[static_cast<std::size_t>(dim - 1)];
    if (dim == 0 || deg == 0) {
      leaves_.push_back(id);
      descents_.push_back(counts);
      depth_ = std::max(depth_, depth);
    } else {
      const std::size_t l = self(self, dim - 1, deg, depth + 1);
      const std::size_t r = self(self, dim, deg - 1, depth + 1);
      vertices_[id].left = l;
      vertices_[id].right = r;
    }
    if (dim >= 1) --counts[static_cast<std::size_t>(dim - 1)];
    return id;
  };
  visit(visit, m, n, 0);
}

MultiIndex descent_to_multiindex(std::span<const int> descent, int n) {
  const int m = static_cast<int>(descent.size());
  if (m < 1 || n < 0) throw InvalidArgument("descent_to_multiindex: empty descent vector");
  auto fail = [&](const char* why) {
    throw InvalidArgument(std::string("descent_to_multiindex: not a leaf path of T_{m,n}: ") + why);
  };

  // A leaf path visits the dimensions m, m-1, ..., lowest contiguously, one
  // vertex on entry plus one per right move.
  int lowest = m + 1;
  for (int i = m; i >= 1; --i) {
    const int k = descent[static_cast<std::size_t>(i - 1)];
    if (k < 0) fail("negative count");
    if (k == 0) break;
    lowest = i;
  }
  if (lowest == m + 1) fail("root dimension never visited");
  for (int i = 1; i < lowest; ++i) {
    if (descent[static_cast<std::size_t>(i - 1)] != 0) fail("visited dimensions are not contiguous");
  }

  std::vector<int> alpha(static_cast<std::size_t>(m), 0);
  int right_moves = 0;
  for (int i = lowest; i <= m; ++i) {
    alpha[static_cast<std::size_t>(i - 1)] = descent[static_cast<std::size_t>(i - 1)] - 1;
    right_moves += alpha[static_cast<std::size_t>(i - 1)];
  }
  if (right_moves > n) fail("more right moves than the degree allows");

  if (right_moves < n) {
    // The path must end at a dimension-0 leaf, so every dimension is visited.
    if (lowest != 1) fail("path stops before reaching a leaf");
  } else if (lowest < m && descent[static_cast<std::size_t>(lowest - 1)] < 2) {
    // Entering (lowest, 0) by a left move is impossible: its parent is a leaf.
    fail("path continues past a leaf");
  }
  return MultiIndex(std::move(alpha));
}

}  // namespace pip
