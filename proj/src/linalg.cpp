#include "pip/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pip/error.hpp"

namespace pip {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("DenseMatrix::multiply: size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  if (other.rows_ != cols_) throw InvalidArgument("DenseMatrix::multiply: shape mismatch");
  DenseMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const auto src = other.row(k);
      for (std::size_t j = 0; j < other.cols_; ++j) dst[j] += a * src[j];
    }
  }
  return out;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

LuDecomposition::LuDecomposition(DenseMatrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw InvalidArgument("LuDecomposition: matrix must be square");
  scale_ = lu_.max_abs();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  min_pivot_ = n ? std::numeric_limits<double>::infinity() : 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    min_pivot_ = std::min(min_pivot_, best);
    max_pivot_ = std::max(max_pivot_, best);
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
      ++swaps_;
    }
    if (best == 0.0) continue;

    const double pivot = lu_(k, k);
    const auto pivot_row = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto r = lu_.row(i);
      const double factor = r[k] / pivot;
      r[k] = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= factor * pivot_row[j];
    }
  }
}

bool LuDecomposition::singular(double relative_tolerance) const noexcept {
  return size() > 0 && !(min_pivot_ > relative_tolerance * scale_);
}

void LuDecomposition::solve_in_place(std::span<double> x) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = lu_.row(i);
    double acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto r = lu_.row(i);
    double acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
    x[i] = acc / r[i];
  }
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw InvalidArgument("LuDecomposition::solve: size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  solve_in_place(x);
  return x;
}

DenseMatrix LuDecomposition::inverse() const {
  const std::size_t n = size();
  // Solve for columns of the identity, then transpose into place.
  DenseMatrix inv_t(n, n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = perm_[i] == j ? 1.0 : 0.0;
    solve_in_place(col);
    std::copy(col.begin(), col.end(), inv_t.row(j).begin());
  }
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = inv_t(j, i);
  }
  return inv;
}

double LuDecomposition::determinant() const noexcept {
  double det = (swaps_ % 2) ? -1.0 : 1.0;
  for (std::size_t i = 0; i < size(); ++i) det *= lu_(i, i);
  return det;
}

}  // namespace pip
