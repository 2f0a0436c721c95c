#pragma once

// Small dense linear algebra used by the Vandermonde baselines, the
// unisolvence oracle and affine maps. Row-major, no external BLAS.

#include <cstddef>
#include <span>
#include <vector>

namespace pip {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  DenseMatrix multiply(const DenseMatrix& other) const;

  double max_abs() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting, PA = LU.
///
/// Factoring never throws on singular input; zero pivots are skipped and
/// reported through min_pivot(). Callers apply their own tolerance.
class LuDecomposition {
 public:
  explicit LuDecomposition(DenseMatrix a);

  std::size_t size() const noexcept { return lu_.rows(); }

  double min_pivot() const noexcept { return min_pivot_; }
  double max_pivot() const noexcept { return max_pivot_; }
  /// Largest |entry| of the input matrix.
  double scale() const noexcept { return scale_; }

  /// True when some |pivot| <= tolerance * scale().
  bool singular(double relative_tolerance) const noexcept;

  std::vector<double> solve(std::span<const double> rhs) const;
  DenseMatrix inverse() const;
  double determinant() const noexcept;

 private:
  void solve_in_place(std::span<double> x) const;

  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  int swaps_ = 0;
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
  double scale_ = 0.0;
};

}  // namespace pip
