#ifndef BINLSA_MATRIX_HPP
#define BINLSA_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace binlsa {

/// Dense row-major matrix of doubles. Small by design: term-space matrices
/// here are 32 rows by a few thousand documents at most.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  Matrix transposed() const;
  Matrix multiply(const Matrix& rhs) const;

  /// Column j as a fresh vector.
  std::vector<double> column(std::size_t j) const;

  double frobenius_norm() const;
  bool all_finite(std::size_t* bad_row = nullptr, std::size_t* bad_col = nullptr) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

}  // namespace binlsa

#endif  // BINLSA_MATRIX_HPP
