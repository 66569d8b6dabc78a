#pragma once

#include <cstddef>
#include <vector>

#include "real.hpp"

namespace iemcoh {

// Dense integer matrix with exact GMP entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  // row[dst] += row[src]; left multiplication by 1 + E_{dst,src}.
  void add_row(std::size_t dst, std::size_t src);

  // max_i sum_j |a_ij|
  Integer norm() const;
  Integer row_sum(std::size_t i) const;
  bool all_positive() const;
  bool all_nonnegative() const;

  Integer determinant() const;  // Bareiss, square only
  std::size_t rank() const;     // fraction-free elimination

  std::vector<Exact> apply(const std::vector<Exact>& x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Exact rational linear algebra on small systems.
using ExactVector = std::vector<Exact>;

// Solves a x = b for square nonsingular a; throws InvariantViolation if singular.
ExactVector solve_exact(const IntMatrix& a, const ExactVector& b);
// Basis of the right null space of a (vectors x with a x = 0).
std::vector<ExactVector> nullspace(const IntMatrix& a);
// Indices of a maximal set of linearly independent columns.
std::vector<std::size_t> pivot_columns(const IntMatrix& a);

}  // namespace iemcoh
