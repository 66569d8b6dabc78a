#pragma once

#include <cstddef>
#include <vector>

#include "int_matrix.hpp"
#include "real.hpp"

namespace iemcoh {

using RealVector = std::vector<Real>;

// Dense real matrix, row-major. Sizes here are tiny (the alphabet size).
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, Precision prec)
      : rows_(rows), cols_(cols), data_(rows * cols, Real(prec)) {}

  static RealMatrix from(const IntMatrix& m, Precision prec);
  static RealMatrix from_columns(const std::vector<RealVector>& cols, std::size_t rows, Precision prec);
  static RealMatrix identity(std::size_t n, Precision prec);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RealVector column(std::size_t j) const;
  std::vector<RealVector> columns() const;
  RealMatrix transpose() const;

  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealVector operator*(const RealMatrix& a, const RealVector& x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

RealVector zeros(std::size_t n, Precision prec);
RealVector to_real(const ExactVector& v, Precision prec);
Real dot(const RealVector& a, const RealVector& b);
Real norm2(const RealVector& a);
Real norm_inf(const RealVector& a);
RealVector add(const RealVector& a, const RealVector& b);
RealVector sub(const RealVector& a, const RealVector& b);
RealVector scale(const RealVector& a, const Real& s);
// y += s * x
void axpy(RealVector& y, const Real& s, const RealVector& x);
RealVector mat_vec(const IntMatrix& m, const RealVector& x);
RealVector mat_t_vec(const IntMatrix& m, const RealVector& x);

struct Svd {
  RealMatrix u;            // rows x k, orthonormal columns
  RealVector singular;     // k values, descending
  RealMatrix v;            // cols x k, orthonormal columns
};

// Thin SVD by one-sided Jacobi rotations; accurate for the small, badly
// scaled cocycle products this library manipulates.
Svd svd(const RealMatrix& a);

// Orthonormal basis of span(vectors) by twice-iterated modified Gram-Schmidt.
// Vectors whose residual norm falls below `drop * original norm` are dropped.
std::vector<RealVector> orthonormalize(const std::vector<RealVector>& vectors, const Real& drop);

// Orthogonal projection of x onto span(basis); basis must be orthonormal.
RealVector project(const RealVector& x, const std::vector<RealVector>& basis);

struct LeastSquares {
  RealVector x;
  Real residual;   // ||a x - b||_2
  Real condition;  // ratio of extreme singular values after column scaling
  bool rank_deficient = false;
};

// Minimum-norm least-squares solution through the SVD of the column-scaled
// matrix. Singular values below `cutoff` times the largest are treated as 0.
LeastSquares least_squares(const RealMatrix& a, const RealVector& b, const Real& cutoff);

}  // namespace iemcoh
