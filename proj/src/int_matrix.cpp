#include "int_matrix.hpp"

#include <utility>

#include "error.hpp"

namespace iemcoh {

namespace {

struct Rref {
  std::vector<std::vector<Exact>> rows;
  std::vector<std::size_t> pivots;
};

Rref reduce(const IntMatrix& a) {
  Rref out;
  out.rows.assign(a.rows(), std::vector<Exact>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.rows[i][j] = Exact(a(i, j));
  auto& m = out.rows;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[r]);
    Exact inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Exact f = m[i][c];
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::InvariantViolation, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  Integer acc;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::InvariantViolation, "matrix sum shape mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

void IntMatrix::add_row(std::size_t dst, std::size_t src) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += (*this)(src, j);
}

Integer IntMatrix::row_sum(std::size_t i) const {
  Integer s = 0;
  for (std::size_t j = 0; j < cols_; ++j) s += ::abs((*this)(i, j));
  return s;
}

Integer IntMatrix::norm() const {
  Integer best = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer s = row_sum(i);
    if (s > best) best = s;
  }
  return best;
}

bool IntMatrix::all_positive() const {
  for (const auto& v : data_)
    if (sgn(v) <= 0) return false;
  return true;
}

bool IntMatrix::all_nonnegative() const {
  for (const auto& v : data_)
    if (sgn(v) < 0) return false;
  return true;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorKind::InvariantViolation, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<Integer> m = data_;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::size_t IntMatrix::rank() const {
  std::vector<Integer> m = data_;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * cols_ + j]; };
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && at(p, c) == 0) ++p;
    if (p == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(p, j));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      for (std::size_t j = c + 1; j < cols_; ++j) {
        Integer t = at(i, j) * at(r, c) - at(i, c) * at(r, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

std::vector<Exact> IntMatrix::apply(const std::vector<Exact>& x) const {
  if (x.size() != cols_) fail(ErrorKind::InvariantViolation, "matrix-vector shape mismatch");
  std::vector<Exact> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Exact s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += Exact((*this)(i, j)) * x[j];
    y[i] = s;
  }
  return y;
}

ExactVector solve_exact(const IntMatrix& a, const ExactVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) fail(ErrorKind::InvariantViolation, "solve_exact shape mismatch");
  std::vector<std::vector<Exact>> m(n, std::vector<Exact>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Exact(a(i, j));
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) fail(ErrorKind::InvariantViolation, "singular system in solve_exact");
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Exact f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  ExactVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

std::vector<ExactVector> nullspace(const IntMatrix& a) {
  Rref r = reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<ExactVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    ExactVector v(a.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> pivot_columns(const IntMatrix& a) { return reduce(a).pivots; }

}  // namespace iemcoh
