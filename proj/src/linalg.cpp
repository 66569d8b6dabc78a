#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "error.hpp"

namespace iemcoh {

RealMatrix RealMatrix::from(const IntMatrix& m, Precision prec) {
  RealMatrix r(m.rows(), m.cols(), prec);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Real(m(i, j), prec);
  return r;
}

RealMatrix RealMatrix::from_columns(const std::vector<RealVector>& cols, std::size_t rows, Precision prec) {
  RealMatrix r(rows, cols.size(), prec);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) fail(ErrorKind::InvariantViolation, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) r(i, j) = cols[j][i];
  }
  return r;
}

RealMatrix RealMatrix::identity(std::size_t n, Precision prec) {
  RealMatrix r(n, n, prec);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = Real(1L, prec);
  return r;
}

RealVector RealMatrix::column(std::size_t j) const {
  RealVector c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

std::vector<RealVector> RealMatrix::columns() const {
  std::vector<RealVector> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.data_.resize(data_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::InvariantViolation, "matrix product shape mismatch");
  Precision prec = a.data_.empty() ? kDefaultPrecision : a.data_.front().precision();
  RealMatrix c(a.rows_, b.cols_, prec);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Real s(prec);
      for (std::size_t k = 0; k < a.cols_; ++k) s += a(i, k) * b(k, j);
      c(i, j) = std::move(s);
    }
  }
  return c;
}

RealVector operator*(const RealMatrix& a, const RealVector& x) {
  if (a.cols_ != x.size()) fail(ErrorKind::InvariantViolation, "matrix-vector shape mismatch");
  RealVector y;
  y.reserve(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Real s = x.empty() ? Real() : Real(x.front().precision());
    for (std::size_t k = 0; k < a.cols_; ++k) s += a(i, k) * x[k];
    y.push_back(std::move(s));
  }
  return y;
}

RealVector zeros(std::size_t n, Precision prec) { return RealVector(n, Real(prec)); }

RealVector to_real(const ExactVector& v, Precision prec) {
  RealVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x, prec);
  return r;
}

Real dot(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::InvariantViolation, "dot length mismatch");
  Real s = a.empty() ? Real() : Real(a.front().precision());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Real norm2(const RealVector& a) { return sqrt(dot(a, a)); }

Real norm_inf(const RealVector& a) {
  Real m = a.empty() ? Real() : Real(a.front().precision());
  for (const auto& x : a) m = max(m, abs(x));
  return m;
}

RealVector add(const RealVector& a, const RealVector& b) {
  RealVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RealVector sub(const RealVector& a, const RealVector& b) {
  RealVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RealVector scale(const RealVector& a, const Real& s) {
  RealVector r = a;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(RealVector& y, const Real& s, const RealVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

RealVector mat_vec(const IntMatrix& m, const RealVector& x) {
  if (m.cols() != x.size()) fail(ErrorKind::InvariantViolation, "matrix-vector shape mismatch");
  Precision prec = x.empty() ? kDefaultPrecision : x.front().precision();
  RealVector y = zeros(m.rows(), prec);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) y[i] += Real(m(i, j), prec) * x[j];
  return y;
}

RealVector mat_t_vec(const IntMatrix& m, const RealVector& x) {
  if (m.rows() != x.size()) fail(ErrorKind::InvariantViolation, "matrix-vector shape mismatch");
  Precision prec = x.empty() ? kDefaultPrecision : x.front().precision();
  RealVector y = zeros(m.cols(), prec);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) y[j] += Real(m(i, j), prec) * x[i];
  return y;
}

Svd svd(const RealMatrix& a_in) {
  const bool wide = a_in.rows() < a_in.cols();
  RealMatrix a = wide ? a_in.transpose() : a_in;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const Precision prec = (m && n) ? a(0, 0).precision() : kDefaultPrecision;
  RealMatrix v = RealMatrix::identity(n, prec);
  const Real eps = ldexp(Real(1L, prec), -static_cast<long>(prec) + 4);

  for (int sweep = 0; sweep < 200; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Real alpha(prec), beta(prec), gamma(prec);
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma.is_zero()) continue;
        if (abs(gamma) <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        Real zeta = (beta - alpha) / (gamma * 2L);
        Real one(1L, prec);
        Real t = one / (abs(zeta) + sqrt(one + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        Real c = one / sqrt(one + t * t);
        Real s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          Real ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          Real vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Real> sigma;
  for (std::size_t j = 0; j < n; ++j) {
    Real s(prec);
    for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
    sigma.push_back(sqrt(s));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out{RealMatrix(m, n, prec), RealVector{}, RealMatrix(n, n, prec)};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = order[k];
    out.singular.push_back(sigma[j]);
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = sigma[j].is_zero() ? Real(prec) : a(i, j) / sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
  }
  if (wide) std::swap(out.u, out.v);
  return out;
}

std::vector<RealVector> orthonormalize(const std::vector<RealVector>& vectors, const Real& drop) {
  std::vector<RealVector> basis;
  for (const auto& v0 : vectors) {
    Real original = norm2(v0);
    if (original.is_zero()) continue;
    RealVector v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(v, -dot(b, v), b);
    Real n = norm2(v);
    if (n <= drop * original) continue;
    basis.push_back(scale(v, Real(1L, n.precision()) / n));
  }
  return basis;
}

RealVector project(const RealVector& x, const std::vector<RealVector>& basis) {
  RealVector p = zeros(x.size(), x.empty() ? kDefaultPrecision : x.front().precision());
  for (const auto& b : basis) axpy(p, dot(b, x), b);
  return p;
}

LeastSquares least_squares(const RealMatrix& a, const RealVector& b, const Real& cutoff) {
  const std::size_t n = a.cols();
  const Precision prec = b.empty() ? kDefaultPrecision : b.front().precision();
  RealMatrix scaled = a;
  RealVector col_scale(n, Real(1L, prec));
  for (std::size_t j = 0; j < n; ++j) {
    Real s = norm2(a.column(j));
    if (!s.is_zero()) {
      col_scale[j] = s;
      for (std::size_t i = 0; i < a.rows(); ++i) scaled(i, j) /= s;
    }
  }
  Svd d = svd(scaled);
  LeastSquares out{zeros(n, prec), Real(prec), Real(prec)};
  const std::size_t k = d.singular.size();
  if (k == 0 || d.singular.front().is_zero()) {
    out.residual = norm2(b);
    out.rank_deficient = true;
    return out;
  }
  const Real& smax = d.singular.front();
  Real smin = smax;
  RealVector y = zeros(n, prec);
  for (std::size_t c = 0; c < k; ++c) {
    const Real& s = d.singular[c];
    if (s <= cutoff * smax) continue;
    smin = min(smin, s);
    Real coef = dot(d.u.column(c), b) / s;
    for (std::size_t j = 0; j < n; ++j) y[j] += coef * d.v(j, c);
  }
  for (const auto& s : d.singular)
    if (s <= cutoff * smax) out.rank_deficient = true;
  out.condition = smax / smin;
  for (std::size_t j = 0; j < n; ++j) out.x[j] = y[j] / col_scale[j];
  out.residual = norm2(sub(a * out.x, b));
  return out;
}

}  // namespace iemcoh
