#include "cocycle_algebra.hpp"

#include <cmath>

#include "error.hpp"

namespace iemcoh {

namespace {

std::vector<RealVector> push(const IntMatrix& b, const std::vector<RealVector>& basis) {
  std::vector<RealVector> out;
  for (const auto& v : basis) out.push_back(mat_vec(b, v));
  return out;
}

Real drop_threshold(Precision prec) { return ldexp(Real(1L, prec), -static_cast<long>(prec) / 2); }

std::vector<RealVector> complement_in(const std::vector<RealVector>& space, const std::vector<RealVector>& sub,
                                      Precision prec) {
  // Gram-Schmidt of the sub basis followed by the ambient basis; keep the tail.
  std::vector<RealVector> all = sub;
  all.insert(all.end(), space.begin(), space.end());
  std::vector<RealVector> ortho = orthonormalize(all, drop_threshold(prec));
  if (ortho.size() != space.size()) fail(ErrorKind::InvariantViolation, "stable basis is not inside Im Omega");
  return std::vector<RealVector>(ortho.begin() + static_cast<long>(sub.size()), ortho.end());
}

}  // namespace

Precision algebra_precision(const Iem& t) { return 2 * t.precision(); }

double log_of(const Real& x) {
  if (x.is_zero()) return -INFINITY;
  return log(abs(x)).to_double();
}

double log_of(const Integer& x) { return log_of(Real(x, 128)); }

std::vector<RealVector> image_basis(const CombinatorialData& pi, Precision prec) {
  RealMatrix om = RealMatrix::from(omega_matrix(pi), prec);
  return orthonormalize(om.columns(), drop_threshold(prec));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const std::size_t n = x.size();
  if (n < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

StableSpaceEstimate stable_space(const RenormalizationPath& path, std::size_t horizon, int g, double gap_threshold) {
  if (horizon > path.length()) fail(ErrorKind::OutOfRange, "stable-space horizon beyond path length");
  const Iem& base = path.base();
  const std::size_t d = base.size();
  if (g < 0 || static_cast<std::size_t>(g) > d / 2) fail(ErrorKind::Domain, "stable dimension out of range");
  StableSpaceEstimate est;
  est.horizon = horizon;
  est.target_dim = g;
  est.precision = algebra_precision(base);
  const Precision prec = est.precision;

  Svd s = svd(RealMatrix::from(path.b_from_origin(horizon), prec));
  est.singular_values = s.singular;
  const std::size_t gg = static_cast<std::size_t>(g);
  if (gg == 0) {
    est.gap_ratio = Real(1L, prec);
    return est;
  }
  est.gap_ratio = s.singular[d - gg - 1] / s.singular[d - gg];
  if (est.gap_ratio < Real(gap_threshold, prec)) {
    est.degenerate = true;
    est.warning = "degenerate spectrum: gap ratio " + est.gap_ratio.to_string(6) + " below threshold";
  }

  std::vector<RealVector> image = image_basis(base.pi(), prec);
  std::vector<RealVector> candidates;
  for (std::size_t k = d - gg; k < d; ++k) candidates.push_back(project(s.v.column(k), image));
  est.basis = orthonormalize(candidates, drop_threshold(prec));
  if (est.basis.size() != gg) {
    est.degenerate = true;
    est.warning = "stable directions collapse after projection to Im Omega";
  }

  // Contraction exponent over the positivity times up to the horizon.
  std::vector<double> xs, ys;
  for (std::size_t n : path.nk()) {
    if (n == 0 || n > horizon) continue;
    const IntMatrix& b = path.b_from_origin(n);
    RealMatrix pushed = RealMatrix::from_columns(push(b, est.basis), d, prec);
    Real restricted = svd(pushed).singular.front();
    xs.push_back(log_of(b.norm()));
    ys.push_back(log_of(restricted));
  }
  est.sigma_hat = -fit_line(xs, ys).slope;
  return est;
}

std::vector<RealVector> stable_at(const RenormalizationPath& path, const StableSpaceEstimate& est, std::size_t n) {
  if (n == 0) return est.basis;
  return orthonormalize(push(path.b_from_origin(n), est.basis), drop_threshold(est.precision));
}

std::vector<RealVector> unstable_complement(const StableSpaceEstimate& est, const CombinatorialData& pi) {
  return complement_in(image_basis(pi, est.precision), est.basis, est.precision);
}

std::vector<RealVector> unstable_complement_at(const RenormalizationPath& path, const StableSpaceEstimate& est,
                                               std::size_t n) {
  return complement_in(image_basis(path.level(n).pi(), est.precision), stable_at(path, est, n), est.precision);
}

QuotientSolve flat_inverse_apply(const RenormalizationPath& path, const StableSpaceEstimate& est, std::size_t m,
                                 std::size_t n, const RealVector& v, const Real* max_condition) {
  const Precision prec = est.precision;
  const std::size_t d = path.base().size();
  if (v.size() != d) fail(ErrorKind::InvariantViolation, "vector dimension mismatch");
  std::vector<RealVector> comp = unstable_complement_at(path, est, m);
  std::vector<RealVector> stab = stable_at(path, est, n);
  IntMatrix b = path.b_matrix(m, n);
  std::vector<RealVector> cols = push(b, comp);
  cols.insert(cols.end(), stab.begin(), stab.end());
  RealMatrix a = RealMatrix::from_columns(cols, d, prec);
  RealVector rhs = v;
  for (auto& x : rhs) x.widen(prec);
  LeastSquares ls = least_squares(a, rhs, ldexp(Real(1L, prec), -static_cast<long>(prec) * 3 / 4));
  Real limit = max_condition ? *max_condition : ldexp(Real(1L, prec), static_cast<long>(path.base().precision() / 2));
  if (ls.rank_deficient || ls.condition > limit) {
    fail(ErrorKind::QuotientSolve, "quotient solve (" + std::to_string(m) + "," + std::to_string(n) +
                                       ") ill-conditioned: condition " + ls.condition.to_string(6));
  }
  QuotientSolve out{zeros(d, prec), ls.residual, ls.condition};
  for (std::size_t k = 0; k < comp.size(); ++k) axpy(out.w, ls.x[k], comp[k]);
  return out;
}

Real symplectic_pairing(const CombinatorialData& pi, const RealVector& v, const RealVector& w) {
  return dot(v, mat_vec(omega_matrix(pi), w));
}

Real image_form(const CombinatorialData& pi, const RealVector& x, const RealVector& y) {
  const Precision prec = x.front().precision();
  RealMatrix om = RealMatrix::from(omega_matrix(pi), prec);
  Real cutoff = ldexp(Real(1L, prec), -static_cast<long>(prec) / 2);
  RealVector v = least_squares(om, x, cutoff).x;
  RealVector w = least_squares(om, y, cutoff).x;
  return symplectic_pairing(pi, v, w);
}

Real principal_angle_sin(const std::vector<RealVector>& a, const std::vector<RealVector>& b) {
  if (a.empty()) return Real();
  const Precision prec = a.front().front().precision();
  std::vector<RealVector> residuals;
  for (const auto& x : a) residuals.push_back(sub(x, project(x, b)));
  RealMatrix r = RealMatrix::from_columns(residuals, a.front().size(), prec);
  return svd(r).singular.front();
}

}  // namespace iemcoh
