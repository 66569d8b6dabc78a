#include "observables.hpp"

#include <algorithm>
#include <cmath>

namespace iemcoh {

Real horner(const Polynomial& p, const Real& t) {
  if (p.empty()) return Real(t.precision());
  Real acc = p.back();
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    acc *= t;
    acc += p[k];
  }
  return acc;
}

Polynomial shift(const Polynomial& p, const Real& s) {
  // Repeated synthetic division (Taylor shift), O(q^2).
  Polynomial c = p;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += s * c[k];
  return c;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  if (d.empty() && !p.empty()) d.push_back(Real(p.front().precision()));
  return d;
}

Observable::Observable(std::size_t level, std::vector<Polynomial> pieces, Precision prec)
    : level_(level), pieces_(std::move(pieces)), prec_(prec) {
  for (auto& p : pieces_) {
    if (p.empty()) p.push_back(Real(prec_));
    for (auto& c : p) c.widen(prec_);
  }
}

Observable Observable::zero(std::size_t d, std::size_t level, Precision prec) {
  return Observable(level, std::vector<Polynomial>(d, Polynomial{Real(prec)}), prec);
}

Observable Observable::constant(const std::vector<Real>& values, std::size_t level) {
  std::vector<Polynomial> pieces;
  Precision prec = values.empty() ? kDefaultPrecision : values.front().precision();
  for (const auto& v : values) pieces.push_back({v});
  return Observable(level, std::move(pieces), prec);
}

Observable Observable::global_polynomial(const Iem& t, std::size_t level, const std::vector<Real>& coeffs) {
  const Precision prec = t.precision();
  std::vector<Polynomial> pieces(t.size());
  for (Letter a = 0; a < t.size(); ++a) {
    Real left(t.u()[static_cast<std::size_t>(t.pi().top(a) - 1)], prec);
    pieces[a] = shift(coeffs, left);
  }
  return Observable(level, std::move(pieces), prec);
}

Observable Observable::coboundary(const Iem& t, std::size_t level, const std::vector<Real>& coeffs) {
  const Precision prec = t.precision();
  std::vector<Polynomial> pieces(t.size());
  for (Letter a = 0; a < t.size(); ++a) {
    const Exact& left = t.u()[static_cast<std::size_t>(t.pi().top(a) - 1)];
    Polynomial after = shift(coeffs, Real(left + t.offset(a), prec));
    Polynomial before = shift(coeffs, Real(left, prec));
    for (std::size_t k = 0; k < after.size(); ++k) after[k] -= before[k];
    pieces[a] = std::move(after);
  }
  return Observable(level, std::move(pieces), prec);
}

std::size_t Observable::degree() const {
  std::size_t deg = 0;
  for (const auto& p : pieces_)
    for (std::size_t k = p.size(); k-- > 1;)
      if (!p[k].is_zero()) {
        deg = std::max(deg, k);
        break;
      }
  return deg;
}

Real Observable::operator()(const Iem& t, const Exact& x) const {
  Letter a = t.top_letter_at(x);
  return eval_local(a, Real(x - t.u()[static_cast<std::size_t>(t.pi().top(a) - 1)], prec_));
}

Real Observable::left_value(Letter a) const { return pieces_[a].front(); }

Real Observable::right_value(Letter a, const Exact& length) const { return eval_local(a, Real(length, prec_)); }

std::vector<Real> Observable::constants() const {
  if (!is_piecewise_constant()) fail(ErrorKind::InvariantViolation, "observable is not piecewise constant");
  std::vector<Real> out;
  for (const auto& p : pieces_) out.push_back(p.front());
  return out;
}

Observable& Observable::operator+=(const Observable& o) {
  if (o.size() != size()) fail(ErrorKind::InvariantViolation, "observable size mismatch");
  for (std::size_t a = 0; a < size(); ++a) {
    auto& p = pieces_[a];
    if (p.size() < o.pieces_[a].size()) p.resize(o.pieces_[a].size(), Real(prec_));
    for (std::size_t k = 0; k < o.pieces_[a].size(); ++k) p[k] += o.pieces_[a][k];
  }
  return *this;
}

Observable& Observable::operator-=(const Observable& o) {
  Observable neg = o;
  neg *= Real(-1L, prec_);
  return *this += neg;
}

Observable& Observable::operator*=(const Real& s) {
  for (auto& p : pieces_)
    for (auto& c : p) c *= s;
  return *this;
}

std::vector<Real> boundary(const Observable& phi, const Iem& t, const VertexPermutation& sigma) {
  const std::size_t d = t.size();
  const auto& pi = t.pi();
  const Precision prec = phi.precision();
  std::vector<Real> out(sigma.cycles.size(), Real(prec));
  for (std::size_t i = 0; i <= d; ++i) {
    Real jump(prec);
    if (i > 0) {
      Letter a = pi.top_letter(static_cast<int>(i));
      jump += phi.right_value(a, t.length(a));
    }
    if (i < d) jump -= phi.left_value(pi.top_letter(static_cast<int>(i + 1)));
    out[sigma.cycle_of_u[i]] += jump;
  }
  return out;
}

std::vector<std::size_t> cycle_transport(const RenormalizationPath& path, std::size_t n) {
  VertexPermutation prev_sigma = vertex_permutation(path.base().pi());
  std::vector<std::size_t> to_origin(prev_sigma.cycles.size());
  for (std::size_t c = 0; c < to_origin.size(); ++c) to_origin[c] = c;
  IntMatrix prev_d = boundary_matrix(path.base().pi(), prev_sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pi = path.level(i + 1).pi();
    VertexPermutation sigma = vertex_permutation(pi);
    IntMatrix cur_d = boundary_matrix(pi, sigma);
    IntMatrix pulled = cur_d * path.steps()[i].elementary;
    std::vector<std::size_t> next(sigma.cycles.size());
    for (std::size_t r = 0; r < pulled.rows(); ++r) {
      std::size_t hits = 0;
      for (std::size_t c = 0; c < prev_d.rows(); ++c) {
        bool same = true;
        for (std::size_t j = 0; j < pulled.cols() && same; ++j) same = pulled(r, j) == prev_d(c, j);
        if (same) {
          next[r] = to_origin[c];
          ++hits;
        }
      }
      if (hits != 1) fail(ErrorKind::InvariantViolation, "marked-point cycles cannot be matched across a step");
    }
    to_origin = std::move(next);
    prev_d = std::move(cur_d);
  }
  return to_origin;
}

Observable special_birkhoff_sum(const RenormalizationPath& path, std::size_t n, const Observable& phi) {
  const std::size_t m = phi.level();
  if (m > n || n > path.length()) fail(ErrorKind::OutOfRange, "special_birkhoff_sum levels out of range");
  std::vector<Polynomial> pieces = phi.pieces();
  const Precision prec = phi.precision();
  Real limit = ldexp(Real(1L, prec), static_cast<long>(prec / 2));
  for (std::size_t i = m; i < n; ++i) {
    const StepRecord& rec = path.steps()[i];
    const Exact s = rec.winner_length - path.level(i).length(rec.loser);
    Polynomial moved = shift(pieces[rec.winner], Real(s, prec));
    auto& l = pieces[rec.loser];
    if (l.size() < moved.size()) l.resize(moved.size(), Real(prec));
    for (std::size_t k = 0; k < moved.size(); ++k) {
      l[k] += moved[k];
      if (abs(l[k]) > limit) fail(ErrorKind::PrecisionExhausted, "special Birkhoff sum coefficients exceed 2^(p/2)");
    }
  }
  return Observable(n, std::move(pieces), prec);
}

namespace {

double sample_norm(const Observable& phi, const Iem& t, double r, std::size_t grid) {
  const std::size_t k_max = static_cast<std::size_t>(std::floor(r));
  const double frac = r - static_cast<double>(k_max);
  double best = 0;
  for (Letter a = 0; a < phi.size(); ++a) {
    const double len = to_double(t.length(a));
    Polynomial p = phi.piece(a);
    std::vector<double> top_values;
    for (std::size_t k = 0; k <= k_max; ++k) {
      std::vector<double> values;
      for (std::size_t g = 0; g <= grid; ++g) {
        double x = len * static_cast<double>(g) / static_cast<double>(grid);
        double v = horner(p, Real(x, phi.precision())).to_double();
        values.push_back(v);
        best = std::max(best, std::fabs(v));
      }
      if (k == k_max) top_values = std::move(values);
      p = derivative(p);
    }
    if (frac > 0) {
      for (std::size_t g = 0; g <= grid; ++g)
        for (std::size_t h = g + 1; h <= grid; ++h) {
          double dx = len * static_cast<double>(h - g) / static_cast<double>(grid);
          best = std::max(best, std::fabs(top_values[h] - top_values[g]) / std::pow(dx, frac));
        }
    }
  }
  return best;
}

}  // namespace

double cr_norm(const Observable& phi, const Iem& t, double r) {
  if (r < 0) fail(ErrorKind::Domain, "cr_norm needs r >= 0");
  std::size_t grid = 16;
  double prev = sample_norm(phi, t, r, grid);
  while (grid < 1024) {
    grid *= 2;
    double cur = sample_norm(phi, t, r, grid);
    if (std::fabs(cur - prev) <= 0.01 * std::fabs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace iemcoh
