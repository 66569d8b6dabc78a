#pragma once

#include <functional>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "exchange.hpp"
#include "real.hpp"
#include "renormalization.hpp"

namespace iemcoh {

using Polynomial = std::vector<Real>;  // c0 + c1 t + ..., t local coordinate

Real horner(const Polynomial& p, const Real& t);
// Coefficients of t -> p(t + s).
Polynomial shift(const Polynomial& p, const Real& s);
Polynomial derivative(const Polynomial& p);

// Piecewise polynomial on the top intervals of T(level); piece a is written
// in the coordinate x - (left end of I_a^t).
class Observable {
 public:
  Observable(std::size_t level, std::vector<Polynomial> pieces, Precision prec);

  static Observable zero(std::size_t d, std::size_t level, Precision prec);
  // Piecewise constant with the given value per letter.
  static Observable constant(const std::vector<Real>& values, std::size_t level);
  // The global polynomial sum c_k x^k restricted to each top interval of t.
  static Observable global_polynomial(const Iem& t, std::size_t level, const std::vector<Real>& coeffs);
  // psi0 o T - psi0 for the global polynomial psi0.
  static Observable coboundary(const Iem& t, std::size_t level, const std::vector<Real>& coeffs);

  std::size_t level() const { return level_; }
  std::size_t size() const { return pieces_.size(); }
  Precision precision() const { return prec_; }
  std::size_t degree() const;
  const Polynomial& piece(Letter a) const { return pieces_[a]; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }

  Real eval_local(Letter a, const Real& t) const { return horner(pieces_[a], t); }
  // Value at a point interior to some top interval of t (t must be T(level)).
  Real operator()(const Iem& t, const Exact& x) const;
  // One-sided values at the ends of piece a (length of I_a^t supplied).
  Real left_value(Letter a) const;
  Real right_value(Letter a, const Exact& length) const;

  bool is_piecewise_constant() const { return degree() == 0; }
  std::vector<Real> constants() const;

  Observable& operator+=(const Observable& o);
  Observable& operator-=(const Observable& o);
  Observable& operator*=(const Real& s);
  friend Observable operator+(Observable a, const Observable& b) { return a += b; }
  friend Observable operator-(Observable a, const Observable& b) { return a -= b; }
  friend Observable operator*(Observable a, const Real& s) { return a *= s; }

 private:
  std::size_t level_;
  std::vector<Polynomial> pieces_;
  Precision prec_;
};

// (d phi)_C = sum over U_i in C of phi(u_i - 0) - phi(u_i + 0), with zero
// outside the interval; indexed by the cycles of sigma.
std::vector<Real> boundary(const Observable& phi, const Iem& t, const VertexPermutation& sigma);

// Identification of the marked-point cycles of pi(n) with those of pi(0):
// entry c is the level-0 cycle matching cycle c at level n. Derived step by
// step from the boundary on piecewise constants, D(n+1) E_n = P D(n).
std::vector<std::size_t> cycle_transport(const RenormalizationPath& path, std::size_t n);

// S(m, n) phi by coefficient propagation through the elementary steps.
Observable special_birkhoff_sum(const RenormalizationPath& path, std::size_t n, const Observable& phi);

// Direct summation of f over the return orbit under T(m) of x in I(n);
// `visits` receives the return time when non-null.
template <typename Value, typename F>
Value pointwise_special_sum(const RenormalizationPath& path, std::size_t m, std::size_t n, F&& f, const Exact& x,
                            Value zero, std::size_t* visits = nullptr) {
  const Iem& tm = path.level(m);
  const Iem& tn = path.level(n);
  tn.top_letter_at(x);  // x must be interior to a top interval of T(n)
  const Exact end = tn.right();
  Value sum = zero;
  Exact p = x;
  std::size_t r = 0;
  do {
    sum += f(p);
    p += tm.offset(tm.top_letter_at(p));
    ++r;
  } while (p >= end);
  if (visits) *visits = r;
  return sum;
}

// Grid estimate of the C^r norm: max over k <= floor(r) of sup |D^k phi|,
// plus the fractional Hölder seminorm of D^floor(r) phi when r is not an
// integer. Sampled grids are refined until the value moves by < 1%; the
// estimate is biased low by at most that amount per refinement.
double cr_norm(const Observable& phi, const Iem& t, double r);

}  // namespace iemcoh
