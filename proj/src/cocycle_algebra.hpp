#pragma once

#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "linalg.hpp"
#include "renormalization.hpp"

namespace iemcoh {

// Piecewise constant function on the top intervals of T(level).
struct GammaVector {
  std::size_t level = 0;
  RealVector entries;
};

struct StableSpaceEstimate {
  std::vector<RealVector> basis;  // orthonormal, level 0
  std::size_t horizon = 0;
  int target_dim = 0;
  RealVector singular_values;  // of B(0, horizon), descending
  Real gap_ratio;              // sigma_{d-g} / sigma_{d-g+1}
  double sigma_hat = 0;        // fitted contraction exponent
  bool degenerate = false;     // gap below threshold
  std::string warning;
  Precision precision = kDefaultPrecision;
};

// Working precision for the cocycle linear algebra: twice the map's budget.
Precision algebra_precision(const Iem& t);

// Orthonormal basis of Im Omega(pi).
std::vector<RealVector> image_basis(const CombinatorialData& pi, Precision prec);

// The g right-singular directions of B(0, horizon) with the smallest singular
// values, projected to Im Omega(pi(0)) and re-orthonormalized.
StableSpaceEstimate stable_space(const RenormalizationPath& path, std::size_t horizon, int g,
                                 double gap_threshold = 1e3);

// Orthonormal basis of span(B(0, n) basis), the stable space at level n.
std::vector<RealVector> stable_at(const RenormalizationPath& path, const StableSpaceEstimate& est, std::size_t n);

// Orthogonal complement of the stable space inside Im Omega at level 0.
std::vector<RealVector> unstable_complement(const StableSpaceEstimate& est, const CombinatorialData& pi);
// Same at level n.
std::vector<RealVector> unstable_complement_at(const RenormalizationPath& path, const StableSpaceEstimate& est,
                                               std::size_t n);

struct QuotientSolve {
  RealVector w;      // level m, inside the chosen complement
  Real residual;     // || B(m,n) w + s - v ||, s in the stable span at n
  Real condition;    // of the column-scaled augmented system
};

// Solves B(m,n) w = v modulo the stable space at level n, with w in the
// complement at level m. Throws QuotientSolve when the condition estimate
// exceeds max_condition (default 2^(p/2) for the map's precision p).
QuotientSolve flat_inverse_apply(const RenormalizationPath& path, const StableSpaceEstimate& est, std::size_t m,
                                 std::size_t n, const RealVector& v, const Real* max_condition = nullptr);

// v^T Omega(pi) w.
Real symplectic_pairing(const CombinatorialData& pi, const RealVector& v, const RealVector& w);
// The invariant form on Im Omega: <Omega v, Omega w> := v^T Omega w, evaluated
// through least-squares preimages (the value does not depend on the choice).
Real image_form(const CombinatorialData& pi, const RealVector& x, const RealVector& y);

// Sine of the largest principal angle between two subspaces given by
// orthonormal bases of equal dimension.
Real principal_angle_sin(const std::vector<RealVector>& a, const std::vector<RealVector>& b);

// Least-squares slope and intercept of y against x.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// log of a positive real as a double, safe for huge or tiny magnitudes.
double log_of(const Real& x);
double log_of(const Integer& x);

}  // namespace iemcoh
