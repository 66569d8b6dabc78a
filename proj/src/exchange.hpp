#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "real.hpp"

namespace iemcoh {

// An interval exchange map. Lengths are exact dyadic rationals obtained by
// rounding the ingested decimals to `precision` bits once; after that every
// position is computed exactly.
class Iem {
 public:
  Iem(CombinatorialData pi, std::vector<Exact> lengths, Exact left = 0, Precision precision = kDefaultPrecision);

  // Lengths as decimal strings indexed by the alphabet order.
  static Iem from_decimal(CombinatorialData pi, const std::vector<std::string>& lengths,
                          Precision precision = kDefaultPrecision);

  const CombinatorialData& pi() const { return pi_; }
  std::size_t size() const { return pi_.size(); }
  const std::vector<Exact>& lengths() const { return lengths_; }
  const Exact& length(Letter a) const { return lengths_[a]; }
  const Exact& left() const { return left_; }
  Exact right() const { return left_ + total_; }
  const Exact& total() const { return total_; }
  Precision precision() const { return precision_; }
  // Resolution tolerance 2^(-p/2).
  const Exact& tolerance() const { return tolerance_; }

  // u_0..u_d and v_0..v_d.
  const std::vector<Exact>& u() const { return u_; }
  const std::vector<Exact>& v() const { return v_; }
  // Translation applied on I_a^t.
  Exact offset(Letter a) const;

  // Letter whose open top (bottom) interval contains x; throws SingularPoint
  // within tolerance of a singularity and Domain outside the interval.
  Letter top_letter_at(const Exact& x) const;
  Letter bottom_letter_at(const Exact& x) const;

 private:
  CombinatorialData pi_;
  std::vector<Exact> lengths_;
  Exact left_;
  Exact total_;
  Precision precision_;
  Exact tolerance_;
  std::vector<Exact> u_;
  std::vector<Exact> v_;
};

struct Singularities {
  std::vector<Exact> u;
  std::vector<Exact> v;
};

Singularities singularities(const Iem& t);
Exact evaluate(const Iem& t, const Exact& x);
Exact evaluate_inverse(const Iem& t, const Exact& y);

struct Connection {
  std::size_t j = 0;  // singularity v_j of the inverse
  std::size_t i = 0;  // singularity u_i of the map
  std::size_t m = 0;  // steps
};

// First triple (smallest m, then smallest j) with |T^m(v_j) - u_i| < tol,
// scanning m = 0..max_steps.
std::optional<Connection> find_connection(const Iem& t, std::size_t max_steps, const Exact& tolerance);

struct ComplexPoint {
  Exact re;
  long im = 0;
};

struct SuspensionPolygon {
  std::vector<ComplexPoint> upper;  // U_0..U_d
  std::vector<ComplexPoint> lower;  // V_0..V_d
};

// Vertices of the polygon built from zeta_a = lambda_a + i (pi_b(a) - pi_t(a)).
SuspensionPolygon suspension_polygon(const Iem& t);

}  // namespace iemcoh
