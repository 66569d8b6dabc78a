#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "int_matrix.hpp"

namespace iemcoh {

using Letter = std::size_t;  // index into the alphabet's declared order

// Top/bottom orders of an alphabet of d >= 2 opaque labels. Positions are
// 1-based as in the usual notation. A constructed value is always a pair of
// bijections and irreducible.
class CombinatorialData {
 public:
  // Throws MalformedData for non-bijections, duplicate labels, d < 2, or
  // reducible data (message names the first offending k).
  CombinatorialData(std::vector<std::string> alphabet, std::vector<int> top, std::vector<int> bottom);

  // Convenience: letters listed in top order and bottom order.
  static CombinatorialData from_orders(const std::vector<std::string>& alphabet,
                                       const std::vector<std::string>& top_order,
                                       const std::vector<std::string>& bottom_order);

  std::size_t size() const { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& label(Letter a) const { return alphabet_[a]; }
  std::optional<Letter> find(const std::string& label) const;

  int top(Letter a) const { return top_[a]; }
  int bottom(Letter a) const { return bottom_[a]; }
  // Letter occupying the given 1-based position.
  Letter top_letter(int pos) const { return top_order_[static_cast<std::size_t>(pos - 1)]; }
  Letter bottom_letter(int pos) const { return bottom_order_[static_cast<std::size_t>(pos - 1)]; }
  const std::vector<Letter>& top_order() const { return top_order_; }
  const std::vector<Letter>& bottom_order() const { return bottom_order_; }

  friend bool operator==(const CombinatorialData&, const CombinatorialData&) = default;

 private:
  CombinatorialData() = default;
  void build_orders();

  std::vector<std::string> alphabet_;
  std::vector<int> top_;
  std::vector<int> bottom_;
  std::vector<Letter> top_order_;
  std::vector<Letter> bottom_order_;

  friend CombinatorialData reorder_unchecked(const CombinatorialData&, std::vector<Letter>, std::vector<Letter>);
};

// Builds data with new orders over the same alphabet without the
// irreducibility check (renormalization preserves irreducibility).
CombinatorialData reorder_unchecked(const CombinatorialData& base, std::vector<Letter> top_order,
                                    std::vector<Letter> bottom_order);

// Smallest k in [1, d) where the first k top letters equal the first k bottom
// letters as sets; nullopt for irreducible data. Throws MalformedData when
// either map is not a bijection onto {1..d}.
std::optional<int> reducible_at(const std::vector<int>& top, const std::vector<int>& bottom);
bool validate_irreducible(const std::vector<int>& top, const std::vector<int>& bottom);

IntMatrix omega_matrix(const CombinatorialData& pi);

// Vertices U_0..U_d, V_1..V_{d-1}: ids 0..d are U_i (U_0 = V_0, U_d = V_d),
// ids d+1..2d-1 are V_1..V_{d-1}.
struct VertexPermutation {
  std::size_t d = 0;
  std::vector<std::size_t> map;                  // size 2d
  std::vector<std::vector<std::size_t>> cycles;  // each starts at its smallest id
  std::vector<std::size_t> cycle_of_u;           // cycle index of U_i, i = 0..d

  std::size_t u(std::size_t i) const { return i; }
  std::size_t v(std::size_t j) const { return (j == 0 || j == d) ? j : d + j; }
  bool is_u(std::size_t id) const { return id <= d; }
  std::string name(std::size_t id) const;
  // Number of U vertices on a cycle. It is 1 exactly for the removable
  // marked points created by a letter pair adjacent in both rows.
  std::size_t u_count(std::size_t cycle) const;
};

VertexPermutation vertex_permutation(const CombinatorialData& pi);

struct GenusMarks {
  int g = 0;
  int s = 0;
};

// g = rank(Omega) / 2 by exact rank, s = number of cycles; throws
// InvariantViolation if rank is odd or d != 2g + s - 1.
GenusMarks genus_and_marks(const CombinatorialData& pi);

// Matrix of the boundary operator restricted to piecewise constants:
// rows indexed by the cycles, columns by letters.
IntMatrix boundary_matrix(const CombinatorialData& pi, const VertexPermutation& sigma);

}  // namespace iemcoh
