#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "observables.hpp"
#include "renormalization.hpp"

namespace iemcoh {

// One level of a decomposed orbit segment: `count` consecutive returns of
// T(n_level) starting at `base`, each standing for a special Birkhoff sum
// S(0, n_level) at that point.
struct TimeBlock {
  std::size_t k = 0;      // index into path.nk()
  std::size_t level = 0;  // n_k
  Exact base;
  std::size_t count = 0;
  std::size_t start = 0;  // j with T^j(x) = base
  std::optional<Integer> bound;  // ||B(n_k, n_{k+1})|| when n_{k+1} is on the path
};

struct TimeDecomposition {
  Exact x;
  std::size_t n = 0;
  Exact pivot;                // orbit point closest to u_0
  std::size_t pivot_index = 0;  // j with T^j(x) = pivot
  long n_plus = 0;
  long n_minus = 0;           // <= 0; n_plus - n_minus = n
  std::vector<TimeBlock> positive;  // levels from deepest to 0
  std::vector<TimeBlock> negative;  // levels from deepest to 0
};

// Throws SingularPoint if the orbit comes within tolerance of a singularity.
TimeDecomposition time_decompose(const RenormalizationPath& path, const Exact& x, std::size_t n);

// Sum over the blocks of S(0, n_k) f evaluated pointwise; with f exact this
// equals the direct Birkhoff sum of order n at x exactly.
template <typename Value, typename F>
Value reconstruct(const RenormalizationPath& path, const TimeDecomposition& td, F&& f, Value zero);

// Interval T^j(I_alpha^t(T(n_level))) of the partition P(k).
struct PartitionInterval {
  std::size_t k = 0;
  std::size_t level = 0;
  Letter alpha = 0;
  Integer j = 0;
  Exact left;
  Exact right;
};

struct SpaceDecomposition {
  Exact x_minus, x_plus;
  std::size_t k = 0;  // index into path.nk()
  std::vector<PartitionInterval> core;
  // Per level index l > k: intervals between x_+(l-1) and x_+(l), resp.
  // x_-(l) and x_-(l-1), in increasing position.
  std::vector<std::vector<PartitionInterval>> tails_plus;
  std::vector<std::vector<PartitionInterval>> tails_minus;
  std::vector<Exact> x_plus_levels;   // x_+(l) for l = k..last
  std::vector<Exact> x_minus_levels;  // x_-(l)
  Exact remainder;  // (x_+ - x_+(last)) + (x_-(last) - x_-)
  // ||B^T(n_{k-1}, n_k)|| for k >= 1: the number of P(k) intervals inside one
  // interval of P(k-1). The core can meet two intervals of P(k-1), so only
  // core.size() <= 2 * core_bound is guaranteed.
  std::optional<Integer> core_bound;
  std::vector<Integer> tail_bounds;   // ||B^T(n_{l-1}, n_l)|| per tail level
};

// Throws Domain unless u_0 <= x_minus < x_plus <= u_d.
SpaceDecomposition space_decompose(const RenormalizationPath& path, const Exact& x_minus, const Exact& x_plus);

// Interval of P(k) containing z; `from_left` selects the interval (a, b]
// instead of [a, b).
PartitionInterval locate(const RenormalizationPath& path, std::size_t k, const Exact& z, bool from_left);

template <typename Value, typename F>
Value reconstruct(const RenormalizationPath& path, const TimeDecomposition& td, F&& f, Value zero) {
  Value sum = zero;
  for (const auto* part : {&td.positive, &td.negative}) {
    for (const TimeBlock& b : *part) {
      const Iem& tl = path.level(b.level);
      Exact p = b.base;
      for (std::size_t i = 0; i < b.count; ++i) {
        sum += pointwise_special_sum<Value>(path, 0, b.level, f, p, zero);
        if (i + 1 < b.count) p += tl.offset(tl.top_letter_at(p));
      }
    }
  }
  return sum;
}

}  // namespace iemcoh
