#include "doctest.h"

#include <algorithm>

#include "decompositions.hpp"
#include "error.hpp"
#include "helpers.hpp"

using namespace iemcoh;
using namespace testing_support;

namespace {

// All intervals of P(k) by forward iteration of the towers.
std::vector<std::pair<Exact, Exact>> brute_partition(const RenormalizationPath& path, std::size_t n) {
  const Iem& t = path.base();
  const Iem& tn = path.level(n);
  std::vector<std::pair<Exact, Exact>> out;
  for (Letter a = 0; a < tn.size(); ++a) {
    Exact left = tn.u()[static_cast<std::size_t>(tn.pi().top(a) - 1)];
    const Exact len = tn.length(a);
    const long r = path.b_from_origin(n).row_sum(a).get_si();
    for (long j = 0; j < r; ++j) {
      out.emplace_back(left, left + len);
      left += t.offset(t.top_letter_at(left + len / 2));
    }
  }
  return out;
}

Exact identity(const Exact& x) { return x; }

Exact direct_sum(const Iem& t, Exact x, std::size_t n) {
  Exact s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    s += x;
    x += t.offset(t.top_letter_at(x));
  }
  return s;
}

Exact random_point(std::mt19937_64& rng, const Iem& t) {
  return t.left() + t.total() * random_lengths(rng, 1, 64).front();
}

void check_bounds(const TimeDecomposition& td) {
  for (const auto* part : {&td.positive, &td.negative})
    for (const auto& b : *part)
      if (b.bound) CHECK(Integer(static_cast<unsigned long>(b.count)) <= *b.bound);
}

// T^j applied to the midpoint of I_alpha(T(n_level)) by direct iteration.
Exact forward_midpoint(const RenormalizationPath& path, const PartitionInterval& iv) {
  const Iem& t = path.base();
  const Iem& tl = path.level(iv.level);
  Exact mid = tl.u()[static_cast<std::size_t>(tl.pi().top(iv.alpha) - 1)] + tl.length(iv.alpha) / 2;
  for (Integer j = 0; j < iv.j; ++j) mid += t.offset(t.top_letter_at(mid));
  return mid;
}

}  // namespace

TEST_SUITE("decompositions") {

TEST_CASE("an orbit of length one is a single block") {
  RenormalizationPath path = iterate(golden(), 30);
  Exact x(1, 10);
  TimeDecomposition td = time_decompose(path, x, 1);
  REQUIRE(td.positive.size() == 1);
  CHECK(td.negative.empty());
  CHECK(td.positive[0].level == 0);
  CHECK(td.positive[0].count == 1);
  CHECK(td.positive[0].base == x);
  CHECK(reconstruct<Exact>(path, td, identity, Exact(0)) == x);
}

TEST_CASE("golden rotation reconstruction is exact") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 40);
  Exact x(1, 10);
  TimeDecomposition td = time_decompose(path, x, 5);
  CHECK(td.n_plus - td.n_minus == 5);
  CHECK(reconstruct<Exact>(path, td, identity, Exact(0)) == direct_sum(t, x, 5));
}

TEST_CASE("golden block counts respect the return-time bound") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 60);
  for (std::size_t k = 1; k < 10; ++k) CHECK(path.b_matrix(path.nk()[k], path.nk()[k + 1]).norm() == 3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Exact x = random_point(rng, t);
    TimeDecomposition td = time_decompose(path, x, 144);
    check_bounds(td);
    CHECK(td.n_plus - td.n_minus == 144);
    CHECK(reconstruct<Exact>(path, td, identity, Exact(0)) == direct_sum(t, x, 144));
  }
}

TEST_CASE("random d = 4 orbits reconstruct exactly") {
  std::mt19937_64 rng(41);
  Iem t(reversal(4), random_lengths(rng, 4));
  RenormalizationPath path = iterate(t, 400);
  for (std::size_t n : {1ul, 2ul, 17ul, 300ul, 2500ul}) {
    Exact x = random_point(rng, t);
    TimeDecomposition td = time_decompose(path, x, n);
    CHECK(td.n_plus - td.n_minus == static_cast<long>(n));
    check_bounds(td);
    CHECK(reconstruct<Exact>(path, td, identity, Exact(0)) == direct_sum(t, x, n));
    std::size_t total = 0;
    for (const auto* part : {&td.positive, &td.negative})
      for (const auto& b : *part) {
        Integer r = 0;
        Exact p = b.base;
        const Iem& tl = path.level(b.level);
        for (std::size_t i = 0; i < b.count; ++i) {
          r += path.b_from_origin(b.level).row_sum(tl.top_letter_at(p));
          p += tl.offset(tl.top_letter_at(p));
        }
        total += r.get_ui();
      }
    CHECK(total == n);
  }
}

TEST_CASE("orbits through a singularity are rejected") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 20);
  CHECK_THROWS_AS(time_decompose(path, t.u()[1], 3), Error);
}

TEST_CASE("the whole interval is the top partition") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 30);
  SpaceDecomposition sd = space_decompose(path, t.left(), t.right());
  CHECK(sd.k == 0);
  REQUIRE(sd.core.size() == 2);
  for (const auto& iv : sd.core) {
    CHECK(iv.j == 0);
    CHECK(iv.right - iv.left == t.length(iv.alpha));
  }
  for (const auto& tail : sd.tails_plus) CHECK(tail.empty());
  for (const auto& tail : sd.tails_minus) CHECK(tail.empty());
  CHECK(sd.remainder == 0);
}

TEST_CASE("space decomposition on random pairs") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 60);
  std::mt19937_64 rng(9);
  std::size_t bound_checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Exact a = random_point(rng, t), b = random_point(rng, t);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    SpaceDecomposition sd = space_decompose(path, a, b);
    std::vector<PartitionInterval> all = sd.core;
    for (const auto& v : sd.tails_plus) all.insert(all.end(), v.begin(), v.end());
    for (const auto& v : sd.tails_minus) all.insert(all.end(), v.begin(), v.end());
    Exact total = sd.remainder;
    for (const auto& iv : all) total += iv.right - iv.left;
    CHECK(total == b - a);
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.left < y.left; });
    for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i].right <= all[i + 1].left);
    CHECK(all.front().left >= a);
    CHECK(all.back().right <= b);
    CHECK(sd.remainder >= 0);
    if (sd.core_bound) {
      CHECK(Integer(static_cast<unsigned long>(sd.core.size())) <= 2 * *sd.core_bound);
      ++bound_checks;
    }
    for (std::size_t l = 0; l < sd.tail_bounds.size(); ++l) {
      CHECK(Integer(static_cast<unsigned long>(sd.tails_plus[l].size())) <= sd.tail_bounds[l]);
      CHECK(Integer(static_cast<unsigned long>(sd.tails_minus[l].size())) <= sd.tail_bounds[l]);
    }
    // Provenance: the recorded (alpha, j) reproduce the interval under T.
    for (const auto& iv : all) {
      if (iv.j > 5000) continue;
      CHECK(forward_midpoint(path, iv) == (iv.left + iv.right) / 2);
    }
  }
  CHECK(bound_checks > 50);
}

TEST_CASE("the core can exceed one refinement count when it straddles a coarser endpoint") {
  // Found by the random-pair scan above: (x_-, x_+) meets two intervals of
  // P(k-1) without containing either, and holds four intervals of P(k)
  // while ||B^T(n_{k-1}, n_k)|| = 3.
  Iem t = golden();
  RenormalizationPath path = iterate(t, 60);
  std::mt19937_64 rng(9);
  std::optional<SpaceDecomposition> found;
  for (int trial = 0; trial < 100 && !found; ++trial) {
    Exact a = random_point(rng, t), b = random_point(rng, t);
    if (b < a) std::swap(a, b);
    SpaceDecomposition sd = space_decompose(path, a, b);
    if (sd.core_bound && Integer(static_cast<unsigned long>(sd.core.size())) > *sd.core_bound) found = sd;
  }
  REQUIRE(found);
  const SpaceDecomposition& sd = *found;
  CHECK(sd.core.size() == 4);
  CHECK(*sd.core_bound == 3);
  int coarse_inside = 0, coarse_met = 0, fine_inside = 0;
  for (const auto& [l, r] : brute_partition(path, path.nk()[sd.k - 1])) {
    if (l >= sd.x_minus && r <= sd.x_plus) ++coarse_inside;
    if (r > sd.x_minus && l < sd.x_plus) ++coarse_met;
  }
  for (const auto& [l, r] : brute_partition(path, path.nk()[sd.k]))
    if (l >= sd.x_minus && r <= sd.x_plus) ++fine_inside;
  CHECK(coarse_inside == 0);
  CHECK(coarse_met == 2);
  CHECK(fine_inside == 4);
}

TEST_CASE("a pair inside one top interval needs finer levels on both sides") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 60);
  const Exact a = t.u()[0] + t.length(t.pi().top_letter(1)) / 3;
  const Exact b = t.u()[0] + t.length(t.pi().top_letter(1)) * 2 / 3;
  SpaceDecomposition sd = space_decompose(path, a, b);
  CHECK(sd.k >= 1);
  bool plus = false, minus = false;
  for (const auto& v : sd.tails_plus) plus = plus || !v.empty();
  for (const auto& v : sd.tails_minus) minus = minus || !v.empty();
  CHECK(plus);
  CHECK(minus);
  CHECK(sd.remainder < Exact(1, 1000000));
}

TEST_CASE("space decomposition rejects empty intervals") {
  Iem t = golden();
  RenormalizationPath path = iterate(t, 10);
  CHECK_THROWS_AS(space_decompose(path, Exact(1, 2), Exact(1, 2)), Error);
  CHECK_THROWS_AS(space_decompose(path, Exact(1, 2), Exact(1, 3)), Error);
}

}
