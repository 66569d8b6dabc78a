#include "doctest.h"

#include "combinatorics.hpp"
#include "error.hpp"
#include "helpers.hpp"

using namespace iemcoh;
using namespace testing_support;

TEST_SUITE("combinatorics") {

TEST_CASE("irreducibility of small pairs") {
  CHECK(validate_irreducible({1, 2}, {2, 1}));
  CHECK_FALSE(validate_irreducible({1, 2}, {1, 2}));
  CHECK(validate_irreducible({1, 2, 3, 4}, {4, 3, 2, 1}));
  CHECK(reducible_at({1, 2, 3}, {2, 1, 3}) == 2);
  CHECK_THROWS_AS(validate_irreducible({1, 1}, {2, 1}), Error);
  CHECK_THROWS_AS(validate_irreducible({1, 3}, {2, 1}), Error);
}

TEST_CASE("reducible data is rejected with the offending k") {
  try {
    CombinatorialData({"A", "B"}, {1, 2}, {1, 2});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedData);
    CHECK(std::string(e.what()) == "reducible at k=1");
  }
}

TEST_CASE("omega matrix") {
  IntMatrix om = omega_matrix(swap2());
  CHECK(om(0, 1) == 1);
  CHECK(om(1, 0) == -1);
  CHECK(om(0, 0) == 0);
  IntMatrix r4 = omega_matrix(reversal(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(r4(a, b) == (a < b ? 1 : (a > b ? -1 : 0)));
}

TEST_CASE("vertex permutation of the two-letter swap") {
  VertexPermutation vp = vertex_permutation(swap2());
  REQUIRE(vp.cycles.size() == 1);
  // U0 -> V1 -> U2 -> U1 -> U0
  CHECK(vp.map[vp.u(0)] == vp.v(1));
  CHECK(vp.map[vp.v(1)] == vp.u(2));
  CHECK(vp.map[vp.u(2)] == vp.u(1));
  CHECK(vp.map[vp.u(1)] == vp.u(0));
}

TEST_CASE("genus and marked points") {
  auto g2 = genus_and_marks(swap2());
  CHECK(g2.g == 1);
  CHECK(g2.s == 1);
  auto g4 = genus_and_marks(reversal(4));
  CHECK(g4.g == 2);
  CHECK(g4.s == 1);
  auto g3 = genus_and_marks(reversal(3));
  CHECK(g3.g == 1);
  CHECK(g3.s == 2);
}

TEST_CASE("exhaustive invariants for d <= 7") {
  for (std::size_t d = 2; d <= 7; ++d) {
    for (const auto& pi : all_irreducible(d)) {
      IntMatrix om = omega_matrix(pi);
      CHECK(om + om.transpose() == IntMatrix(d, d));
      CHECK(om.rank() % 2 == 0);
      GenusMarks gm = genus_and_marks(pi);  // throws on d != 2g + s - 1
      CHECK(static_cast<int>(d) == 2 * gm.g + gm.s - 1);
      VertexPermutation vp = vertex_permutation(pi);
      bool adjacent_pair = false;
      for (int i = 1; i < static_cast<int>(d); ++i)
        if (pi.bottom(pi.top_letter(i + 1)) == pi.bottom(pi.top_letter(i)) + 1) adjacent_pair = true;
      std::size_t single = 0;
      for (std::size_t c = 0; c < vp.cycles.size(); ++c) {
        CHECK(vp.u_count(c) >= 1);
        if (vp.u_count(c) == 1) ++single;
      }
      CHECK((single > 0) == adjacent_pair);
    }
  }
}

TEST_CASE("a letter pair adjacent in both rows gives a cycle with one U vertex") {
  auto pi = CombinatorialData::from_orders({"A", "B", "C"}, {"A", "B", "C"}, {"C", "A", "B"});
  VertexPermutation vp = vertex_permutation(pi);
  std::size_t c = vp.cycle_of_u[1];
  CHECK(vp.cycles[c].size() == 2);
  CHECK(vp.u_count(c) == 1);
}

TEST_CASE("from_orders builds positions") {
  auto pi = CombinatorialData::from_orders({"A", "B", "C"}, {"A", "B", "C"}, {"C", "B", "A"});
  CHECK(pi.top(0) == 1);
  CHECK(pi.bottom(0) == 3);
  CHECK(pi.bottom_letter(1) == 2);
}

}
