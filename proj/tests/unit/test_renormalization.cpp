#include "doctest.h"

#include "error.hpp"
#include "helpers.hpp"
#include "renormalization.hpp"

using namespace iemcoh;
using namespace testing_support;

namespace {

IntMatrix m2(long a, long b, long c, long d) {
  IntMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Independent continued fraction: partial quotients of x by the Gauss map on
// exact rationals, convergents by the three-term recurrence.
struct Convergents {
  std::vector<Integer> p, q;
};

Convergents convergents(Exact x, std::size_t count) {
  Convergents c;
  Integer p_prev = 1, q_prev = 0, p_cur, q_cur;
  for (std::size_t n = 0; n < count; ++n) {
    Integer a = x.get_num() / x.get_den();
    Exact frac = x - Exact(a);
    if (n == 0) {
      p_cur = a;
      q_cur = 1;
    } else {
      Integer p_next = a * p_cur + p_prev, q_next = a * q_cur + q_prev;
      p_prev = p_cur;
      q_prev = q_cur;
      p_cur = p_next;
      q_cur = q_next;
    }
    c.p.push_back(p_cur);
    c.q.push_back(q_cur);
    x = 1 / frac;
  }
  return c;
}

// First return of T(0) to I(n) computed by brute force orbit following.
void check_first_return(const RenormalizationPath& path, std::size_t n, std::mt19937_64& rng) {
  const Iem& t0 = path.base();
  const Iem& tn = path.level(n);
  IntMatrix b = path.b_from_origin(n);
  for (Letter a = 0; a < tn.size(); ++a) {
    Exact left = tn.u()[static_cast<std::size_t>(tn.pi().top(a) - 1)];
    Exact x = left + tn.length(a) * Exact(static_cast<long>(rng() % 999 + 1), 1000);
    std::vector<Integer> visits(t0.size(), 0);
    Exact p = x;
    std::size_t r = 0;
    do {
      Letter c = t0.top_letter_at(p);
      visits[c] += 1;
      p = evaluate(t0, p);
      ++r;
    } while (p >= tn.right());
    CHECK(p == evaluate(tn, x));
    for (Letter c = 0; c < t0.size(); ++c) CHECK(visits[c] == b(a, c));
    CHECK(Integer(static_cast<long>(r)) == b.row_sum(a));
  }
}

}  // namespace

TEST_SUITE("renormalization") {

TEST_CASE("elementary steps on the two-letter swap") {
  Iem t = Iem::from_decimal(swap2(), {"0.7", "0.3"});
  auto [next, rec] = rv_step(t);
  CHECK(rec.type == StepType::Top);
  CHECK(rec.elementary == m2(1, 0, 1, 1));
  CHECK(next.length(0) == parse_rounded("0.7", 256) - parse_rounded("0.3", 256));
  CHECK(next.length(1) == parse_rounded("0.3", 256));

  Iem s = Iem::from_decimal(swap2(), {"0.3", "0.7"});
  auto [next2, rec2] = rv_step(s);
  CHECK(rec2.type == StepType::Bottom);
  CHECK(rec2.elementary == m2(1, 1, 0, 1));
  CHECK(next2.length(1) == parse_rounded("0.7", 256) - parse_rounded("0.3", 256));

  Iem h = Iem::from_decimal(swap2(), {"0.5", "0.5"});
  CHECK_THROWS_AS(rv_step(h), Error);
}

TEST_CASE("golden path against continued fraction convergents") {
  Iem g = golden();
  RenormalizationPath path = iterate(g, 24);
  REQUIRE(path.length() == 24);
  for (std::size_t n = 0; n < 24; ++n) CHECK(path.steps()[n].type == (n % 2 == 0 ? StepType::Top : StepType::Bottom));
  REQUIRE(path.nk().size() >= 13);
  for (std::size_t k = 1; k < path.nk().size(); ++k) CHECK(path.nk()[k] - path.nk()[k - 1] == 2);
  CHECK(path.b_matrix(0, 2) == m2(2, 1, 1, 1));
  Convergents c = convergents(g.length(0) / g.length(1), 30);
  for (std::size_t k = 1; k <= 12; ++k) {
    IntMatrix expected(2, 2);
    expected(0, 0) = c.p[2 * k - 1];
    expected(0, 1) = c.q[2 * k - 1];
    expected(1, 0) = c.q[2 * k - 1];
    expected(1, 1) = c.q[2 * k - 2];
    CHECK(path.b_matrix(0, 2 * k) == expected);
  }
}

TEST_CASE("empty path and rational rotation") {
  RenormalizationPath empty = iterate(golden(), 0);
  CHECK(empty.length() == 0);
  CHECK(empty.b_matrix(0, 0) == IntMatrix::identity(2));

  RenormalizationPath q = iterate(Iem::from_decimal(swap2(), {"0.75", "0.25"}), 10);
  CHECK(q.stop_reason() == StopReason::Connection);
  REQUIRE(q.connection_step());
  CHECK(*q.connection_step() == 2);
  CHECK(q.length() == 2);
}

TEST_CASE("cocycle, determinant, monotonicity, symplecticity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto pi = random_irreducible(rng, 2 + trial % 4);
    RenormalizationPath path = iterate(Iem(pi, random_lengths(rng, pi.size())), 30);
    const std::size_t len = path.length();
    for (std::size_t m = 0; m <= len; m += 3) {
      for (std::size_t n = m; n <= len; n += 4) {
        IntMatrix bmn = path.b_matrix(m, n);
        CHECK(bmn.determinant() == 1);
        CHECK(bmn.all_nonnegative());
        CHECK(bmn * omega_matrix(path.level(m).pi()) * bmn.transpose() == omega_matrix(path.level(n).pi()));
        if (n + 1 <= len) {
          IntMatrix next = path.b_matrix(m, n + 1);
          for (std::size_t i = 0; i < pi.size(); ++i)
            for (std::size_t j = 0; j < pi.size(); ++j) CHECK(next(i, j) >= bmn(i, j));
        }
        for (std::size_t p = n; p <= len; p += 5) CHECK(path.b_matrix(m, p) == path.b_matrix(n, p) * bmn);
      }
    }
    for (std::size_t k = 1; k < path.nk().size(); ++k) CHECK(path.b_matrix(path.nk()[k - 1], path.nk()[k]).all_positive());
  }
}

TEST_CASE("first return spot checks") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    auto pi = random_irreducible(rng, 2 + trial % 4);
    RenormalizationPath path = iterate(Iem(pi, random_lengths(rng, pi.size())), 16);
    for (std::size_t n = 1; n <= path.length(); n += 5) check_first_return(path, n, rng);
  }
}

TEST_CASE("length transport and kernel transport") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto pi = random_irreducible(rng, 3 + trial % 3);
    RenormalizationPath path = iterate(Iem(pi, random_lengths(rng, pi.size())), 30);
    for (std::size_t n = 0; n <= path.length(); ++n) {
      IntMatrix b = path.b_from_origin(n);
      Exact sum = 0;
      for (Letter a = 0; a < pi.size(); ++a) sum += Exact(b.row_sum(a)) * path.level(n).length(a);
      CHECK(sum == path.base().total());
      // Kernel transport: x with B^T x = w, w in Ker Omega(0) => x in Ker Omega(n).
      for (const auto& w : nullspace(omega_matrix(pi))) {
        ExactVector x = solve_exact(b.transpose(), w);
        for (const auto& e : omega_matrix(path.level(n).pi()).apply(x)) CHECK(e == 0);
      }
    }
  }
}

TEST_CASE("balance report slacks") {
  RenormalizationPath path = iterate(golden(), 40);
  for (std::size_t n = 0; n <= path.length(); ++n) {
    BalanceReport r = balance_report(path, n);
    CHECK(r.lower_slack >= 0);
    CHECK(r.upper_slack >= 0);
  }
  CHECK(balance_report(path, 0).norm_b == 1);
}

TEST_CASE("precision exhaustion stops the golden path") {
  RenormalizationPath path = iterate(golden(64), 1000);
  CHECK(path.length() < 1000);
  CHECK(path.stop_reason() != StopReason::MaxSteps);
}


static ErrorKind step_error(const Iem& t) {
  try {
    rv_step(t, 0);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

TEST_CASE("sub-resolution coincidences are connections only at coarse scales") {
  // u_1 - v_1 = 2^-140, far below the 2^-128 resolution at 256 bits.
  const Exact eps(Integer(1), Integer(1) << 140);
  Iem coarse(swap2(), {Exact(1, 2) + eps, Exact(1, 2)}, 0, 256);
  CHECK(step_error(coarse) == ErrorKind::Connection);
  // The same coincidence on an interval of width 2^-110 carries no information.
  const Exact scale(Integer(1), Integer(1) << 110);
  Iem fine(swap2(), {Exact(1, 2) * scale + eps, Exact(1, 2) * scale}, 0, 256);
  CHECK(step_error(fine) == ErrorKind::PrecisionExhausted);
  CHECK(iterate(fine, 5).stop_reason() == StopReason::Precision);
}

}
