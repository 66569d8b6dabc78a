#pragma once

#include <random>
#include <string>
#include <vector>

#include "exchange.hpp"
#include "doctest.h"
#include "real.hpp"

namespace testing_support {

using namespace iemcoh;

inline std::vector<std::string> letters(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

inline CombinatorialData swap2() { return CombinatorialData({"A", "B"}, {1, 2}, {2, 1}); }

inline CombinatorialData reversal(std::size_t d) {
  std::vector<int> top, bottom;
  for (std::size_t i = 0; i < d; ++i) {
    top.push_back(static_cast<int>(i + 1));
    bottom.push_back(static_cast<int>(d - i));
  }
  return CombinatorialData(letters(d), top, bottom);
}

inline Iem golden(Precision prec = 256) {
  Real five(5L, prec);
  Real a = (sqrt(five) - Real(1L, prec)) / 2L;  // phi - 1
  Real b = Real(1L, prec) - a;                  // 2 - phi
  return Iem(swap2(), {a.to_exact(), b.to_exact()}, 0, prec);
}

inline Iem from_doubles(CombinatorialData pi, std::vector<double> lengths, Precision prec = 256) {
  std::vector<Exact> ex;
  for (double x : lengths) ex.push_back(Real(x, prec).to_exact());
  return Iem(std::move(pi), std::move(ex), 0, prec);
}

// Uniform random dyadic lengths with `bits` random bits each.
inline std::vector<Exact> random_lengths(std::mt19937_64& rng, std::size_t d, int bits = 256) {
  std::vector<Exact> out;
  for (std::size_t i = 0; i < d; ++i) {
    Integer num = 0;
    for (int k = 0; k < bits; k += 64) {
      num <<= 64;
      num += Integer(std::to_string(rng()));
    }
    Exact x(num, Integer(1) << ((bits + 63) / 64 * 64));
    x.canonicalize();
    if (x == 0) x = Exact(1, 3);
    out.push_back(x / 2 + Exact(1, 4));  // keep away from zero
  }
  return out;
}

inline CombinatorialData random_irreducible(std::mt19937_64& rng, std::size_t d) {
  for (;;) {
    std::vector<int> top(d), bottom(d);
    for (std::size_t i = 0; i < d; ++i) top[i] = bottom[i] = static_cast<int>(i + 1);
    std::shuffle(bottom.begin(), bottom.end(), rng);
    if (validate_irreducible(top, bottom)) return CombinatorialData(letters(d), top, bottom);
  }
}

// All irreducible pairs with pi_top = identity (every irreducible pair is a
// relabeling of one of these).
inline std::vector<CombinatorialData> all_irreducible(std::size_t d) {
  std::vector<int> top(d), bottom(d);
  for (std::size_t i = 0; i < d; ++i) top[i] = bottom[i] = static_cast<int>(i + 1);
  std::vector<CombinatorialData> out;
  do {
    if (validate_irreducible(top, bottom)) out.emplace_back(letters(d), top, bottom);
  } while (std::next_permutation(bottom.begin(), bottom.end()));
  return out;
}

}  // namespace testing_support

namespace doctest {
template <>
struct StringMaker<iemcoh::Real> {
  static String convert(const iemcoh::Real& x) { return x.to_string(8).c_str(); }
};
}  // namespace doctest
