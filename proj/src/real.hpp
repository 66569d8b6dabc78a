#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace iemcoh {

using Exact = mpq_class;
using Integer = mpz_class;

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 256;

// Owning MPFR value. Arithmetic results carry the larger precision of the
// operands; plain integer/double operands never lower it. Rounding is always
// to nearest.
class Real {
 public:
  Real() : Real(0, kDefaultPrecision) {}
  explicit Real(Precision prec);
  Real(long value, Precision prec);
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Precision prec);
  Real(const Exact& value, Precision prec);
  Real(const Integer& value, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Decimal (or "inf"-free) text; throws Error(MalformedData) on bad input.
  static Real parse(std::string_view text, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  // Raises (never lowers) the precision, keeping the value.
  void widen(Precision prec);

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Exact dyadic value of the stored binary number.
  Exact to_exact() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const;  // binary exponent e with 0.5 <= |x| 2^-e < 1

  // Scientific notation with `digits` significant digits; deterministic.
  std::string to_string(int digits = 30) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

// 2^e as an exact rational.
Exact pow2(long e);
// Parses a decimal string, rounds it to `prec` bits and returns the exact
// dyadic value of the rounded number.
Exact parse_rounded(std::string_view text, Precision prec);
// Decimal rendering of an exact value via rounding to `prec` bits.
std::string exact_to_string(const Exact& x, int digits = 30, Precision prec = kDefaultPrecision);
double to_double(const Exact& x);

}  // namespace iemcoh
