#pragma once

#include <iosfwd>
#include <string>

#include "ostrowski/bigint.hpp"

namespace ostrowski {

/// An exact element (a + b*sqrt(d)) / c of the real quadratic field Q(sqrt(d)).
///
/// The representation is kept reduced: c > 0 and gcd(a, b, c) = 1. Two surds
/// can only be combined when they share the radicand d. Ordering, floor and
/// fractional parts are decided with integer square-root bracketing, so no
/// floating point enters a comparison.
class Surd {
 public:
  Surd(BigInt a, BigInt b, BigInt c, BigInt d);

  static Surd integer(const BigInt& v, const BigInt& d) { return Surd(v, 0, 1, d); }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& radicand() const { return d_; }

  Surd operator-() const;
  Surd operator+(const Surd& o) const;
  Surd operator-(const Surd& o) const;
  Surd operator*(const Surd& o) const;
  Surd operator/(const Surd& o) const;
  Surd operator*(const BigInt& k) const;
  Surd operator+(const BigInt& k) const;
  Surd operator-(const BigInt& k) const;

  Surd pow(unsigned e) const;

  bool operator==(const Surd& o) const = default;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// Exact sign of the value: -1, 0 or +1.
  int sign() const;

  BigInt floor() const;

  /// floor(2^128 * frac(this)) computed exactly.
  Turns frac_turns() const;

  double to_double() const;
  std::string str() const;

 private:
  void check_same_field(const Surd& o) const;
  void normalize();

  BigInt a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const Surd& s);

/// {h*s} rounded once to a double in [0,1); sign-correct for negative h.
double frac_mul(const BigInt& h, const Surd& s);

/// Exact fixed-point form of {h*s}.
Turns frac_mul_turns(const BigInt& h, const Surd& s);

/// ||h*s||, the distance from h*s to the nearest integer, in [0, 1/2].
double dist_nearest(const BigInt& h, const Surd& s);

/// Distance to the nearest integer of a fixed-point fraction, as a double.
double turns_dist_nearest(Turns t);

}  // namespace ostrowski
