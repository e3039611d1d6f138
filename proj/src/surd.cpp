#include "ostrowski/surd.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ostrowski {
namespace {

using boost::multiprecision::gcd;

int sgn(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// floor((a + b*sqrt(d)) / c) for c > 0, d >= 0.
BigInt floor_of(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  if (b == 0) return floor_div(a, c);
  const BigInt y = b * b * d;
  const BigInt r = isqrt(y);
  if (r * r == y) return floor_div(b > 0 ? a + r : a - r, c);
  // b*sqrt(d) lies strictly inside (A, A+1) with A integer; no multiple of c
  // can separate a + A from the true numerator.
  return b > 0 ? floor_div(a + r, c) : floor_div(a - r - 1, c);
}

Turns low_128(const BigInt& v) {
  static const BigInt mask64 = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(v & mask64);
  const auto hi = static_cast<std::uint64_t>((v >> 64) & mask64);
  return (static_cast<Turns>(hi) << 64) | lo;
}

Turns frac_turns_of(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  static const BigInt one_turn = BigInt(1) << 128;
  return low_128(floor_mod(floor_of(a << 128, b << 128, c, d), one_turn));
}

}  // namespace

Surd::Surd(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw std::invalid_argument("Surd: zero denominator");
  if (d_ < 0) throw std::invalid_argument("Surd: negative radicand");
  normalize();
}

void Surd::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  BigInt g = gcd(gcd(abs(a_), abs(b_)), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

void Surd::check_same_field(const Surd& o) const {
  if (d_ != o.d_) throw std::invalid_argument("Surd: mismatched radicands");
}

Surd Surd::operator-() const { return Surd(-a_, -b_, c_, d_); }

Surd Surd::operator+(const Surd& o) const {
  check_same_field(o);
  return Surd(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d_);
}

Surd Surd::operator-(const Surd& o) const { return *this + (-o); }

Surd Surd::operator*(const Surd& o) const {
  check_same_field(o);
  return Surd(a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_, c_ * o.c_, d_);
}

Surd Surd::operator/(const Surd& o) const {
  check_same_field(o);
  const BigInt norm = o.a_ * o.a_ - o.b_ * o.b_ * d_;
  if (norm == 0) throw std::domain_error("Surd: division by zero");
  // 1 / ((a + b sqrt d) / c) = c (a - b sqrt d) / (a^2 - b^2 d)
  return *this * Surd(o.c_ * o.a_, -o.c_ * o.b_, norm, d_);
}

Surd Surd::operator*(const BigInt& k) const { return Surd(a_ * k, b_ * k, c_, d_); }
Surd Surd::operator+(const BigInt& k) const { return Surd(a_ + k * c_, b_, c_, d_); }
Surd Surd::operator-(const BigInt& k) const { return Surd(a_ - k * c_, b_, c_, d_); }

Surd Surd::pow(unsigned e) const {
  Surd result = integer(1, d_);
  Surd base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

int Surd::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0 || d_ == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const BigInt diff = a_ * a_ - b_ * b_ * d_;
  return sa > 0 ? sgn(diff) : -sgn(diff);
}

BigInt Surd::floor() const { return floor_of(a_, b_, c_, d_); }

Turns Surd::frac_turns() const { return frac_turns_of(a_, b_, c_, d_); }

double Surd::to_double() const {
  return static_cast<double>(floor()) + turns_to_double(frac_turns());
}

std::string Surd::str() const {
  std::ostringstream os;
  os << '(' << a_ << (b_ < 0 ? " - " : " + ") << abs(b_) << "*sqrt(" << d_ << "))/" << c_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

Turns frac_mul_turns(const BigInt& h, const Surd& s) {
  return frac_turns_of(h * s.a(), h * s.b(), s.c(), s.radicand());
}

double frac_mul(const BigInt& h, const Surd& s) { return turns_to_double(frac_mul_turns(h, s)); }

double turns_dist_nearest(Turns t) {
  const Turns mirrored = static_cast<Turns>(0) - t;  // 1 - t modulo one turn
  const Turns near = t < mirrored ? t : mirrored;
  return std::ldexp(static_cast<double>(near), -128);
}

double dist_nearest(const BigInt& h, const Surd& s) { return turns_dist_nearest(frac_mul_turns(h, s)); }

}  // namespace ostrowski
