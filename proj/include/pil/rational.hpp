#pragma once

#include <boost/rational.hpp>

#include <iosfwd>
#include <string>

#include "pil/errors.hpp"

// boost 1.74's reversed rational-vs-integer equality self-recurses once C++20
// adds synthesized candidates (its partial-ordering beats the member form), so
// mixed equality is deleted project-wide: compare rationals to rationals.
namespace boost {
bool operator==(const rational<long long>&, int) = delete;
bool operator==(const rational<long long>&, long) = delete;
bool operator==(const rational<long long>&, long long) = delete;
bool operator==(const rational<long long>&, unsigned) = delete;
bool operator==(const rational<long long>&, unsigned long) = delete;
bool operator==(const rational<long long>&, unsigned long long) = delete;
bool operator==(int, const rational<long long>&) = delete;
bool operator==(long, const rational<long long>&) = delete;
bool operator==(long long, const rational<long long>&) = delete;
bool operator==(unsigned, const rational<long long>&) = delete;
bool operator==(unsigned long, const rational<long long>&) = delete;
bool operator==(unsigned long long, const rational<long long>&) = delete;
}  // namespace boost

namespace pil {

// All order/weight/ladder arithmetic is exact rational; no floating point.
using Rat = boost::rational<long long>;

// Non-negative rational extended with +infinity, for Lawvere weights.
struct ExtRat {
  bool infinite = false;
  Rat value{0};

  ExtRat() = default;
  explicit ExtRat(const Rat& v) : infinite(false), value(v) {}
  static ExtRat inf() {
    ExtRat e;
    e.infinite = true;
    return e;
  }

  bool is_zero() const { return !infinite && value == Rat(0); }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return inf();
    return ExtRat(a.value + b.value);
  }
  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) {
    return a < b || a == b;
  }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }
};

// Accepts "p", "-p", "p/q" with optional sign; throws SchemaError on junk.
Rat parse_rat(const std::string& s);

// Canonical form "p/q" with q > 0 and gcd(p,q) = 1; zero prints as "0/1".
std::string format_rat(const Rat& r);

// As parse_rat, plus the token "inf".
ExtRat parse_ext(const std::string& s);
std::string format_ext(const ExtRat& e);

inline Rat rat_floor_div(const Rat& a, const Rat& b) {
  // floor(a/b) as a rational integer; b > 0 required.
  Rat q = a / b;
  long long fl = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) fl -= 1;
  return Rat(fl);
}

}  // namespace pil
