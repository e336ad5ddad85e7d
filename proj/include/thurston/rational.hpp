#ifndef THURSTON_RATIONAL_HPP
#define THURSTON_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace thurston {

// Exact rational arithmetic on int64 with 128-bit intermediates.
// Angles on the circle are rationals reduced mod 1 into [0,1).
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    long long lo = static_cast<long long>(n), ld = static_cast<long long>(d);
    if (n != lo || d != ld) throw std::overflow_error("Rational overflow");
    Rational r; r.num = lo; r.den = ld;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.den + (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.den - (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("Rational: division by zero");
    return from_i128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Reduce a rational to its representative in [0,1).
inline Rational mod1(const Rational& a) {
  long long r = a.num % a.den;
  if (r < 0) r += a.den;
  Rational out; out.num = r; out.den = a.den; out.normalize();
  return out;
}

// Angle on R/Z: invariant den > 0, 0 <= num < den, gcd = 1.
using Angle = Rational;

inline Angle angle(long long p, long long q) { return mod1(Rational(p, q)); }

inline Angle times_d(const Angle& a, long long d) { return mod1(Rational(a.num * d, a.den)); }

inline Angle negate(const Angle& a) { return mod1(-a); }

struct AngleOrbit {
  int preperiod = 0;
  int period = 0;
  std::vector<Angle> points;  // preperiod part then one full period
};

// Exact forward orbit of an angle under multiplication by d mod 1.
inline AngleOrbit angle_orbit(Angle theta, long long d) {
  if (d < 2) throw std::domain_error("angle_orbit: degree must be >= 2");
  std::vector<Angle> seen;
  Angle cur = mod1(theta);
  for (;;) {
    for (size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == cur) {
        AngleOrbit o;
        o.preperiod = static_cast<int>(i);
        o.period = static_cast<int>(seen.size() - i);
        o.points = seen;
        return o;
      }
    seen.push_back(cur);
    cur = times_d(cur, d);
  }
}

inline bool denominator_coprime(const Angle& a, long long d) {
  return std::gcd(a.den, d) == 1;
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace thurston

#endif
