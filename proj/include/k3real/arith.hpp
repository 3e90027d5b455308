#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3real {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

// Raised when an operation's precondition on its mathematical input fails
// (degenerate Gram matrix, odd lattice where an even one is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Floor-mod with a non-negative result for positive modulus.
inline Integer mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a), y = abs(b);
  while (y != 0) {
    Integer t = x % y;
    x = y;
    y = t;
  }
  return x;
}

// Extended gcd: returns g >= 0 with s*a + t*b == g.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {Integer(-old_r), Integer(-old_s), Integer(-old_t)};
  return {old_r, old_s, old_t};
}

// Reduces a rational into [0, n) for a positive integer n.
inline Rational reduce_mod(const Rational& x, const Integer& n) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer num = numerator(x);
  Integer den = denominator(x);
  Integer r = mod(num, Integer(n * den));
  return Rational(r, den);
}

inline Rational make_rational(long long num, long long den = 1) {
  if (den < 0) return Rational(-Integer(num), -Integer(den));
  return Rational(Integer(num), Integer(den));
}

// "p/q" or "p" -> rational; throws std::invalid_argument on bad text.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) return Rational(-num, -den);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

inline std::string to_string(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw DomainError("integer does not fit in 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

}  // namespace k3real
