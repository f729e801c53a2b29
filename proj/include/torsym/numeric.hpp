#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

#include "torsym/error.hpp"

namespace torsym {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

inline Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Integer gcd_of(const Integer& a, const Integer& b) { return gcd(a, b); }

// floor(p/q) for exact rationals; gmp's integer division truncates, so fix up
// negative non-exact quotients by hand.
inline Integer rfloor(const Rational& r) {
  Integer num = numerator(r), den = denominator(r);
  Integer q = num / den;
  if (num % den != 0 && ((num < 0) != (den < 0))) q -= 1;
  return q;
}

// canonical representative of r modulo 1 in [0,1)
inline Rational mod1(const Rational& r) { return r - Rational(rfloor(r)); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::string rational_str(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    fail(errc::bad_input, "cannot parse rational '" + s + "'");
  }
}

inline Rational dot(const QVec& a, const QVec& b) {
  require(a.size() == b.size(), errc::dimension_mismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec to_qvec(const IVec& v) {
  QVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
  return q;
}

inline bool is_zero_vec(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace torsym
