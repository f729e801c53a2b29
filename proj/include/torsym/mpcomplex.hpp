#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "torsym/numeric.hpp"

namespace torsym {

// Runtime-precision real; precision is thread-local and set through
// PrecisionGuard at every numeric entry point.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30102999566398119521) + 4;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for_bits(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const Rational& q) {
  return Real(numerator(q)) / Real(denominator(q));
}

// Minimal complex type over Real. boost's complex adaptors do not cover the
// runtime-precision mpfr backend, and we only need field ops, exp, log, abs.
struct Cplx {
  Real re, im;

  Cplx() : re(0), im(0) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cplx(Real r) : re(std::move(r)), im(0) {}
  explicit Cplx(double r) : re(r), im(0) {}

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }
};

inline Real abs_c(const Cplx& z) { return sqrt(z.re * z.re + z.im * z.im); }

inline Cplx exp_c(const Cplx& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// principal branch
inline Cplx log_c(const Cplx& z) { return {log(abs_c(z)), atan2(z.im, z.re)}; }

inline Cplx polar_c(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

// exp(2*pi*i*t) for exact rational t
inline Cplx unit_root(const Rational& t) {
  Real angle = 2 * pi_real() * to_real(t);
  return {cos(angle), sin(angle)};
}

inline std::string real_str(const Real& x, unsigned digits = 25) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace torsym
