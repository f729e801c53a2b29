#pragma once

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "torsym/chains.hpp"
#include "torsym/regulator.hpp"

namespace torsym {

// tuples of nonsingular rational matrices
using GammaTuple = std::vector<QMat>;

inline void check_tuple(const GammaTuple& t, std::size_t n) {
  for (const auto& g : t) {
    require(g.rows() == n && g.cols() == n, errc::dimension_mismatch,
            "gamma tuple: matrix size mismatch");
    require(det_exact(g) != 0, errc::singular, "gamma tuple: singular matrix");
  }
}

// c_0 = e_1, c_i = primitive(gamma_1 gamma_2 ... gamma_i e_1); returned in
// the order (c_{n-1}, ..., c_0) the cocycle formula consumes. The ascending
// products are what make the inhomogeneous coboundary telescope close: the
// group action on the leading coboundary term prepends gamma_1 on the left.
inline std::vector<IVec> columns(const GammaTuple& t, std::size_t n) {
  require(t.size() + 1 == n, errc::bad_input, "columns: need an (n-1)-tuple");
  check_tuple(t, n);
  QMat prod = QMat::identity(n);
  QVec e1(n, Rational(0));
  e1[0] = 1;
  std::vector<IVec> cs;
  cs.push_back(primitive_rational(e1).ray);  // c_0
  for (const auto& g : t) {
    prod = prod * g;
    cs.push_back(primitive_rational(prod.apply(e1)).ray);
  }
  std::vector<IVec> out(cs.rbegin(), cs.rend());
  return out;
}

enum class ThetaMode { plain, symmetrized };

// theta(gamma_1, ..., gamma_{n-1}) = realize of the column simplex; the
// symmetrized variant (odd n, half-integral coefficients) averages with the
// [-1]_* image and is a cocycle on the nose rather than mod orientation.
inline KElement theta(const GammaTuple& t, std::size_t n, ThetaMode mode = ThetaMode::plain) {
  KElement v = realize(SimplexGen(n, columns(t, n)));
  if (mode == ThetaMode::plain) return v;
  require(n % 2 == 1, errc::even_dimension, "symmetrized theta requires odd n");
  QMat neg = QMat::identity(n);
  for (std::size_t i = 0; i < n; ++i) neg(i, i) = -1;
  return Rational(1, 2) * (v + act(neg, v));
}

// standard inhomogeneous coboundary of a degree-d cochain evaluated on a
// (d+1)-tuple:
//   act(g_1, f(g_2,...)) + sum_i (-1)^i f(..., g_i g_{i+1}, ...)
//   + (-1)^{d+1} f(g_1, ..., g_d)
inline KElement coboundary(const std::function<KElement(const GammaTuple&)>& f,
                           const GammaTuple& t, std::size_t n) {
  require(!t.empty(), errc::bad_input, "coboundary: empty tuple");
  check_tuple(t, n);
  std::size_t d = t.size() - 1;

  GammaTuple head(t.begin() + 1, t.end());
  KElement out = act(t[0], f(head));
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    GammaTuple merged;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j == i) {
        merged.push_back(t[i] * t[i + 1]);
        ++j;
      } else {
        merged.push_back(t[j]);
      }
    }
    KElement term = f(merged);
    out += ((i % 2 == 0) ? Rational(-1) : Rational(1)) * term;
  }
  GammaTuple tail(t.begin(), t.end() - 1);
  out += ((d % 2 == 0) ? Rational(-1) : Rational(1)) * f(tail);  // (-1)^{d+1}
  return out;
}

// ---------------------------------------------------------------------------
// Euler defect

struct EulerDefect {
  long long value;
  RegulatorReport report;
};

// The plain theta coboundary on an n-tuple lands on the orientation line; the
// fitted constant is the defect integer. ExtensionDependent propagates from
// any sub-evaluation.
inline EulerDefect euler_defect(const GammaTuple& t, std::size_t n, const SamplePlan& plan) {
  require(t.size() == n, errc::bad_input, "euler_defect: need an n-tuple");
  KElement delta =
      coboundary([n](const GammaTuple& s) { return theta(s, n, ThetaMode::plain); }, t, n);
  IntegerFit fit = fit_integer_constant(delta, plan);
  return {fit.value, std::move(fit.report)};
}

// coboundary of an integer cochain valued in Z(sgn): the leading term is
// twisted by the sign character of gamma_1
inline long long int_coboundary_sgn(
    const std::function<long long(const GammaTuple&)>& eps, const GammaTuple& t) {
  require(t.size() >= 2, errc::bad_input, "int_coboundary_sgn: need at least a pair");
  std::size_t d = t.size() - 1;
  GammaTuple head(t.begin() + 1, t.end());
  int sgn = sign_of(det_exact(t[0]));
  long long out = sgn * eps(head);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    GammaTuple merged;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j == i) {
        merged.push_back(t[i] * t[i + 1]);
        ++j;
      } else {
        merged.push_back(t[j]);
      }
    }
    out += (i % 2 == 0 ? -1 : 1) * eps(merged);
  }
  GammaTuple tail(t.begin(), t.end() - 1);
  out += (d % 2 == 0 ? -1 : 1) * eps(tail);  // (-1)^{d+1}
  return out;
}

// ---------------------------------------------------------------------------
// Sullivan denominator

struct SullivanResult {
  Integer d;        // gcd of m^n (m^n - 1) over the admissible range; 0 if empty
  bool stabilized;  // unchanged over the last half of the range
};

inline SullivanResult sullivan_d(std::size_t n, const std::set<Integer>& excluded_primes,
                                 long long bound) {
  require(bound >= 2, errc::domain_error, "sullivan_d: bound >= 2");
  auto admissible = [&](long long m) {
    for (const auto& p : excluded_primes)
      if (Integer(m) % p == 0) return false;
    return true;
  };
  Integer g = 0;
  Integer at_midpoint = 0;
  long long mid = 2 + (bound - 2) / 2;
  for (long long m = 2; m <= bound; ++m) {
    if (!admissible(m)) continue;
    Integer mn = 1;
    for (std::size_t k = 0; k < n; ++k) mn *= m;
    g = gcd_of(g, mn * (mn - 1));
    if (m <= mid) at_midpoint = g;
  }
  bool stabilized = (g != 0) && (at_midpoint == g);
  return {g, stabilized};
}

}  // namespace torsym
