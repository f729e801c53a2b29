#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "torsym/matrix.hpp"
#include "torsym/numeric.hpp"

namespace torsym {

// ---------------------------------------------------------------------------
// primitivization

struct Primitive {
  IVec ray;         // gcd of |entries| is 1, direction of the input preserved
  Integer content;  // > 0, content * ray == input
};

inline Primitive primitive(const IVec& v) {
  require(!is_zero_vec(v), errc::zero_vector, "primitive of zero vector");
  Integer g = 0;
  for (const auto& x : v) g = gcd_of(g, iabs(x));
  IVec ray(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) ray[i] = v[i] / g;
  return {std::move(ray), g};
}

struct PrimitiveQ {
  IVec ray;
  Rational content;  // > 0, content * ray == input
};

inline PrimitiveQ primitive_rational(const QVec& v) {
  Integer lcm_den = 1;
  bool all_zero = true;
  for (const auto& x : v) {
    if (x != 0) all_zero = false;
    lcm_den = lcm(lcm_den, denominator(x));
  }
  require(!all_zero, errc::zero_vector, "primitive of zero vector");
  IVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = numerator(v[i] * Rational(lcm_den));
  Primitive p = primitive(scaled);
  return {std::move(p.ray), Rational(p.content, lcm_den)};
}

// ---------------------------------------------------------------------------
// Smith normal form: U*A*V = S with U, V unimodular and d_1 | d_2 | ...
// Pivot rule fixed for determinism: smallest |entry| first, ties by row-major
// position.

struct SNFDecomposition {
  IMat U, S, V;
};

namespace detail {

inline void swap_rows(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
inline void add_row(IMat& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
inline void add_col(IMat& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}
inline void negate_row(IMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

inline SNFDecomposition snf(const IMat& a) {
  std::size_t m = a.rows(), n = a.cols();
  IMat S = a, U = IMat::identity(m), V = IMat::identity(n);
  std::size_t t = 0;
  std::size_t steps = std::min(m, n);
  while (t < steps) {
    // locate pivot: smallest nonzero |entry| in the trailing block
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (S(i, j) == 0) continue;
        Integer v = iabs(S(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    detail::swap_rows(S, t, pi);
    detail::swap_rows(U, t, pi);
    detail::swap_cols(S, t, pj);
    detail::swap_cols(V, t, pj);

    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (S(i, t) == 0) continue;
      Integer q = S(i, t) / S(t, t);
      detail::add_row(S, i, t, -q);
      detail::add_row(U, i, t, -q);
      if (S(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (S(t, j) == 0) continue;
      Integer q = S(t, j) / S(t, t);
      detail::add_col(S, j, t, -q);
      detail::add_col(V, j, t, -q);
      if (S(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // remainders shrink the pivot; repeat

    // divisibility fix-up: pivot must divide the whole trailing block
    bool fixed = true;
    for (std::size_t i = t + 1; i < m && fixed; ++i)
      for (std::size_t j = t + 1; j < n && fixed; ++j)
        if (S(i, j) % S(t, t) != 0) {
          detail::add_col(S, t, j, Integer(1));
          detail::add_col(V, t, j, Integer(1));
          fixed = false;
        }
    if (!fixed) continue;

    if (S(t, t) < 0) {
      detail::negate_row(S, t);
      detail::negate_row(U, t);
    }
    ++t;
  }
  return {std::move(U), std::move(S), std::move(V)};
}

// column-style Hermite normal form: returns A*V for unimodular V, canonical
// per column lattice (transposed row echelon with positive pivots and reduced
// off-pivot entries). Only needed for full-column-rank inputs.
inline IMat hnf_cols(const IMat& a) {
  IMat h = a.transposed();  // row HNF of the transpose
  std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd the column below r into the pivot slot
    while (true) {
      std::size_t p = rows;
      Integer best = 0;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Integer v = iabs(h(i, c));
        if (p == rows || v < best) {
          p = i;
          best = v;
        }
      }
      if (p == rows) break;  // column zero below r
      detail::swap_rows(h, r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(r, c);
        detail::add_row(h, i, r, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) detail::negate_row(h, r);
    for (std::size_t i = 0; i < r; ++i) {  // reduce entries above the pivot
      Integer q = h(i, c) / h(r, c);
      if (h(i, c) % h(r, c) != 0 && h(i, c) < 0) q -= 1;  // floor division
      detail::add_row(h, i, r, -q);
    }
    ++r;
  }
  IMat full = h.transposed();
  // keep the leading nonzero columns (r of them)
  IMat out(full.rows(), r);
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) out(i, j) = full(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// torsion points of (Q/Z)^n

struct TorsionPoint {
  QVec coords;  // each reduced into [0,1)

  TorsionPoint() = default;
  explicit TorsionPoint(QVec c) : coords(std::move(c)) {
    for (auto& x : coords) x = mod1(x);
  }
  static TorsionPoint zero(std::size_t n) { return TorsionPoint(QVec(n, Rational(0))); }

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const {
    for (const auto& x : coords)
      if (x != 0) return false;
    return true;
  }
  friend bool operator==(const TorsionPoint& a, const TorsionPoint& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const TorsionPoint& a, const TorsionPoint& b) {
    return a.coords < b.coords;
  }
  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
      os << (i ? "," : "") << rational_str(coords[i]);
    os << ")";
    return os.str();
  }
};

// All b with M*b == a (mod Z^n), exactly |det M| of them, sorted.
// Solved through the Smith form: with U M V = S, set c = V^{-1} b; then
// S c == U a, so c_i = ((Ua)_i + t_i)/d_i with t_i ranging mod d_i.
inline std::vector<TorsionPoint> torsion_fiber(const IMat& m, const TorsionPoint& a) {
  require(m.rows() == m.cols(), errc::dimension_mismatch, "torsion_fiber: square matrix required");
  std::size_t n = m.rows();
  require(a.dim() == n, errc::dimension_mismatch, "torsion_fiber: point dimension mismatch");
  Integer det = det_int(m);
  require(det != 0, errc::singular, "torsion_fiber: singular matrix");

  SNFDecomposition d = snf(m);
  QVec ua = to_qmat(d.U).apply(a.coords);
  std::vector<Integer> divisors(n);
  for (std::size_t i = 0; i < n; ++i) divisors[i] = d.S(i, i);

  QMat vq = to_qmat(d.V);
  std::vector<TorsionPoint> out;
  std::vector<Integer> t(n, 0);
  while (true) {
    QVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (ua[i] + Rational(t[i])) / Rational(divisors[i]);
    out.emplace_back(vq.apply(c));
    // odometer over the invariant-factor box
    std::size_t k = 0;
    while (k < n) {
      t[k] += 1;
      if (t[k] < divisors[k]) break;
      t[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    require(!(out[i] == out[i - 1]), errc::internal, "torsion_fiber: duplicate fiber point");
  require(Integer(out.size()) == iabs(det), errc::internal, "torsion_fiber: wrong fiber size");
  return out;
}

// ---------------------------------------------------------------------------
// open-hemisphere feasibility by exact Fourier-Motzkin on { v . m >= 1 }
// (scale invariance of the rays makes "> 0" and ">= 1" equivalent)

namespace detail {

struct Ineq {
  QVec c;      // coefficients
  Rational b;  // meaning  c . v >= b
};

}  // namespace detail

inline std::optional<QVec> hemisphere_witness(const std::vector<IVec>& rays) {
  require(!rays.empty(), errc::bad_input, "hemisphere_witness: empty tuple");
  std::size_t n = rays[0].size();
  std::vector<detail::Ineq> sys;
  for (const auto& r : rays) {
    require(!is_zero_vec(r), errc::zero_vector, "hemisphere_witness: zero ray");
    require(r.size() == n, errc::dimension_mismatch, "hemisphere_witness: mixed dimensions");
    sys.push_back({to_qvec(r), Rational(1)});
  }

  // eliminate v_{n-1}, ..., v_0, remembering each stage for back-substitution
  std::vector<std::vector<detail::Ineq>> stages;
  for (std::size_t var = n; var-- > 0;) {
    stages.push_back(sys);
    std::vector<detail::Ineq> lower, upper, rest;
    for (const auto& q : sys) {
      if (q.c[var] > 0)
        lower.push_back(q);
      else if (q.c[var] < 0)
        upper.push_back(q);
      else
        rest.push_back(q);
    }
    std::vector<detail::Ineq> next = rest;
    for (const auto& lo : lower)
      for (const auto& hi : upper) {
        // (b_lo - L)/c_lo <= v <= (b_hi - H)/c_hi  combines to one inequality
        detail::Ineq q;
        q.c.assign(n, Rational(0));
        Rational a = lo.c[var], bneg = -hi.c[var];  // a, bneg > 0
        for (std::size_t j = 0; j < n; ++j) q.c[j] = bneg * lo.c[j] + a * hi.c[j];
        q.c[var] = 0;
        q.b = bneg * lo.b + a * hi.b;
        next.push_back(q);
      }
    // prune and detect contradictions among variable-free rows
    std::vector<detail::Ineq> pruned;
    for (auto& q : next) {
      bool allzero = true;
      for (const auto& x : q.c)
        if (x != 0) {
          allzero = false;
          break;
        }
      if (allzero) {
        if (q.b > 0) return std::nullopt;  // 0 >= b > 0: infeasible
        continue;
      }
      pruned.push_back(std::move(q));
    }
    sys = std::move(pruned);
  }

  // back-substitute deterministically: midpoint of the allowed interval,
  // or bound +/- 1 when one-sided, or 0 when unconstrained
  QVec v(n, Rational(0));
  for (std::size_t var = 0; var < n; ++var) {
    const auto& stage = stages[n - 1 - var];
    bool has_lo = false, has_hi = false;
    Rational lo = 0, hi = 0;
    for (const auto& q : stage) {
      if (q.c[var] == 0) continue;
      Rational rest = q.b;
      for (std::size_t j = 0; j < n; ++j)
        if (j != var) rest -= q.c[j] * v[j];
      Rational bound = rest / q.c[var];
      if (q.c[var] > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      v[var] = (lo + hi) / 2;
    else if (has_lo)
      v[var] = lo + 1;
    else if (has_hi)
      v[var] = hi - 1;
  }

  for (const auto& r : rays)
    require(dot(v, to_qvec(r)) >= 1, errc::internal, "hemisphere witness failed recheck");
  return v;
}

inline bool is_acyclic(const std::vector<IVec>& rays) {
  return hemisphere_witness(rays).has_value();
}

}  // namespace torsym
