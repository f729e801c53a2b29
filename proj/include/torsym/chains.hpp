#pragma once

#include <map>
#include <utility>
#include <vector>

#include "torsym/ksym.hpp"
#include "torsym/rays.hpp"

namespace torsym {

// Ordered tuple of rays spanning a geodesic simplex; the vertex order carries
// the orientation, there is no separate sign field. Tuples longer than the
// ambient dimension are allowed (they are necessarily dependent and realize
// through the degenerate branches).
struct SimplexGen {
  std::size_t dim;                 // ambient n
  std::vector<IVec> vertices;      // k vectors of length n

  SimplexGen(std::size_t n, std::vector<IVec> vs) : dim(n), vertices(std::move(vs)) {
    require(!vertices.empty(), errc::bad_input, "simplex: need at least one vertex");
    for (const auto& v : vertices)
      require(v.size() == dim, errc::dimension_mismatch, "simplex: vertex dimension mismatch");
  }
};

// Realization on generators: independent tuples map to the pushforward
// generator of their column matrix, dependent acyclic tuples to zero, and
// dependent non-acyclic tuples have no canonical value.
inline KElement realize(const SimplexGen& s) {
  TupleClass cls = classify(s.vertices);
  if (cls.independent()) {
    IMat m = IMat::from_cols(s.dim, s.vertices);
    return from_term(generator_untwisted(m));
  }
  if (cls.kind == TupleKind::dependent_acyclic) return KElement::zero(s.dim);
  fail(errc::extension_dependent,
       "realize: dependent non-acyclic tuple has no canonical realization");
}

// ---------------------------------------------------------------------------
// formal Gersten-degree bookkeeping (tame-symbol shadow)

// A realized term together with the stratum it lives on (canonical basis of
// the saturation of its column span). Lower-degree terms are compared only
// formally; no regulator is attached to them.
struct GerstenKey {
  IMat map;
  std::vector<Rational> twists;
  IMat stratum;

  friend bool operator<(const GerstenKey& a, const GerstenKey& b) {
    if (!(a.map == b.map)) return a.map < b.map;
    if (a.twists != b.twists) return a.twists < b.twists;
    return a.stratum < b.stratum;
  }
};

using GerstenChain = std::map<GerstenKey, Rational>;

// canonical basis of (column span of m) intersected with Z^n: the first
// rank(m) columns of U^{-1} for U M V = S, put into column HNF
inline IMat span_stratum(const IMat& m) {
  SNFDecomposition d = snf(m);
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (d.S(i, i) != 0) ++r;
  IMat uinv = adjugate(d.U);
  if (det_int(d.U) < 0)
    for (std::size_t i = 0; i < uinv.rows(); ++i)
      for (std::size_t j = 0; j < uinv.cols(); ++j) uinv(i, j) = -uinv(i, j);
  IMat basis(m.rows(), r);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) basis(i, j) = uinv(i, j);
  return hnf_cols(basis);
}

inline void chain_add(GerstenChain& chain, const SymbolTerm& t, const Rational& c) {
  if (c == 0) return;
  GerstenKey key{t.map, t.twists, span_stratum(t.map)};
  auto it = chain.find(key);
  if (it == chain.end())
    chain.emplace(std::move(key), c * t.coeff);
  else {
    it->second += c * t.coeff;
    if (it->second == 0) chain.erase(it);
  }
}

// alternating vertex-dropping boundary: (-1)^{i-1} for dropping vertex i
// (1-indexed), mirroring the tame symbol of {1-z_1, ..., 1-z_k}
inline GerstenChain formal_boundary(const SimplexGen& s) {
  require(s.vertices.size() >= 2, errc::bad_input, "formal_boundary: need k >= 2");
  TupleClass cls = classify(s.vertices);
  require(cls.independent(), errc::extension_dependent,
          "formal_boundary: vertices must be independent");
  GerstenChain chain;
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    std::vector<IVec> sub;
    for (std::size_t j = 0; j < s.vertices.size(); ++j)
      if (j != i) sub.push_back(s.vertices[j]);
    IMat m = IMat::from_cols(s.dim, sub);
    Rational sign = (i % 2 == 0) ? 1 : -1;
    chain_add(chain, generator_untwisted(m), sign);
  }
  return chain;
}

// boundary on formal chains: drop each symbol slot with alternating sign
inline GerstenChain gersten_boundary(const GerstenChain& chain) {
  GerstenChain out;
  for (const auto& [key, coeff] : chain) {
    if (key.map.cols() < 2) continue;
    for (std::size_t i = 0; i < key.map.cols(); ++i) {
      IMat m = key.map.drop_col(i);
      std::vector<Rational> tw;
      for (std::size_t j = 0; j < key.twists.size(); ++j)
        if (j != i) tw.push_back(key.twists[j]);
      Rational sign = (i % 2 == 0) ? 1 : -1;
      SymbolTerm t{Rational(1), std::move(m), std::move(tw)};
      chain_add(out, t, sign * coeff);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// stellar subdivision instances

struct StellarPair {
  KElement lhs, rhs;
};

// base: k independent rays; m lies in the span of the first r of them and in
// a common open hemisphere with them. lhs realizes the base simplex, rhs the
// r replacement simplices.
inline StellarPair stellar_instance(std::size_t n, const std::vector<IVec>& base, std::size_t r,
                                    const IVec& m) {
  require(r >= 2 && r <= base.size(), errc::bad_input, "stellar: need 2 <= r <= k");
  SimplexGen lhs_simplex(n, base);
  TupleClass cls = classify(base);
  require(cls.independent(), errc::not_full_rank, "stellar: base rays must be independent");

  // m in span(base_1..base_r)?
  std::vector<IVec> head(base.begin(), base.begin() + static_cast<long>(r));
  IMat span = IMat::from_cols(n, head);
  IMat span_ext = IMat::from_cols(n, [&] {
    std::vector<IVec> cols = head;
    cols.push_back(m);
    return cols;
  }());
  require(rank_exact(span_ext) == rank_exact(span), errc::not_in_span,
          "stellar: m is not in the span of the first r base rays");

  std::vector<IVec> hemi = head;
  hemi.push_back(m);
  require(is_acyclic(hemi), errc::not_acyclic,
          "stellar: (base_1..base_r, m) does not lie in an open hemisphere");

  KElement lhs = realize(lhs_simplex);
  KElement rhs = KElement::zero(n);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<IVec> verts = base;
    verts[i] = m;
    rhs += realize(SimplexGen(n, verts));
  }
  return {std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// orthant decomposition of the fundamental class

// Sum over sign patterns I of the simplicial orthant (I_1 e_1, ..., I_n e_n),
// reordered by a fixed permutation so each summand is positively oriented:
// identity when the pattern is already positive, swap of the first two
// vertices otherwise. For n = 1 there is no odd permutation of one letter, so
// the negative orthant enters with formal coefficient -1.
inline KElement orthant_fundamental(std::size_t n) {
  require(n >= 1, errc::bad_input, "orthant_fundamental: n >= 1");
  KElement total(n);
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<IVec> verts;
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      IVec e(n, Integer(0));
      bool neg = (mask >> i) & 1u;
      e[i] = neg ? -1 : 1;
      if (neg) sign = -sign;
      verts.push_back(std::move(e));
    }
    if (sign > 0) {
      total += realize(SimplexGen(n, verts));
    } else if (n >= 2) {
      std::swap(verts[0], verts[1]);
      total += realize(SimplexGen(n, verts));
    } else {
      total += Rational(-1) * realize(SimplexGen(n, verts));
    }
  }
  return total;
}

}  // namespace torsym
