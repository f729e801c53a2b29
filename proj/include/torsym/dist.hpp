#pragma once

#include <utility>
#include <vector>

#include "torsym/ksym.hpp"
#include "torsym/regulator.hpp"

namespace torsym {

// Locally constant distribution attached to a trace-fixed element: the box
// a + Z^n evaluates to the torsion translate of the source. Trace-fixedness
// is witnessed syntactically at a = 2, 3, which pins it for the untwisted
// sources this module accepts.
struct LCDistribution {
  KElement source;

  explicit LCDistribution(KElement s) : source(std::move(s)) {
    require(source.all_square(), errc::non_square_term,
            "distribution source: all terms must be square");
    for (const auto& [k, c] : source.terms())
      for (const auto& t : k.twists)
        require(t == 0, errc::bad_input, "distribution source: terms must be untwisted");
    require(trace(Integer(2), source) == source && trace(Integer(3), source) == source,
            errc::internal, "distribution source: not trace-fixed");
  }
};

inline KElement dist_value(const LCDistribution& d, const TorsionPoint& a) {
  return torsion_translate(a, d.source);
}

struct DistReport {
  bool equal = false;
  RegulatorReport report;
};

// The relation mu(a + Z^n) = sum_{a'} mu(a' + k Z^n) compares box values that
// live at two isogeny levels; at the level of d log coefficients the
// identification along [k] reads
//   eval(sum over k b == a of t_b-values, z) = k^n * eval(t_a-value, z^k).
// That is the Strict comparison performed here, sample by sample.
inline DistReport verify_distribution(const LCDistribution& d, const TorsionPoint& a,
                                      long long k, const SamplePlan& plan) {
  require(k >= 2, errc::domain_error, "verify_distribution: k >= 2");
  std::size_t n = d.source.dim();
  require(a.dim() == n, errc::dimension_mismatch, "verify_distribution: point dimension");

  KElement coarse = dist_value(d, a);
  IMat k_id(n, n);
  for (std::size_t i = 0; i < n; ++i) k_id(i, i) = k;
  KElement fine = KElement::zero(n);
  for (const auto& b : torsion_fiber(k_id, a)) fine += dist_value(d, b);

  double margin = plan.singular_margin;
  RegulatorReport rep = compare_sampled(
      n,
      [&](const CVec& z) {
        CVec zk(n);
        for (std::size_t i = 0; i < n; ++i) {
          Cplx p(Real(1), Real(0));
          for (long long s = 0; s < k; ++s) p *= z[i];
          zk[i] = p;
        }
        Cplx lhs = eval(fine, z, margin);
        Real kn(1);
        for (std::size_t i = 0; i < n; ++i) kn *= static_cast<int>(k);
        Cplx rhs = Cplx(kn) * eval(coarse, zk, margin);
        return std::make_pair(lhs, rhs);
      },
      plan, CompareMode::strict, "dist");
  return {rep.verdict == Verdict::equal, std::move(rep)};
}

// ---------------------------------------------------------------------------
// torsion specialization

// {1 - e^{2 pi i b_1}, ..., 1 - e^{2 pi i b_n}} with a rational coefficient;
// entries keep their slot order
struct CycloSymbol {
  Rational coeff;
  QVec entries;  // each in (0,1)

  friend bool operator<(const CycloSymbol& a, const CycloSymbol& b) {
    if (a.entries != b.entries) return a.entries < b.entries;
    return a.coeff < b.coeff;
  }
  friend bool operator==(const CycloSymbol& a, const CycloSymbol& b) {
    return a.coeff == b.coeff && a.entries == b.entries;
  }
};

// x^*(M_*{...}) = sum over the fiber M b == x of the twisted symbol values;
// any slot landing on the identity section is a bad hyperplane.
inline std::vector<CycloSymbol> specialize(const KElement& e, const TorsionPoint& x) {
  require(e.orient() == 0, errc::orientation_present,
          "specialize: orientation class does not specialize to torsion");
  require(x.dim() == e.dim(), errc::dimension_mismatch, "specialize: dimension mismatch");
  std::vector<CycloSymbol> out;
  std::size_t term_index = 0;
  for (const auto& [key, c] : e.terms()) {
    require(key.map.rows() == key.map.cols(), errc::non_square_term,
            "specialize: non-square term");
    for (const auto& b : torsion_fiber(key.map, x)) {
      QVec entries(key.twists.size());
      for (std::size_t i = 0; i < key.twists.size(); ++i) {
        entries[i] = mod1(key.twists[i] + b.coords[i]);
        require(entries[i] != 0, errc::bad_hyperplane,
                "specialize: term " + std::to_string(term_index) + " slot " +
                    std::to_string(i + 1) + " lands on the bad hyperplane z = 1");
      }
      out.push_back({c, std::move(entries)});
    }
    ++term_index;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// n = 1 cyclotomic shadow: prod over k b' == b of (1 - e^{2 pi i b'}) equals
// 1 - e^{2 pi i b}

struct CycloReport {
  bool pass = false;
  double residual = 0.0;
  std::string residual_str;
  std::string product_str, target_str;
};

inline CycloReport cyclo_norm_check(const Rational& b, long long k, unsigned precision_bits,
                                    double tolerance = 1e-12) {
  require(k >= 2, errc::domain_error, "cyclo_norm_check: k >= 2");
  Rational b0 = mod1(b);
  require(b0 != 0, errc::bad_hyperplane, "cyclo_norm_check: fiber contains the identity section");
  PrecisionGuard guard(precision_bits);
  Cplx prod(Real(1), Real(0));
  for (long long j = 0; j < k; ++j) {
    Rational bp = mod1((b0 + Rational(j)) / Rational(k));
    require(bp != 0, errc::bad_hyperplane, "cyclo_norm_check: fiber contains the identity section");
    prod *= Cplx(Real(1), Real(0)) - unit_root(bp);
  }
  Cplx target = Cplx(Real(1), Real(0)) - unit_root(b0);
  Real res = abs_c(prod - target);
  CycloReport rep;
  rep.residual = static_cast<double>(res);
  rep.residual_str = real_str(res);
  rep.product_str = real_str(prod.re) + (prod.im < 0 ? "" : "+") + real_str(prod.im) + "i";
  rep.target_str = real_str(target.re) + (target.im < 0 ? "" : "+") + real_str(target.im) + "i";
  rep.pass = res < Real(tolerance);
  return rep;
}

}  // namespace torsym
