#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "torsym/latlin.hpp"
#include "torsym/matrix.hpp"

namespace torsym {

inline constexpr std::size_t kDefaultEnumBudget = 1000000;

// a!_p = prod_{k=1}^{a} (p^k - 1)
inline Integer pfactorial(long long a, long long p) {
  Integer out = 1, pk = 1;
  for (long long k = 1; k <= a; ++k) {
    pk *= p;
    out *= pk - 1;
  }
  return out;
}

inline Integer qbinom(long long a, long long b, long long p) {
  require(p >= 2, errc::domain_error, "qbinom: p >= 2");
  require(0 <= b && b <= a, errc::domain_error, "qbinom: need 0 <= b <= a");
  Integer num = pfactorial(a, p);
  Integer den = pfactorial(b, p) * pfactorial(a - b, p);
  require(num % den == 0, errc::internal, "qbinom: non-integral quotient");
  return num / den;
}

// ---------------------------------------------------------------------------
// brute-force subspace enumeration over F_p via reduced row echelon forms

namespace detail {

using FpVec = std::vector<long long>;
using FpMat = std::vector<FpVec>;  // rows

// reduce v against echelon rows (pivots strictly increasing); true if v lies
// in the row span
inline bool in_row_span(FpVec v, const FpMat& rows, const std::vector<std::size_t>& pivots,
                        long long p) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    long long c = v[pivots[r]] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - c * rows[r][j]) % p + p) % p;
  }
  for (long long x : v)
    if (x % p != 0) return false;
  return true;
}

// enumerate all RREF bases of dim-dimensional subspaces of F_p^n in a fixed
// deterministic order, invoking fn(rows, pivot_columns) for each
template <typename F>
void for_each_rref(std::size_t n, std::size_t dim, long long p, std::size_t budget, F&& fn) {
  if (dim == 0) {
    FpMat empty;
    std::vector<std::size_t> pivots;
    fn(empty, pivots);
    return;
  }
  // choose pivot columns
  std::vector<std::size_t> pivots(dim);
  for (std::size_t i = 0; i < dim; ++i) pivots[i] = i;
  std::size_t emitted = 0;
  while (true) {
    // free positions: (r, c) with c > pivots[r], c not a pivot column
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = pivots[r] + 1; c < n; ++c) {
        bool is_pivot = false;
        for (std::size_t s = 0; s < dim; ++s)
          if (pivots[s] == c) is_pivot = true;
        if (!is_pivot) free_pos.emplace_back(r, c);
      }
    std::size_t total = 1;
    for (std::size_t i = 0; i < free_pos.size(); ++i) {
      total *= static_cast<std::size_t>(p);
      require(total <= budget, errc::too_large, "subspace enumeration exceeds budget");
    }
    std::vector<long long> fill(free_pos.size(), 0);
    while (true) {
      FpMat rows(dim, FpVec(n, 0));
      for (std::size_t r = 0; r < dim; ++r) rows[r][pivots[r]] = 1;
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        rows[free_pos[i].first][free_pos[i].second] = fill[i];
      fn(rows, pivots);
      require(++emitted <= budget, errc::too_large, "subspace enumeration exceeds budget");
      std::size_t k = 0;
      while (k < fill.size()) {
        if (++fill[k] < p) break;
        fill[k] = 0;
        ++k;
      }
      if (k == fill.size()) break;
    }
    // next pivot combination (lexicographic)
    std::size_t i = dim;
    while (i-- > 0) {
      if (pivots[i] + (dim - i) < n) {
        ++pivots[i];
        for (std::size_t j = i + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace detail

inline Integer subspace_count(std::size_t n, std::size_t dim, long long p,
                              const std::optional<IVec>& through = std::nullopt,
                              std::size_t budget = kDefaultEnumBudget) {
  require(dim <= n, errc::domain_error, "subspace_count: need dim <= n");
  require(p >= 2 && p <= 7, errc::domain_error, "subspace_count: p in [2,7]");
  detail::FpVec v;
  if (through) {
    require(through->size() == n, errc::dimension_mismatch, "subspace_count: vector length");
    bool nonzero = false;
    for (const auto& x : *through) {
      long long r = static_cast<long long>(((x % p) + p) % p);
      v.push_back(r);
      if (r != 0) nonzero = true;
    }
    require(nonzero, errc::domain_error, "subspace_count: 'through' must be nonzero mod p");
  }
  Integer count = 0;
  detail::for_each_rref(n, dim, p, budget,
                        [&](const detail::FpMat& rows, const std::vector<std::size_t>& pivots) {
                          if (!v.empty() && !detail::in_row_span(v, rows, pivots, p)) return;
                          ++count;
                        });
  return count;
}

// ---------------------------------------------------------------------------
// double-coset representatives and the action on the identity torsion class

// One Hermite-form matrix per sublattice L of Z^n with Z^n/L elementary
// abelian of rank i (columns generate L; L is the preimage of a
// codimension-i subspace of F_p^n). i = 0 is allowed internally and yields
// the identity lattice.
inline std::vector<IMat> coset_reps(std::size_t n, std::size_t i, long long p,
                                    std::size_t budget = kDefaultEnumBudget) {
  require(i <= n, errc::domain_error, "coset_reps: need 0 <= i <= n");
  require(p >= 2 && p <= 7, errc::domain_error, "coset_reps: p in [2,7]");
  std::vector<IMat> reps;
  detail::for_each_rref(
      n, n - i, p, budget,
      [&](const detail::FpMat& rows, const std::vector<std::size_t>&) {
        // generators of L: lifts of the subspace basis plus p Z^n
        std::vector<IVec> cols;
        for (const auto& row : rows) {
          IVec c(n);
          for (std::size_t j = 0; j < n; ++j) c[j] = row[j];
          cols.push_back(std::move(c));
        }
        for (std::size_t j = 0; j < n; ++j) {
          IVec c(n, Integer(0));
          c[j] = p;
          cols.push_back(std::move(c));
        }
        IMat h = hnf_cols(IMat::from_cols(n, cols));
        require(h.cols() == n, errc::internal, "coset rep not full rank");
        // validate double-coset membership: elementary divisors (p,...,p,1,...,1)
        SNFDecomposition d = snf(h);
        for (std::size_t k = 0; k < n; ++k) {
          Integer expect = (k < n - i) ? Integer(1) : Integer(p);
          require(d.S(k, k) == expect, errc::internal,
                  "coset rep has wrong elementary divisors");
        }
        reps.push_back(std::move(h));
      });
  require(Integer(reps.size()) == qbinom(static_cast<long long>(n), static_cast<long long>(i), p),
          errc::internal, "coset rep count does not match the q-binomial");
  return reps;
}

struct TorsionMultiset {
  std::size_t dim = 0;
  long long level = 0;
  std::map<TorsionPoint, Integer> mult;

  friend bool operator==(const TorsionMultiset& a, const TorsionMultiset& b) {
    return a.dim == b.dim && a.level == b.level && a.mult == b.mult;
  }
  std::string str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [pt, m] : mult) {
      os << (first ? "" : ", ") << pt.str() << ":" << m;
      first = false;
    }
    os << "}";
    return os.str();
  }
};

// T_p^{(i)} applied to the identity class: the right-coset invariant of a rep
// is the overlattice alpha^{-1} Z^n, so the sum runs over the Hermite reps of
// the complementary cotype and each contributes the kernel of the monomial
// map B = p * alpha^{-1}, an integer matrix of determinant p^i.
inline TorsionMultiset hecke_on_identity(std::size_t n, std::size_t i, long long p,
                                         std::size_t budget = kDefaultEnumBudget) {
  require(1 <= i && i <= n, errc::domain_error, "hecke_on_identity: need 1 <= i <= n");
  TorsionMultiset out;
  out.dim = n;
  out.level = p;
  for (const auto& alpha : coset_reps(n, n - i, p, budget)) {
    Integer det = det_int(alpha);
    IMat b = adjugate(alpha);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Integer num = Integer(p) * b(r, c);
        require(num % det == 0, errc::non_integral, "p * alpha^{-1} is not integral");
        b(r, c) = num / det;
      }
    std::vector<TorsionPoint> kernel = torsion_fiber(b, TorsionPoint::zero(n));
    require(Integer(kernel.size()) == iabs(det_int(b)), errc::internal,
            "rep kernel size mismatch");
    for (const auto& pt : kernel) out.mult[pt] += 1;
  }
  return out;
}

struct HeckeReport {
  bool pass = false;
  TorsionMultiset lhs;       // computed double-coset action
  TorsionMultiset rhs;       // q-binomial prediction
  Integer identity_mult;     // qbinom(n, i, p)
  Integer nonidentity_mult;  // qbinom(n-1, i-1, p)
};

// Exact multiset form of the Hecke eigenvalue statement: identity multiplicity
// qbinom(n,i,p), every nonzero p-torsion point multiplicity qbinom(n-1,i-1,p).
inline HeckeReport verify_hecke(std::size_t n, std::size_t i, long long p,
                                std::size_t budget = kDefaultEnumBudget) {
  HeckeReport rep;
  rep.identity_mult = qbinom(static_cast<long long>(n), static_cast<long long>(i), p);
  rep.nonidentity_mult =
      qbinom(static_cast<long long>(n) - 1, static_cast<long long>(i) - 1, p);
  rep.lhs = hecke_on_identity(n, i, p, budget);

  rep.rhs.dim = n;
  rep.rhs.level = p;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= static_cast<std::size_t>(p);
    require(total <= budget, errc::too_large, "p-torsion enumeration exceeds budget");
  }
  std::vector<long long> idx(n, 0);
  while (true) {
    QVec coords(n);
    bool zero = true;
    for (std::size_t k = 0; k < n; ++k) {
      coords[k] = Rational(idx[k], p);
      if (idx[k] != 0) zero = false;
    }
    rep.rhs.mult[TorsionPoint(coords)] = zero ? rep.identity_mult : rep.nonidentity_mult;
    std::size_t k = 0;
    while (k < n) {
      if (++idx[k] < p) break;
      idx[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  rep.pass = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace torsym
