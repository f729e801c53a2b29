#pragma once

#include <string>
#include <vector>

#include "torsym/chains.hpp"
#include "torsym/cocycle.hpp"
#include "torsym/json_io.hpp"
#include "torsym/rng.hpp"

namespace torsym {

// Seed-controlled instance generation for the randomized verification
// batches. Entry bounds and determinant caps keep the numeric fibers small;
// resampling on failure is part of the scheme.

inline IMat random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long long bound) {
  IMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.int_in(-bound, bound);
  return m;
}

// product of elementary shears, swaps and sign flips; det is +-1 and entries
// stay within the bound (growing steps are skipped)
inline IMat random_unimodular(Rng& rng, std::size_t n, int ops, long long bound) {
  IMat m = IMat::identity(n);
  for (int step = 0; step < ops; ++step) {
    IMat e = IMat::identity(n);
    std::size_t kind = n >= 2 ? rng.below(4) : 3;
    if (kind <= 1 && n >= 2) {
      std::size_t i = rng.below(n), j = rng.below(n - 1);
      if (j >= i) ++j;
      e(i, j) = rng.flip() ? 1 : -1;
    } else if (kind == 2 && n >= 2) {
      std::size_t i = rng.below(n), j = rng.below(n - 1);
      if (j >= i) ++j;
      e(i, i) = 0;
      e(j, j) = 0;
      e(i, j) = 1;
      e(j, i) = 1;
    } else {
      std::size_t i = rng.below(n);
      e(i, i) = -1;
    }
    IMat cand = m * e;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (iabs(cand(i, j)) > bound) ok = false;
    if (ok) m = cand;
  }
  return m;
}

struct StellarSpec {
  std::vector<IVec> base;
  std::size_t r;
  IVec m;
};

// independent base rays with a capped determinant plus an interior point of
// the cone over the first r of them; the interior combination makes the
// hemisphere precondition automatic
inline StellarSpec random_stellar(Rng& rng, std::size_t n) {
  long long entry_bound = n <= 2 ? 10 : (n == 3 ? 4 : 2);
  long long det_cap = n <= 2 ? 60 : (n == 3 ? 40 : 24);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    IMat base = random_int_matrix(rng, n, n, entry_bound);
    Integer det = det_int(base);
    if (det == 0 || iabs(det) > det_cap) continue;
    std::size_t r = 2 + rng.below(n - 1);
    IVec m(n, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      Integer lambda = rng.int_in(1, 2);
      for (std::size_t row = 0; row < n; ++row) m[row] += lambda * base(row, i);
    }
    std::vector<IVec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(base.col(j));
    return {std::move(cols), r, std::move(m)};
  }
  fail(errc::internal, "random_stellar: generation stalled");
}

inline bool minors_full_check(const IMat& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (det_int(m.drop_col(j)) == 0) return false;
  return true;
}

// n x (n+1) acyclic configuration with all maximal minors nonzero: an
// invertible block plus a strictly positive combination, columns shuffled
inline IMat random_acyclic_config(Rng& rng, std::size_t n) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    IMat base = random_int_matrix(rng, n, n, 5);
    if (det_int(base) == 0) continue;
    IVec last(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      Integer lambda = rng.int_in(1, 3);
      for (std::size_t row = 0; row < n; ++row) last[row] += lambda * base(row, i);
    }
    std::vector<IVec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(base.col(j));
    cols.push_back(std::move(last));
    for (std::size_t j = cols.size(); j-- > 1;) std::swap(cols[j], cols[rng.below(j + 1)]);
    IMat m = IMat::from_cols(n, cols);
    if (!minors_full_check(m)) continue;  // lambda choices can cancel a minor only if unlucky
    return m;
  }
  fail(errc::internal, "random_acyclic_config: generation stalled");
}

// total |det| over the terms of an element: the cost driver of a numeric pass
inline Integer fiber_mass(const KElement& e) {
  Integer mass = 0;
  for (const auto& [k, c] : e.terms()) mass += iabs(det_int(k.map));
  return mass;
}

inline json gamma_tuple_json(const GammaTuple& t) {
  json out = json::array();
  for (const auto& g : t) {
    json rows = json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(rational_str(g(i, j)));
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

}  // namespace torsym
