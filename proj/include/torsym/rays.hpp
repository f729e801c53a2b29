#pragma once

#include <optional>
#include <vector>

#include "torsym/latlin.hpp"
#include "torsym/matrix.hpp"

namespace torsym {

// Trichotomy the realization map branches on. Square independent tuples carry
// a determinant sign; non-square independent tuples have no orientation.
enum class TupleKind {
  independent_positive,
  independent_negative,
  independent,  // full rank, not square: no orientation defined
  dependent_acyclic,
  dependent_nonacyclic,
};

struct TupleClass {
  TupleKind kind;
  std::size_t rank;
  std::optional<int> orientation;  // set only for square independent tuples

  bool independent() const {
    return kind == TupleKind::independent_positive || kind == TupleKind::independent_negative ||
           kind == TupleKind::independent;
  }
  bool acyclic() const { return kind != TupleKind::dependent_nonacyclic; }
};

inline std::vector<IVec> primitivize_tuple(const std::vector<IVec>& tuple) {
  std::vector<IVec> out;
  out.reserve(tuple.size());
  for (const auto& v : tuple) out.push_back(primitive(v).ray);
  return out;
}

inline TupleClass classify(const std::vector<IVec>& tuple) {
  require(!tuple.empty(), errc::bad_input, "classify: empty tuple");
  std::size_t n = tuple[0].size();
  for (const auto& v : tuple)
    require(v.size() == n, errc::dimension_mismatch, "classify: mixed ambient dimensions");
  std::vector<IVec> prim = primitivize_tuple(tuple);
  IMat m = IMat::from_cols(n, prim);
  std::size_t rank = rank_exact(m);
  if (rank == prim.size()) {
    if (rank == n) {
      int sgn = sign_of(det_int(m));
      return {sgn > 0 ? TupleKind::independent_positive : TupleKind::independent_negative, rank,
              sgn};
    }
    return {TupleKind::independent, rank, std::nullopt};
  }
  if (is_acyclic(prim)) return {TupleKind::dependent_acyclic, rank, std::nullopt};
  return {TupleKind::dependent_nonacyclic, rank, std::nullopt};
}

// sign of det of the column matrix; square full-rank tuples only
inline int orientation(const std::vector<IVec>& tuple) {
  require(!tuple.empty(), errc::bad_input, "orientation: empty tuple");
  std::size_t n = tuple[0].size();
  require(tuple.size() == n, errc::not_full_rank, "orientation: tuple not square");
  IMat m = IMat::from_cols(n, primitivize_tuple(tuple));
  Integer d = det_int(m);
  require(d != 0, errc::not_full_rank, "orientation: rank-deficient tuple");
  return sign_of(d);
}

inline const char* tuple_kind_name(TupleKind k) {
  switch (k) {
    case TupleKind::independent_positive: return "independent_positive";
    case TupleKind::independent_negative: return "independent_negative";
    case TupleKind::independent: return "independent";
    case TupleKind::dependent_acyclic: return "dependent_acyclic";
    case TupleKind::dependent_nonacyclic: return "dependent_nonacyclic";
  }
  return "unknown";
}

}  // namespace torsym
