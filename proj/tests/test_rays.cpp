#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "torsym/rays.hpp"
#include "torsym/rng.hpp"
#include "torsym/suite_random.hpp"

using namespace torsym;

namespace {
IVec e(std::size_t n, std::size_t i, long long s = 1) {
  IVec v(n, Integer(0));
  v[i] = s;
  return v;
}
}  // namespace

TEST_CASE("classify frozen examples") {
  auto c = classify({e(2, 0), e(2, 1)});
  CHECK(c.kind == TupleKind::independent_positive);
  CHECK(c.rank == 2);
  CHECK(c.orientation == 1);

  c = classify({e(2, 1), e(2, 0)});
  CHECK(c.kind == TupleKind::independent_negative);
  CHECK(c.orientation == -1);

  c = classify({e(2, 0), e(2, 1), IVec{Integer(1), Integer(1)}});
  CHECK(c.kind == TupleKind::dependent_acyclic);
  CHECK(c.rank == 2);

  c = classify({e(2, 0), e(2, 0, -1)});
  CHECK(c.kind == TupleKind::dependent_nonacyclic);

  // non-square independent: no orientation
  c = classify({e(3, 0)});
  CHECK(c.kind == TupleKind::independent);
  CHECK_FALSE(c.orientation.has_value());

  CHECK_THROWS_AS(classify({e(2, 0), e(3, 1)}), error);
}

TEST_CASE("classify is invariant under positive rescaling") {
  Rng rng(23, "rays/rescale");
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + rng.below(2);
    std::vector<IVec> tuple;
    bool zero = false;
    for (std::size_t j = 0; j < n; ++j) {
      IVec v;
      bool z = true;
      for (std::size_t i = 0; i < n; ++i) {
        v.push_back(rng.int_in(-5, 5));
        if (v.back() != 0) z = false;
      }
      zero = zero || z;
      tuple.push_back(std::move(v));
    }
    if (zero) continue;
    std::vector<IVec> scaled = tuple;
    for (auto& v : scaled) {
      Integer s(rng.int_in(1, 7));
      for (auto& x : v) x *= s;
    }
    TupleClass a = classify(tuple), b = classify(scaled);
    CHECK(a.kind == b.kind);
    CHECK(a.rank == b.rank);
  }
}

TEST_CASE("unimodular action: orientation follows the determinant sign") {
  Rng rng(23, "rays/unimod");
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng.below(2);
    IMat g = random_unimodular(rng, n, 6, 12);
    std::vector<IVec> tuple;
    for (std::size_t j = 0; j < n; ++j) tuple.push_back(e(n, j));
    // apply g to each ray
    std::vector<IVec> moved;
    for (const auto& v : tuple) {
      IVec w(n, Integer(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) w[i] += g(i, k) * v[k];
      moved.push_back(std::move(w));
    }
    int before = orientation(tuple);
    int after = orientation(moved);
    CHECK(after == before * sign_of(det_int(g)));
  }
}

TEST_CASE("trichotomy agrees with the hemisphere oracle on dependent tuples") {
  Rng rng(23, "rays/tri");
  int dep_seen = 0;
  for (int trial = 0; trial < 400 && dep_seen < 40; ++trial) {
    std::size_t n = 2;
    std::vector<IVec> tuple;
    bool zero = false;
    for (std::size_t j = 0; j < 3; ++j) {
      IVec v{Integer(rng.int_in(-3, 3)), Integer(rng.int_in(-3, 3))};
      if (v[0] == 0 && v[1] == 0) zero = true;
      tuple.push_back(std::move(v));
    }
    if (zero) continue;
    TupleClass c = classify(tuple);
    if (!c.independent()) {
      ++dep_seen;
      CHECK((c.kind == TupleKind::dependent_acyclic) ==
            oracle::acyclic_oracle(primitivize_tuple(tuple)));
    }
  }
  CHECK(dep_seen >= 40);
}

TEST_CASE("orientation frozen examples and errors") {
  CHECK(orientation({e(3, 0), e(3, 1), e(3, 2)}) == 1);
  CHECK(orientation({e(3, 1), e(3, 0), e(3, 2)}) == -1);
  CHECK(orientation({e(3, 0, -1), e(3, 1), e(3, 2)}) == -1);
  CHECK_THROWS_AS(orientation({e(2, 0)}), error);                     // not square
  CHECK_THROWS_AS(orientation({e(2, 0), e(2, 0, 2)}), error);        // rank deficient
}
