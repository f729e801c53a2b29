#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "torsym/latlin.hpp"
#include "torsym/rng.hpp"
#include "torsym/suite_random.hpp"

using namespace torsym;

TEST_CASE("primitive splits content and direction") {
  auto p = primitive({Integer(2), Integer(4)});
  CHECK(p.ray == IVec{Integer(1), Integer(2)});
  CHECK(p.content == 2);

  p = primitive({Integer(-3), Integer(0)});
  CHECK(p.ray == IVec{Integer(-1), Integer(0)});
  CHECK(p.content == 3);

  p = primitive({Integer(6), Integer(10), Integer(15)});
  CHECK(p.ray == IVec{Integer(6), Integer(10), Integer(15)});
  CHECK(p.content == 1);

  CHECK_THROWS_MATCHES(primitive({Integer(0), Integer(0)}), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("zero_vector")));
}

TEST_CASE("primitive is idempotent on its output") {
  Rng rng(19, "latlin/prim");
  for (int trial = 0; trial < 200; ++trial) {
    IVec v;
    bool zero = true;
    for (int i = 0; i < 4; ++i) {
      v.push_back(rng.int_in(-40, 40));
      if (v.back() != 0) zero = false;
    }
    if (zero) continue;
    auto p = primitive(v);
    auto q = primitive(p.ray);
    CHECK(q.ray == p.ray);
    CHECK(q.content == 1);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(p.content * p.ray[i] == v[i]);
  }
}

TEST_CASE("primitive_rational scales to an integer ray") {
  auto p = primitive_rational({Rational(1, 2), Rational(3, 4)});
  CHECK(p.ray == IVec{Integer(2), Integer(3)});
  CHECK(p.content == Rational(1, 4));
}

TEST_CASE("snf frozen examples") {
  auto d = snf(IMat::identity(2));
  CHECK(d.S == IMat::identity(2));

  // diag(2,3): invariant factors 1 | 6 (hand elimination oracle)
  d = snf(IMat{{Integer(2), Integer(0)}, {Integer(0), Integer(3)}});
  CHECK(d.S(0, 0) == 1);
  CHECK(d.S(1, 1) == 6);

  d = snf(IMat{{Integer(2), Integer(0)}, {Integer(0), Integer(2)}});
  CHECK(d.S(0, 0) == 2);
  CHECK(d.S(1, 1) == 2);
}

TEST_CASE("snf round-trip, divisibility chain, unimodularity") {
  Rng rng(19, "latlin/snf");
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
    IMat a = random_int_matrix(rng, rows, cols, 9);
    SNFDecomposition d = snf(a);
    CHECK((d.U * a * d.V) == d.S);
    CHECK(iabs(det_int(d.U)) == 1);
    CHECK(iabs(det_int(d.V)) == 1);
    for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i) {
      CHECK(d.S(i, i) >= 0);
      if (d.S(i, i) != 0) CHECK(d.S(i + 1, i + 1) % d.S(i, i) == 0);
      if (d.S(i, i) == 0) CHECK(d.S(i + 1, i + 1) == 0);
    }
    // fixed pivot rule: deterministic output
    SNFDecomposition d2 = snf(a);
    CHECK(d2.U == d.U);
    CHECK(d2.S == d.S);
    CHECK(d2.V == d.V);
  }
}

TEST_CASE("torsion_fiber frozen examples") {
  // [2] over 0: the square-root twists
  auto f = torsion_fiber(IMat{{Integer(2)}}, TorsionPoint::zero(1));
  REQUIRE(f.size() == 2);
  CHECK(f[0].coords == QVec{Rational(0)});
  CHECK(f[1].coords == QVec{Rational(1, 2)});

  // 2*I_2 over (1/2, 0): grid oracle values
  IMat m2{{Integer(2), Integer(0)}, {Integer(0), Integer(2)}};
  f = torsion_fiber(m2, TorsionPoint(QVec{Rational(1, 2), Rational(0)}));
  std::vector<TorsionPoint> expect = {
      TorsionPoint(QVec{Rational(1, 4), Rational(0)}),
      TorsionPoint(QVec{Rational(1, 4), Rational(1, 2)}),
      TorsionPoint(QVec{Rational(3, 4), Rational(0)}),
      TorsionPoint(QVec{Rational(3, 4), Rational(1, 2)}),
  };
  CHECK(f == expect);
  CHECK(f == oracle::fiber_bruteforce(m2, TorsionPoint(QVec{Rational(1, 2), Rational(0)})));

  // [[1,1],[0,2]] over 0: two points including the origin
  IMat m3{{Integer(1), Integer(1)}, {Integer(0), Integer(2)}};
  f = torsion_fiber(m3, TorsionPoint::zero(2));
  REQUIRE(f.size() == 2);
  CHECK(f[0].is_zero());
  CHECK(f == oracle::fiber_bruteforce(m3, TorsionPoint::zero(2)));

  CHECK_THROWS_AS(torsion_fiber(IMat{{Integer(1), Integer(1)}, {Integer(1), Integer(1)}},
                                TorsionPoint::zero(2)),
                  error);
}

TEST_CASE("torsion_fiber: size |det M| and exact membership vs brute force") {
  Rng rng(19, "latlin/fiber");
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng.below(3);
    IMat m = random_int_matrix(rng, n, n, 3);
    Integer det = det_int(m);
    if (det == 0 || iabs(det) > 8) continue;
    QVec a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = Rational(rng.int_in(0, 3), 4);
    TorsionPoint pt(a);
    auto f = torsion_fiber(m, pt);
    CHECK(Integer(f.size()) == iabs(det));
    for (const auto& b : f) {
      QVec mb = to_qmat(m).apply(b.coords);
      for (std::size_t i = 0; i < n; ++i) CHECK(mod1(mb[i] - pt.coords[i]) == 0);
    }
    CHECK(f == oracle::fiber_bruteforce(m, pt));
  }
}

TEST_CASE("hemisphere_witness frozen examples") {
  std::vector<IVec> tri = {{Integer(1), Integer(0)}, {Integer(0), Integer(1)},
                           {Integer(1), Integer(1)}};
  auto w = hemisphere_witness(tri);
  REQUIRE(w.has_value());
  for (const auto& r : tri) CHECK(dot(*w, to_qvec(r)) > 0);

  CHECK_FALSE(hemisphere_witness({{Integer(1), Integer(0)}, {Integer(-1), Integer(0)}}));
  // rays summing to zero: 0 lies in the hull
  CHECK_FALSE(hemisphere_witness(
      {{Integer(1), Integer(0)}, {Integer(0), Integer(1)}, {Integer(-1), Integer(-1)}}));

  CHECK_THROWS_AS(hemisphere_witness({{Integer(0), Integer(0)}}), error);
}

TEST_CASE("hemisphere_witness agrees with the convex-hull oracle") {
  Rng rng(19, "latlin/hemi");
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + rng.below(3);
    std::size_t k = 1 + rng.below(4);
    std::vector<IVec> rays;
    bool bad = false;
    for (std::size_t j = 0; j < k; ++j) {
      IVec v;
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        v.push_back(rng.int_in(-4, 4));
        if (v.back() != 0) zero = false;
      }
      if (zero) bad = true;
      rays.push_back(std::move(v));
    }
    if (bad) continue;
    auto w = hemisphere_witness(rays);
    CHECK(w.has_value() == oracle::acyclic_oracle(rays));
    if (w)
      for (const auto& r : rays) CHECK(dot(*w, to_qvec(r)) >= 1);
  }
}

TEST_CASE("hnf_cols is canonical per column lattice") {
  // two generating sets of the lattice {(x,y): x = y mod 2}
  IMat g1{{Integer(1), Integer(0)}, {Integer(1), Integer(2)}};
  IMat g2{{Integer(1), Integer(2)}, {Integer(-1), Integer(0)}};
  CHECK(hnf_cols(g1) == hnf_cols(g2));
  // and HNF of the HNF is itself
  CHECK(hnf_cols(hnf_cols(g1)) == hnf_cols(g1));
}
