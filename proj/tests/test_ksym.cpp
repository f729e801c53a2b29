#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "torsym/ksym.hpp"
#include "torsym/rng.hpp"
#include "torsym/suite_random.hpp"

using namespace torsym;

TEST_CASE("generator normalization frozen examples") {
  // scaled column: content rolls into the (zero) twist
  SymbolTerm t = generator(IMat{{Integer(2)}, {Integer(0)}}, {Rational(0)});
  CHECK(t.map == IMat{{Integer(1)}, {Integer(0)}});
  CHECK(t.twists == std::vector<Rational>{Rational(0)});

  // [2]_* of a twisted slot: twist doubles
  t = generator(IMat{{Integer(2)}}, {Rational(1, 3)});
  CHECK(t.map == IMat{{Integer(1)}});
  CHECK(t.twists == std::vector<Rational>{Rational(2, 3)});

  // identity fixed
  t = generator(IMat::identity(3), std::vector<Rational>(3, Rational(0)));
  CHECK(t.map == IMat::identity(3));

  CHECK_THROWS_AS(generator(IMat{{Integer(1), Integer(2)}, {Integer(1), Integer(2)}},
                            {Rational(0), Rational(0)}),
                  error);  // rank deficient
}

TEST_CASE("normalization is confluent under positive column scaling") {
  // generator(M * diag(c), t) = generator(M, (c_j t_j)) for positive integer c
  Rng rng(29, "ksym/confluence");
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + rng.below(2);
    IMat m = random_int_matrix(rng, n, n, 4);
    if (det_int(m) == 0) continue;
    std::vector<Rational> tw(n);
    for (auto& x : tw) x = Rational(rng.int_in(0, 5), 6);

    IMat scaled = m;
    std::vector<Rational> tw_scaled(n);
    for (std::size_t j = 0; j < n; ++j) {
      Integer c(rng.int_in(1, 4));
      for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= c;
      tw_scaled[j] = mod1(Rational(c) * tw[j]);
    }
    SymbolTerm lhs = generator(scaled, tw);
    SymbolTerm rhs = generator(m, tw_scaled);
    CHECK(lhs.map == rhs.map);
    CHECK(lhs.twists == rhs.twists);
  }
}

TEST_CASE("act frozen examples") {
  KElement e(2);
  e.add_term(generator_untwisted(IMat::identity(2)));
  e.add_orient(Rational(2));

  CHECK(act(QMat::identity(2), e) == e);

  // sign character on the orientation class
  QMat flip = QMat::identity(2);
  flip(1, 1) = -1;
  KElement flipped = act(flip, orientation_element(2, 1));
  CHECK(flipped.orient() == -1);
  CHECK(flipped.terms().empty());

  // unimodular gamma on an untwisted term: map goes to gamma * M verbatim
  IMat g{{Integer(1), Integer(1)}, {Integer(0), Integer(1)}};
  KElement moved = act(g, e);
  REQUIRE(moved.terms().size() == 1);
  CHECK(moved.terms().begin()->first.map == g);
  CHECK(moved.orient() == 2);

  QMat sing(2, 2);
  CHECK_THROWS_AS(act(sing, e), error);
}

TEST_CASE("act is functorial on unimodular matrices") {
  Rng rng(29, "ksym/act");
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + rng.below(2);
    QMat g = to_qmat(random_unimodular(rng, n, 5, 9));
    QMat h = to_qmat(random_unimodular(rng, n, 5, 9));
    KElement e(n);
    IMat m = random_int_matrix(rng, n, n, 3);
    if (det_int(m) == 0) continue;
    std::vector<Rational> tw(n);
    for (auto& x : tw) x = Rational(rng.int_in(0, 3), 4);
    SymbolTerm t = generator(m, tw);
    t.coeff = Rational(rng.int_in(1, 5), rng.int_in(1, 3));
    e.add_term(t);
    e.add_orient(Rational(rng.int_in(-2, 2)));
    CHECK(act(g * h, e) == act(g, act(h, e)));
  }
}

TEST_CASE("trace frozen examples and composition") {
  KElement e(1);
  e.add_term(generator_untwisted(IMat::identity(1)));
  e.add_orient(Rational(1, 2));
  CHECK(trace(Integer(5), e) == e);  // untwisted elements are fixed points

  KElement tw(1);
  SymbolTerm t = generator(IMat::identity(1), {Rational(1, 3)});
  tw.add_term(t);
  KElement t2 = trace(Integer(2), tw);
  CHECK(t2.terms().begin()->first.twists == std::vector<Rational>{Rational(2, 3)});
  KElement t3 = trace(Integer(3), tw);
  CHECK(t3.terms().begin()->first.twists == std::vector<Rational>{Rational(0)});

  // trace(a, trace(b, e)) = trace(ab, e); trace(1) = id
  Rng rng(29, "ksym/trace");
  for (int trial = 0; trial < 40; ++trial) {
    KElement x(2);
    std::vector<Rational> twists{Rational(rng.int_in(0, 11), 12), Rational(rng.int_in(0, 11), 12)};
    x.add_term(generator(IMat::identity(2), twists));
    Integer a(rng.int_in(1, 6)), b(rng.int_in(1, 6));
    CHECK(trace(a, trace(b, x)) == trace(a * b, x));
    CHECK(trace(Integer(1), x) == x);
  }
}

TEST_CASE("torsion_translate frozen examples") {
  // a = 0 on unimodular-map terms: identity
  KElement e(1);
  e.add_term(generator_untwisted(IMat::identity(1)));
  CHECK(torsion_translate(TorsionPoint::zero(1), e) == e);

  // {1-z} translated by 1/3: single fiber point
  KElement t = torsion_translate(TorsionPoint(QVec{Rational(1, 3)}), e);
  REQUIRE(t.terms().size() == 1);
  CHECK(t.terms().begin()->first.twists == std::vector<Rational>{Rational(1, 3)});

  // [2]_*{1-w} translated by 1/2: both fiber twists appear
  KElement p(1);
  SymbolTerm raw{Rational(1), IMat{{Integer(2)}}, {Rational(0)}};
  p.add_term(raw);  // keep the non-primitive column: the fiber has 2 points
  KElement moved = torsion_translate(TorsionPoint(QVec{Rational(1, 2)}), p);
  REQUIRE(moved.terms().size() == 2);
  auto it = moved.terms().begin();
  CHECK(it->first.twists == std::vector<Rational>{Rational(1, 4)});
  CHECK((++it)->first.twists == std::vector<Rational>{Rational(3, 4)});

  // non-square terms are rejected
  KElement ns(2);
  ns.add_term(generator_untwisted(IMat{{Integer(1)}, {Integer(0)}}));
  CHECK_THROWS_AS(torsion_translate(TorsionPoint::zero(2), ns), error);

  // translating the orientation class by a nonzero point is rejected
  KElement orient = orientation_element(1, 1);
  CHECK(torsion_translate(TorsionPoint::zero(1), orient) == orient);
  CHECK_THROWS_AS(torsion_translate(TorsionPoint(QVec{Rational(1, 2)}), orient), error);
}

TEST_CASE("canonical form: addition is associative and commutative") {
  Rng rng(29, "ksym/add");
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<KElement> parts;
    for (int j = 0; j < 4; ++j) {
      KElement e(2);
      IMat m = random_int_matrix(rng, 2, 2, 3);
      if (det_int(m) == 0) m = IMat::identity(2);
      SymbolTerm t = generator_untwisted(m);
      t.coeff = Rational(rng.int_in(-3, 3));
      e.add_term(t);
      e.add_orient(Rational(rng.int_in(-2, 2), 2));
      parts.push_back(e);
    }
    KElement sum1(2), sum2(2);
    for (const auto& p : parts) sum1 += p;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) sum2 += *it;
    CHECK(sum1 == sum2);
    // cancel everything: canonical zero
    KElement zero = sum1 - sum1;
    CHECK(zero.is_zero());
    CHECK(zero == KElement::zero(2));
  }
}
