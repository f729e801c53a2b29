#include <catch2/catch_amalgamated.hpp>

#include "torsym/hecke.hpp"

using namespace torsym;

TEST_CASE("qbinom frozen values, derived from subspace enumeration") {
  CHECK(qbinom(2, 1, 2) == 3);   // lines of F_2^2
  CHECK(qbinom(3, 1, 2) == 7);   // lines of F_2^3
  CHECK(qbinom(4, 2, 2) == 35);  // 2-planes of F_2^4
  CHECK(qbinom(3, 1, 3) == 13);

  CHECK_THROWS_AS(qbinom(2, 3, 2), error);
  CHECK_THROWS_AS(qbinom(2, 1, 1), error);
}

TEST_CASE("qbinom equals the brute-force subspace count") {
  for (long long p : {2, 3}) {
    for (long long n = 1; n <= 4; ++n)
      for (long long d = 0; d <= n; ++d)
        CHECK(qbinom(n, d, p) ==
              subspace_count(static_cast<std::size_t>(n), static_cast<std::size_t>(d), p));
  }
  CHECK(qbinom(2, 1, 5) == subspace_count(2, 1, 5));
}

TEST_CASE("qbinom symmetry") {
  for (long long p : {2, 3, 5})
    for (long long a = 0; a <= 5; ++a)
      for (long long b = 0; b <= a; ++b) CHECK(qbinom(a, b, p) == qbinom(a, a - b, p));
}

TEST_CASE("subspace_count frozen examples") {
  CHECK(subspace_count(2, 1, 2) == 3);
  CHECK(subspace_count(3, 3, 2) == 1);  // the whole space
  CHECK(subspace_count(4, 4, 3) == 1);

  // planes of F_2^3 through e_1: qbinom(2,1,2) of them
  IVec e1{Integer(1), Integer(0), Integer(0)};
  CHECK(subspace_count(3, 2, 2, e1) == 3);

  CHECK_THROWS_MATCHES(subspace_count(4, 2, 7, std::nullopt, 10), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("too_large")));
  IVec zero3{Integer(0), Integer(0), Integer(0)};
  CHECK_THROWS_AS(subspace_count(3, 2, 2, zero3), error);
}

TEST_CASE("subspace_count through a point is independent of the point") {
  std::vector<IVec> points = {{Integer(1), Integer(0), Integer(0)},
                              {Integer(0), Integer(1), Integer(0)},
                              {Integer(1), Integer(1), Integer(1)},
                              {Integer(1), Integer(0), Integer(1)}};
  Integer expect = subspace_count(3, 2, 2, points[0]);
  for (const auto& v : points) CHECK(subspace_count(3, 2, 2, v) == expect);
  for (const auto& v : points) CHECK(subspace_count(3, 1, 3, v) == subspace_count(3, 1, 3, points[0]));
}

TEST_CASE("coset_reps frozen examples") {
  // index-2 sublattices of Z^2: the three Hermite forms
  auto reps = coset_reps(2, 1, 2);
  REQUIRE(reps.size() == 3);
  for (const auto& r : reps) CHECK(iabs(det_int(r)) == 2);

  // i = n: the single rep p * I
  reps = coset_reps(3, 3, 2);
  REQUIRE(reps.size() == 1);
  IMat twoI(3, 3);
  for (std::size_t i = 0; i < 3; ++i) twoI(i, i) = 2;
  CHECK(reps[0] == twoI);

  CHECK(coset_reps(3, 1, 3).size() == 13);  // qbinom(3,1,3)
}

TEST_CASE("coset rep counts match q-binomials; divisors validated") {
  for (long long p : {2, 3})
    for (std::size_t n = 2; n <= 3; ++n)
      for (std::size_t i = 1; i <= n; ++i) {
        auto reps = coset_reps(n, i, p);
        CHECK(Integer(reps.size()) == qbinom(static_cast<long long>(n),
                                             static_cast<long long>(i), p));
        for (const auto& r : reps) {
          SNFDecomposition d = snf(r);
          for (std::size_t k = 0; k < n; ++k)
            CHECK(d.S(k, k) == ((k < n - i) ? Integer(1) : Integer(p)));
        }
      }
}

TEST_CASE("hecke_on_identity frozen multisets") {
  // (2,1,2): identity 3, each nonzero 2-torsion point once
  TorsionMultiset m = hecke_on_identity(2, 1, 2);
  Integer total = 0;
  for (const auto& [pt, mult] : m.mult) {
    total += mult;
    if (pt.is_zero())
      CHECK(mult == 3);
    else
      CHECK(mult == 1);
  }
  CHECK(m.mult.size() == 4);
  CHECK(total == 6);

  // (n,n,p): a single rep whose kernel is the full p-torsion
  m = hecke_on_identity(2, 2, 3);
  CHECK(m.mult.size() == 9);
  for (const auto& [pt, mult] : m.mult) CHECK(mult == 1);

  // (3,2,2): identity 7 = qbinom(3,2,2), nonzero 3 = qbinom(2,1,2)
  m = hecke_on_identity(3, 2, 2);
  for (const auto& [pt, mult] : m.mult) CHECK(mult == (pt.is_zero() ? Integer(7) : Integer(3)));
}

TEST_CASE("per-rep kernel mass is |det(p alpha^{-1})|") {
  // aggregate mass = number of reps * p^i
  for (auto [n, i, p] : std::vector<std::array<long long, 3>>{{2, 1, 2}, {3, 1, 2}, {3, 2, 2}}) {
    TorsionMultiset m =
        hecke_on_identity(static_cast<std::size_t>(n), static_cast<std::size_t>(i), p);
    Integer mass = 0;
    for (const auto& [pt, mult] : m.mult) mass += mult;
    Integer pi = 1;
    for (long long k = 0; k < i; ++k) pi *= p;
    CHECK(mass == qbinom(n, i, p) * pi);
  }
}

TEST_CASE("verify_hecke: the documented test matrix") {
  for (auto [n, p, i] : std::vector<std::array<long long, 3>>{
           {2, 2, 1}, {2, 3, 1}, {3, 2, 1}, {3, 2, 2}, {3, 3, 1}, {4, 2, 2}}) {
    HeckeReport rep =
        verify_hecke(static_cast<std::size_t>(n), static_cast<std::size_t>(i), p);
    INFO("n=" << n << " p=" << p << " i=" << i);
    CHECK(rep.pass);
  }
}
