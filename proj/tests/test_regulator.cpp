#include <catch2/catch_amalgamated.hpp>

#include "torsym/regulator.hpp"
#include "torsym/suite_random.hpp"

using namespace torsym;

namespace {
const SamplePlan kPlan = [] {
  SamplePlan p;
  p.seed = 31;
  return p;
}();
}  // namespace

TEST_CASE("complex_fiber frozen examples") {
  PrecisionGuard guard(256);
  CVec z{Cplx(Real("0.6"), Real("0.8"))};
  auto f = complex_fiber(IMat{{Integer(1)}}, z);
  REQUIRE(f.size() == 1);
  CHECK(abs_c(f[0][0] - z[0]) < Real(1e-70));

  // square roots of 1
  CVec one{Cplx(Real(1), Real(0))};
  f = complex_fiber(IMat{{Integer(2)}}, one);
  REQUIRE(f.size() == 2);
  Real spread = abs_c(f[0][0] + f[1][0]);  // +1 and -1 sum to 0
  CHECK(spread < Real(1e-70));

  // diag(2,3) over (1,1): all pairs of square and cube roots of unity
  IMat m{{Integer(2), Integer(0)}, {Integer(0), Integer(3)}};
  CVec ones{Cplx(Real(1), Real(0)), Cplx(Real(1), Real(0))};
  f = complex_fiber(m, ones);
  REQUIRE(f.size() == 6);
  for (const auto& w : f) {
    CHECK(abs_c(w[0] * w[0] - ones[0]) < Real(1e-70));
    CHECK(abs_c(w[1] * w[1] * w[1] - ones[1]) < Real(1e-70));
  }

  CHECK_THROWS_AS(complex_fiber(IMat{{Integer(0)}}, z), error);
  CHECK_THROWS_AS(complex_fiber(IMat{{Integer(1)}}, CVec{Cplx(Real(0), Real(0))}), error);
}

TEST_CASE("fiber is branch-independent") {
  PrecisionGuard guard(256);
  IMat m{{Integer(2), Integer(1)}, {Integer(0), Integer(3)}};
  CVec z{Cplx(Real("0.8"), Real("0.4")), Cplx(Real("-1.1"), Real("0.2"))};
  std::vector<long> shift{3, -2};
  auto f1 = complex_fiber(m, z);
  auto f2 = complex_fiber(m, z, &shift);
  REQUIRE(f1.size() == f2.size());
  // compare as multisets through symmetric functions
  Cplx s1, s2;
  for (const auto& w : f1) s1 += w[0] * w[1] * (w[0] + w[1]);
  for (const auto& w : f2) s2 += w[0] * w[1] * (w[0] + w[1]);
  CHECK(abs_c(s1 - s2) < Real(1e-70));
}

TEST_CASE("eval frozen forms") {
  PrecisionGuard guard(256);
  CVec z{Cplx(Real("0.7"), Real("0.3"))};
  Cplx one(Real(1), Real(0));

  CHECK(abs_c(eval(orientation_element(1, 1), z) - one) < Real(1e-70));

  KElement e(1);
  e.add_term(generator_untwisted(IMat::identity(1)));
  Cplx expect = -z[0] / (one - z[0]);
  CHECK(abs_c(eval(e, z) - expect) < Real(1e-70));

  // [2]_*{1-w} evaluates to the same function (trace invariance)
  Cplx raw = eval_term_raw(IMat{{Integer(2)}}, {Rational(0)}, Rational(1), z);
  CHECK(abs_c(raw - expect) < Real(1e-70));
}

TEST_CASE("near-singular samples are rejected") {
  PrecisionGuard guard(256);
  KElement e(1);
  e.add_term(generator_untwisted(IMat::identity(1)));
  CVec z{Cplx(Real(1) + Real(1e-9), Real(0))};
  CHECK_THROWS_MATCHES(
      eval(e, z), error,
      Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("near_singular")));
}

TEST_CASE("compare: reflexive equality and orientation offset") {
  KElement e(1);
  e.add_term(generator_untwisted(IMat::identity(1)));

  RegulatorReport rep = compare(e, e, kPlan, CompareMode::strict);
  CHECK(rep.verdict == Verdict::equal);
  CHECK(rep.max_residual == 0.0);

  KElement shifted = e + orientation_element(1, 1);
  rep = compare(e, shifted, kPlan, CompareMode::strict);
  CHECK(rep.verdict == Verdict::distinct);
  rep = compare(shifted, e, kPlan, CompareMode::mod_orientation);
  CHECK(rep.verdict == Verdict::equal_mod_orientation);
  CHECK(std::abs(rep.fitted_re - 1.0) < 1e-9);
  CHECK(std::abs(rep.fitted_im) < 1e-9);

  // genuinely different elements are distinct in both modes
  KElement other(1);
  other.add_term(generator(IMat::identity(1), {Rational(1, 3)}));
  CHECK(compare(e, other, kPlan, CompareMode::strict).verdict == Verdict::distinct);
  CHECK(compare(e, other, kPlan, CompareMode::mod_orientation).verdict == Verdict::distinct);
}

TEST_CASE("compare is deterministic for a fixed seed") {
  KElement e(2);
  e.add_term(generator_untwisted(IMat{{Integer(1), Integer(1)}, {Integer(0), Integer(1)}}));
  RegulatorReport a = compare(e, e, kPlan, CompareMode::strict);
  RegulatorReport b = compare(e, e, kPlan, CompareMode::strict);
  CHECK(a.sample_lhs == b.sample_lhs);
  CHECK(a.residuals == b.residuals);
}

TEST_CASE("trace identity numerically: fibers and the det factor") {
  // eval of the [a]-composed raw presentation matches the generator
  for (std::size_t n : {1u, 2u}) {
    IMat base = IMat::identity(n);
    if (n >= 2) base(0, 1) = 1;
    for (long long a : {2, 3}) {
      IMat scaled(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) = Integer(a) * base(r, c);
      std::vector<Rational> tw(n, Rational(0));
      RegulatorReport rep = compare_sampled(
          n,
          [&](const CVec& z) {
            return std::make_pair(eval_term_raw(scaled, tw, Rational(1), z),
                                  eval_term_raw(base, tw, Rational(1), z));
          },
          kPlan, CompareMode::strict, "test/trace");
      CHECK(rep.verdict == Verdict::equal);
      CHECK(rep.max_residual < 1e-9);
    }
  }
}

TEST_CASE("pushforward equivariance for integer gamma") {
  PrecisionGuard guard(256);
  IMat gam{{Integer(2), Integer(0)}, {Integer(0), Integer(1)}};
  KElement e(2);
  e.add_term(generator_untwisted(IMat{{Integer(1), Integer(0)}, {Integer(1), Integer(1)}}));
  KElement ge = act(gam, e);
  CVec z{Cplx(Real("0.9"), Real("0.6")), Cplx(Real("1.2"), Real("-0.4"))};
  Cplx lhs = eval(ge, z);
  Cplx rhs;
  for (const auto& w : complex_fiber(gam, z)) rhs += eval(e, w);
  rhs = rhs / Cplx(to_real(Rational(det_int(gam))));
  CHECK(abs_c(lhs - rhs) < Real(1e-70));
}

TEST_CASE("doubling precision shrinks residuals by orders of magnitude") {
  std::vector<IVec> base = {{Integer(1), Integer(0)}, {Integer(0), Integer(1)}};
  StellarPair pair = stellar_instance(2, base, 2, IVec{Integer(2), Integer(3)});
  SamplePlan lo = kPlan, hi = kPlan;
  lo.precision_bits = 128;
  lo.tolerance = 1e-6;
  hi.precision_bits = 256;
  hi.tolerance = 1e-6;
  RegulatorReport rlo = compare(pair.lhs, pair.rhs, lo);
  RegulatorReport rhi = compare(pair.lhs, pair.rhs, hi);
  REQUIRE(rlo.verdict == Verdict::equal);
  REQUIRE(rhi.verdict == Verdict::equal);
  CHECK(rlo.max_residual > 0.0);
  CHECK(rhi.max_residual < rlo.max_residual * 1e-20);
}
