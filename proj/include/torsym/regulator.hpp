#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "torsym/ksym.hpp"
#include "torsym/mpcomplex.hpp"
#include "torsym/rng.hpp"

namespace torsym {

// The numeric oracle evaluates the d log^n regulator coefficient of a
// KElement at sample points of (C^*)^n and decides equality of elements as a
// necessary condition: reports are "consistent with equality", never proofs.

struct SamplePlan {
  std::uint64_t seed = 0;
  std::size_t count = 24;
  double r_min = 0.5;
  double r_max = 2.0;
  double singular_margin = 1e-3;
  unsigned precision_bits = 256;
  double tolerance = 1e-9;
};

enum class Verdict { equal, equal_mod_orientation, distinct };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::equal_mod_orientation: return "equal_mod_orientation";
    case Verdict::distinct: return "distinct";
  }
  return "unknown";
}

struct RegulatorReport {
  Verdict verdict = Verdict::distinct;
  double max_residual = 0.0;
  bool has_fitted = false;
  double fitted_re = 0.0, fitted_im = 0.0;
  std::string fitted_re_str, fitted_im_str;
  std::vector<std::string> sample_lhs, sample_rhs, residuals;  // decimal strings
  SamplePlan plan;

  bool equal() const { return verdict == Verdict::equal; }
};

using CVec = std::vector<Cplx>;

// ---------------------------------------------------------------------------
// fibers of monomial maps over (C^*)^n

// The |det M| solutions w of prod_i w_i^{M_{j,i}} = z_j, as
// w = exp(M^{-1}(Log z + 2*pi*i*m)) with m over coset representatives of
// Z^n / M Z^n obtained from the Smith form. branch_shift offsets the
// principal logarithm by 2*pi*i*branch_shift (the fiber as a set must not
// depend on it; tests exercise that).
inline std::vector<CVec> complex_fiber(const IMat& m, const CVec& z,
                                       const std::vector<long>* branch_shift = nullptr) {
  require(m.rows() == m.cols(), errc::dimension_mismatch, "complex_fiber: square matrix required");
  std::size_t n = m.rows();
  require(z.size() == n, errc::dimension_mismatch, "complex_fiber: point dimension mismatch");
  Integer det = det_int(m);
  require(det != 0, errc::singular, "complex_fiber: singular matrix");
  for (const auto& zi : z)
    require(!(zi.re == 0 && zi.im == 0), errc::zero_coordinate, "complex_fiber: zero coordinate");

  Real two_pi = 2 * pi_real();
  std::vector<Cplx> logz(n);
  for (std::size_t i = 0; i < n; ++i) {
    logz[i] = log_c(z[i]);
    if (branch_shift) logz[i].im += two_pi * Real((*branch_shift)[i]);
  }

  SNFDecomposition d = snf(m);
  IMat uinv = adjugate(d.U);
  if (det_int(d.U) < 0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) uinv(i, j) = -uinv(i, j);

  QMat minv = inverse(to_qmat(m));
  Mat<Real> minv_r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) minv_r(i, j) = to_real(minv(i, j));

  std::vector<Integer> divisors(n);
  for (std::size_t i = 0; i < n; ++i) divisors[i] = d.S(i, i);

  std::vector<CVec> fiber;
  std::vector<Integer> t(n, 0);
  while (true) {
    // coset representative of Z^n / M Z^n
    IVec rep(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) rep[i] += uinv(i, k) * t[k];
    CVec logw(n);
    for (std::size_t i = 0; i < n; ++i) {
      Cplx acc;
      for (std::size_t j = 0; j < n; ++j) {
        Cplx term = logz[j];
        term.im += two_pi * to_real(Rational(rep[j]));
        acc += Cplx(minv_r(i, j)) * term;
      }
      logw[i] = acc;
    }
    CVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = exp_c(logw[i]);
    fiber.push_back(std::move(w));

    std::size_t k = 0;
    while (k < n) {
      t[k] += 1;
      if (t[k] < divisors[k]) break;
      t[k] = 0;
      ++k;
    }
    if (k == n) break;
  }

  // each solution must reproduce z well within working precision
  Real check_tol = pow(Real(0.5), static_cast<int>(Real::default_precision() * 1.66));
  for (const auto& w : fiber)
    for (std::size_t j = 0; j < n; ++j) {
      Cplx prod(Real(1), Real(0));
      for (std::size_t i = 0; i < n; ++i) {
        Integer e = m(j, i);
        Cplx base = w[i];
        bool invert = e < 0;
        unsigned long k = static_cast<unsigned long>(iabs(e));
        Cplx p(Real(1), Real(0));
        for (unsigned long s = 0; s < k; ++s) p *= base;
        prod *= invert ? Cplx(Real(1), Real(0)) / p : p;
      }
      Real err = abs_c(prod - z[j]) / (Real(1) + abs_c(z[j]));
      require(err < check_tol, errc::internal, "complex_fiber: solution failed residual check");
    }
  return fiber;
}

// ---------------------------------------------------------------------------
// d log^n coefficient evaluation

namespace detail {

// d log(1 - mu w) = (-mu w / (1 - mu w)) d log w slotwise; a pushforward
// along M divides the d log z wedge by det(M).
inline Cplx eval_term_at(const IMat& m, const std::vector<Rational>& twists,
                         const Rational& coeff, const CVec& z, const Real& margin) {
  std::size_t n = m.rows();
  std::vector<Cplx> mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = unit_root(twists[i]);
  Cplx sum;
  for (const auto& w : complex_fiber(m, z)) {
    Cplx prod(Real(1), Real(0));
    for (std::size_t i = 0; i < n; ++i) {
      Cplx mw = mu[i] * w[i];
      Cplx denom = Cplx(Real(1), Real(0)) - mw;
      require(abs_c(denom) >= margin, errc::near_singular,
              "eval: sample too close to a singular locus");
      prod *= (-mw) / denom;
    }
    sum += prod;
  }
  Integer det = det_int(m);
  return Cplx(to_real(coeff) / to_real(Rational(det))) * sum;
}

}  // namespace detail

// evaluation of a raw (not necessarily normalized) square term; the columns
// need not be primitive, which is what the trace-expansion checks exercise
inline Cplx eval_term_raw(const IMat& m, const std::vector<Rational>& twists,
                          const Rational& coeff, const CVec& z, double margin = 1e-3) {
  require(m.rows() == m.cols(), errc::non_square_term, "eval: non-square term");
  require(det_int(m) != 0, errc::singular, "eval: singular term matrix");
  return detail::eval_term_at(m, twists, coeff, z, Real(margin));
}

// the coefficient of d log z_1 ^ ... ^ d log z_n: the orientation class
// contributes the constant 1 per unit coefficient since d log(-z) = d log z
inline Cplx eval(const KElement& e, const CVec& z, double margin = 1e-3) {
  require(z.size() == e.dim(), errc::dimension_mismatch, "eval: point dimension mismatch");
  Real m(margin);
  Cplx total(to_real(e.orient()));
  for (const auto& [k, c] : e.terms()) {
    require(k.map.rows() == k.map.cols(), errc::non_square_term, "eval: non-square term");
    total += detail::eval_term_at(k.map, k.twists, c, z, m);
  }
  return total;
}

// ---------------------------------------------------------------------------
// sampling and comparison

class Sampler {
 public:
  Sampler(const SamplePlan& plan, std::string_view stream) : plan_(plan), rng_(plan.seed, stream) {}

  CVec draw(std::size_t dim) {
    CVec z(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double r = plan_.r_min + rng_.unit() * (plan_.r_max - plan_.r_min);
      double theta = rng_.unit() * 2.0 * 3.14159265358979323846;
      z[i] = polar_c(Real(r), Real(theta));
    }
    return z;
  }

  // rejection loop around an evaluation that may hit the singular margin
  template <typename F>
  auto draw_until(std::size_t dim, F&& f) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      CVec z = draw(dim);
      try {
        return f(z);
      } catch (const error& e) {
        if (e.code() != errc::near_singular) throw;
      }
    }
    fail(errc::near_singular, "sampler: could not find a sample clear of singular loci");
  }

 private:
  SamplePlan plan_;
  Rng rng_;
};

enum class CompareMode { strict, mod_orientation };

// Pairs of d log coefficients, one per accepted sample.
using PairEval = std::function<std::pair<Cplx, Cplx>(const CVec&)>;

inline RegulatorReport compare_sampled(std::size_t dim, const PairEval& f, const SamplePlan& plan,
                                       CompareMode mode, std::string_view stream = "compare") {
  PrecisionGuard guard(plan.precision_bits);
  Sampler sampler(plan, stream);
  std::vector<Cplx> lhs, rhs, diffs;
  for (std::size_t s = 0; s < plan.count; ++s) {
    auto [a, b] = sampler.draw_until(dim, f);
    lhs.push_back(a);
    rhs.push_back(b);
    diffs.push_back(a - b);
  }

  RegulatorReport rep;
  rep.plan = plan;
  Real tol(plan.tolerance);
  Real maxres(0);
  Cplx fitted;
  if (mode == CompareMode::mod_orientation) {
    for (const auto& d : diffs) fitted += d;
    fitted = fitted / Cplx(Real(static_cast<double>(diffs.size())));
    rep.has_fitted = true;
    rep.fitted_re = static_cast<double>(fitted.re);
    rep.fitted_im = static_cast<double>(fitted.im);
    rep.fitted_re_str = real_str(fitted.re);
    rep.fitted_im_str = real_str(fitted.im);
  }
  bool ok = true;
  for (std::size_t s = 0; s < diffs.size(); ++s) {
    Cplx r = mode == CompareMode::mod_orientation ? diffs[s] - fitted : diffs[s];
    Real res = abs_c(r);
    if (res > maxres) maxres = res;
    if (!(res < tol)) ok = false;
    rep.sample_lhs.push_back(real_str(lhs[s].re) + (lhs[s].im < 0 ? "" : "+") +
                             real_str(lhs[s].im) + "i");
    rep.sample_rhs.push_back(real_str(rhs[s].re) + (rhs[s].im < 0 ? "" : "+") +
                             real_str(rhs[s].im) + "i");
    rep.residuals.push_back(real_str(res));
  }
  rep.max_residual = static_cast<double>(maxres);
  if (!ok)
    rep.verdict = Verdict::distinct;
  else
    rep.verdict = mode == CompareMode::strict ? Verdict::equal : Verdict::equal_mod_orientation;
  return rep;
}

inline RegulatorReport compare(const KElement& e1, const KElement& e2, const SamplePlan& plan,
                               CompareMode mode = CompareMode::strict) {
  require(e1.dim() == e2.dim(), errc::dimension_mismatch, "compare: ambient mismatch");
  require(e1.all_square() && e2.all_square(), errc::non_square_term,
          "compare: all terms must be square");
  std::size_t dim = e1.dim();
  double margin = plan.singular_margin;
  return compare_sampled(
      dim,
      [&](const CVec& z) { return std::make_pair(eval(e1, z, margin), eval(e2, z, margin)); },
      plan, mode);
}

// fitted ModOrientation constant asserted close to an integer (tolerance for
// the integrality check is separate from the sample-spread tolerance)
struct IntegerFit {
  long long value;
  RegulatorReport report;
};

inline IntegerFit fit_integer_constant(const KElement& e, const SamplePlan& plan,
                                       double integer_tol = 1e-6) {
  RegulatorReport rep = compare(e, KElement::zero(e.dim()), plan, CompareMode::mod_orientation);
  require(rep.verdict == Verdict::equal_mod_orientation, errc::non_constant_defect,
          "fitted value is not constant across samples");
  double re = rep.fitted_re, im = rep.fitted_im;
  long long rounded = static_cast<long long>(re >= 0 ? re + 0.5 : re - 0.5);
  require(std::abs(re - static_cast<double>(rounded)) <= integer_tol &&
              std::abs(im) <= integer_tol,
          errc::non_integer_defect, "fitted constant is not an integer");
  return {rounded, std::move(rep)};
}

}  // namespace torsym
