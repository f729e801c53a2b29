#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsym/latlin.hpp"
#include "torsym/matrix.hpp"
#include "torsym/mpcomplex.hpp"

namespace torsym {

// Proper-intersection certificates for the pushforward graph cycle of an
// acyclic (n+1)-ray configuration: faces of the algebraic cube are indexed by
// a labelled subset, and the certificate shows every all-infinity face misses
// the cycle.

inline bool minors_full(const IMat& m) {
  require(m.cols() == m.rows() + 1, errc::bad_input, "minors_full: need an n x (n+1) matrix");
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (det_int(m.drop_col(j)) == 0) return false;
  return true;
}

enum class FaceStatus { proper_by_reduction, empty_certified };

struct FaceReport {
  std::vector<std::size_t> subset;  // 1-based indices into {1, ..., n+1}
  std::vector<int> labels;          // 0 or 1 (1 = infinity), parallel to subset
  FaceStatus status;
};

struct CurveDiagnostic {
  // the family (z_1, z_2) = (g t^{-m_2}, t^{m_1}) stays on the cycle while
  // both cube coordinates run off to the infinity face
  double t_small, t_large;
  std::string min_face_dist_small, min_face_dist_large;  // min_i |1 - z_i|
  std::string monomial_value;                            // the constant first coordinate
  bool unbounded_growth;
};

struct IntersectReport {
  bool certified = false;
  bool acyclic = false;
  std::optional<QVec> witness;             // hemisphere functional when acyclic
  std::vector<Integer> x, y;               // reduced form (diag(x) | y)
  std::optional<std::size_t> agree_index;  // some i with sgn(x_i) = sgn(y_i), 1-based
  std::vector<FaceReport> faces;
  std::optional<CurveDiagnostic> curve;
  std::string note;
};

namespace detail {

inline CurveDiagnostic run_curve_diagnostic(const Integer& m1, const Integer& m2, double g) {
  PrecisionGuard guard(128);
  CurveDiagnostic diag;
  diag.t_small = 1e3;
  diag.t_large = 1e6;
  auto probe = [&](double t) {
    // z_1 = g * t^{-m2}, z_2 = t^{m1}; exponents make both blow up when
    // m1 > 0 > m2
    Real z1 = Real(g) * pow(Real(t), -static_cast<int>(static_cast<long>(m2)));
    Real z2 = pow(Real(t), static_cast<int>(static_cast<long>(m1)));
    Real d1 = abs(Real(1) - z1), d2 = abs(Real(1) - z2);
    return d1 < d2 ? d1 : d2;
  };
  Real small = probe(diag.t_small), large = probe(diag.t_large);
  diag.min_face_dist_small = real_str(small, 8);
  diag.min_face_dist_large = real_str(large, 8);
  diag.monomial_value = real_str(Real(g), 8);
  diag.unbounded_growth = large > small * Real(100);
  return diag;
}

}  // namespace detail

inline IntersectReport certify_infinity_faces(const IMat& m) {
  require(minors_full(m), errc::minor_zero, "certify: some maximal minor vanishes");
  std::size_t n = m.rows();
  IntersectReport rep;

  std::vector<IVec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  auto witness = hemisphere_witness(cols);
  rep.acyclic = witness.has_value();
  if (!rep.acyclic) {
    rep.certified = false;
    rep.note =
        "uncertified: the columns admit no hemisphere functional; the all-infinity faces are "
        "expected (not proven) to meet the cycle improperly";
    if (n == 1 && m(0, 0) > 0 && m(0, 1) < 0)
      rep.curve = detail::run_curve_diagnostic(m(0, 0), m(0, 1), 2.0);
    return rep;
  }
  rep.witness = witness;

  // reduce by the adjugate of the first n columns: rows become
  // (x_i e_i | y_i) with x_i = det(A) and y the cofactor combination
  IMat head(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) head(i, j) = m(i, j);
  IMat adj = adjugate(head);
  IMat reduced = adj * m;
  Integer det_head = det_int(head);
  for (std::size_t i = 0; i < n; ++i) {
    rep.x.push_back(reduced(i, i));
    rep.y.push_back(reduced(i, n));
    require(reduced(i, i) == det_head, errc::internal, "certify: reduction shape unexpected");
    require(reduced(i, n) != 0, errc::internal, "certify: zero entry after reduction");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (sign_of(rep.x[i]) == sign_of(rep.y[i])) {
      rep.agree_index = i + 1;
      break;
    }
  require(rep.agree_index.has_value(), errc::internal,
          "certify: acyclic configuration must have a sign agreement after reduction");

  // enumerate labelled faces: any 0 label makes the intersection a finite
  // pushforward of a proper cycle; all-infinity faces are empty by the
  // two-case sign contradiction
  std::size_t cnt = n + 1;
  for (std::size_t subset = 1; subset < (std::size_t(1) << cnt); ++subset) {
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < cnt; ++b)
      if ((subset >> b) & 1u) members.push_back(b + 1);
    std::size_t labels_count = members.size();
    for (std::size_t lab = 0; lab < (std::size_t(1) << labels_count); ++lab) {
      FaceReport fr;
      fr.subset = members;
      bool any_zero = false;
      for (std::size_t b = 0; b < labels_count; ++b) {
        int l = (lab >> b) & 1u;
        fr.labels.push_back(l);
        if (l == 0) any_zero = true;
      }
      fr.status = any_zero ? FaceStatus::proper_by_reduction : FaceStatus::empty_certified;
      rep.faces.push_back(std::move(fr));
    }
  }
  rep.certified = true;
  rep.note = "certified: every all-infinity face has empty intersection";
  return rep;
}

}  // namespace torsym
