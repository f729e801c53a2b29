#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "torsym/dist.hpp"
#include "torsym/hecke.hpp"
#include "torsym/intersect.hpp"
#include "torsym/ksym.hpp"
#include "torsym/rays.hpp"
#include "torsym/regulator.hpp"

namespace torsym {

using json = nlohmann::json;

// Rationals travel as exact strings ("p/q", or "p" when integral); reals and
// complex values as decimal strings at the precision recorded in the plan.

inline json rational_json(const Rational& r) { return rational_str(r); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  require(j.is_string(), errc::bad_input, "expected a rational as string or integer");
  return parse_rational(j.get<std::string>());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  require(j.is_string(), errc::bad_input, "expected an integer as string or number");
  try {
    return Integer(j.get<std::string>());
  } catch (const std::exception&) {
    fail(errc::bad_input, "cannot parse integer '" + j.get<std::string>() + "'");
  }
}

inline json imat_json(const IMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& x = m(i, j);
      if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        row.push_back(static_cast<long long>(x));
      else
        row.push_back(x.str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IMat imat_from_json(const json& j) {
  require(j.is_array() && !j.empty(), errc::bad_input, "matrix: expected a non-empty array");
  std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), errc::bad_input, "matrix: expected rows of entries");
  std::size_t cols = j[0].size();
  IMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, errc::bad_input, "matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = integer_from_json(j[i][c]);
  }
  return m;
}

inline QMat qmat_from_json(const json& j) {
  require(j.is_array() && !j.empty(), errc::bad_input, "matrix: expected a non-empty array");
  std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), errc::bad_input, "matrix: expected rows of entries");
  std::size_t cols = j[0].size();
  QMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, errc::bad_input, "matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
  }
  return m;
}

// ray tuples: list of integer-vector lists
inline std::vector<IVec> tuple_from_json(const json& j) {
  require(j.is_array() && !j.empty(), errc::bad_input, "tuple: expected a non-empty array");
  std::vector<IVec> out;
  for (const auto& row : j) {
    require(row.is_array() && !row.empty(), errc::bad_input, "tuple: expected integer vectors");
    IVec v;
    for (const auto& x : row) v.push_back(integer_from_json(x));
    out.push_back(std::move(v));
  }
  return out;
}

inline json tuple_json(const std::vector<IVec>& t) {
  json out = json::array();
  for (const auto& v : t) {
    json row = json::array();
    for (const auto& x : v) row.push_back(static_cast<long long>(x));
    out.push_back(std::move(row));
  }
  return out;
}

inline json torsion_point_json(const TorsionPoint& p) {
  json out = json::array();
  for (const auto& c : p.coords) out.push_back(rational_str(c));
  return out;
}

inline TorsionPoint torsion_point_from_json(const json& j) {
  require(j.is_array(), errc::bad_input, "torsion point: expected an array of rationals");
  QVec coords;
  for (const auto& x : j) coords.push_back(rational_from_json(x));
  return TorsionPoint(coords);
}

// {"terms":[{"coeff":"p/q","matrix":[[...]],"twists":["a/b",...]}],"orient":"p/q","n":n}
inline json kelement_json(const KElement& e) {
  json terms = json::array();
  for (const auto& [k, c] : e.terms()) {
    json t;
    t["coeff"] = rational_json(c);
    t["matrix"] = imat_json(k.map);
    json tw = json::array();
    for (const auto& x : k.twists) tw.push_back(rational_str(x));
    t["twists"] = std::move(tw);
    terms.push_back(std::move(t));
  }
  json out;
  out["terms"] = std::move(terms);
  out["orient"] = rational_json(e.orient());
  out["n"] = e.dim();
  return out;
}

inline KElement kelement_from_json(const json& j) {
  require(j.contains("n"), errc::bad_input, "element: missing ambient dimension 'n'");
  KElement e(j["n"].get<std::size_t>());
  if (j.contains("terms"))
    for (const auto& t : j["terms"]) {
      require(t.contains("coeff") && t.contains("matrix"), errc::bad_input,
              "element term: need coeff and matrix");
      IMat m = imat_from_json(t["matrix"]);
      std::vector<Rational> tw(m.cols(), Rational(0));
      if (t.contains("twists")) {
        require(t["twists"].size() == m.cols(), errc::bad_input,
                "element term: twist count mismatch");
        for (std::size_t i = 0; i < m.cols(); ++i) tw[i] = rational_from_json(t["twists"][i]);
      }
      SymbolTerm st = generator(m, tw);
      st.coeff = rational_from_json(t["coeff"]);
      e.add_term(st);
    }
  if (j.contains("orient")) e.add_orient(rational_from_json(j["orient"]));
  return e;
}

inline json plan_json(const SamplePlan& p) {
  json out;
  out["seed"] = p.seed;
  out["count"] = p.count;
  out["r_min"] = p.r_min;
  out["r_max"] = p.r_max;
  out["singular_margin"] = p.singular_margin;
  out["precision_bits"] = p.precision_bits;
  out["tolerance"] = p.tolerance;
  return out;
}

inline json regulator_report_json(const RegulatorReport& r, bool include_samples = true) {
  json out;
  out["verdict"] = verdict_name(r.verdict);
  out["max_residual"] = real_str(Real(r.max_residual), 6);
  if (r.has_fitted) {
    out["fitted_constant"] = {{"re", r.fitted_re_str}, {"im", r.fitted_im_str}};
  }
  if (include_samples) {
    out["samples"] = json::array();
    for (std::size_t i = 0; i < r.residuals.size(); ++i)
      out["samples"].push_back(
          {{"lhs", r.sample_lhs[i]}, {"rhs", r.sample_rhs[i]}, {"residual", r.residuals[i]}});
  }
  out["plan"] = plan_json(r.plan);
  return out;
}

inline json multiset_json(const TorsionMultiset& m) {
  json out = json::array();
  for (const auto& [pt, mult] : m.mult)
    out.push_back({{"point", torsion_point_json(pt)}, {"multiplicity", mult.str()}});
  return out;
}

inline json intersect_report_json(const IntersectReport& r) {
  json out;
  out["certified"] = r.certified;
  out["acyclic"] = r.acyclic;
  out["note"] = r.note;
  if (r.witness) {
    json w = json::array();
    for (const auto& x : *r.witness) w.push_back(rational_str(x));
    out["witness"] = std::move(w);
  }
  if (!r.x.empty()) {
    json xs = json::array(), ys = json::array();
    for (const auto& v : r.x) xs.push_back(v.str());
    for (const auto& v : r.y) ys.push_back(v.str());
    out["reduced_x"] = std::move(xs);
    out["reduced_y"] = std::move(ys);
    if (r.agree_index) out["sign_agreement_index"] = *r.agree_index;
  }
  json faces = json::array();
  for (const auto& f : r.faces) {
    json fj;
    fj["subset"] = f.subset;
    fj["labels"] = json::array();
    for (int l : f.labels) fj["labels"].push_back(l == 0 ? "0" : "inf");
    fj["status"] = f.status == FaceStatus::proper_by_reduction ? "PROPER_BY_REDUCTION"
                                                               : "EMPTY_CERTIFIED";
    faces.push_back(std::move(fj));
  }
  out["faces"] = std::move(faces);
  if (r.curve) {
    out["curve_diagnostic"] = {{"t_small", r.curve->t_small},
                               {"t_large", r.curve->t_large},
                               {"min_face_distance_at_t_small", r.curve->min_face_dist_small},
                               {"min_face_distance_at_t_large", r.curve->min_face_dist_large},
                               {"monomial_value", r.curve->monomial_value},
                               {"unbounded_growth", r.curve->unbounded_growth}};
  }
  return out;
}

}  // namespace torsym
