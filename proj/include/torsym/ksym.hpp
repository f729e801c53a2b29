#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsym/latlin.hpp"
#include "torsym/matrix.hpp"

namespace torsym {

// A twisted pushforward generator: coeff * M_*{1 - mu_1 w_1, ..., 1 - mu_k w_k}
// with mu_i = exp(2*pi*i*twist_i). Columns of the map are primitive; positive
// column scaling has been normalized away into the twists.
struct SymbolTerm {
  Rational coeff;
  IMat map;                    // n x k, rank k, primitive columns
  std::vector<Rational> twists;  // length k, each in [0,1)

  std::size_t ambient_dim() const { return map.rows(); }
  std::size_t arity() const { return map.cols(); }
  bool square() const { return map.rows() == map.cols(); }
};

struct TermKey {
  IMat map;
  std::vector<Rational> twists;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.map == b.map) return a.twists < b.twists;
    return a.map < b.map;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.map == b.map && a.twists == b.twists;
  }
};

// Formal rational combination of generators plus a multiple of the orientation
// class {-z_1, ..., -z_n}. Canonical form: keys strictly sorted, no zero
// coefficients; two elements are syntactically equal iff identical.
class KElement {
 public:
  KElement() : dim_(0), orient_(0) {}
  explicit KElement(std::size_t dim) : dim_(dim), orient_(0) {}

  static KElement zero(std::size_t dim) { return KElement(dim); }

  std::size_t dim() const { return dim_; }
  const Rational& orient() const { return orient_; }
  const std::map<TermKey, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty() && orient_ == 0; }

  void add_orient(const Rational& c) { orient_ += c; }

  void add_term(const SymbolTerm& t) {
    require(t.ambient_dim() == dim_, errc::dimension_mismatch, "add_term: ambient mismatch");
    if (t.coeff == 0) return;
    TermKey key{t.map, t.twists};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), t.coeff);
    } else {
      it->second += t.coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  KElement& operator+=(const KElement& o) {
    require(dim_ == o.dim_, errc::dimension_mismatch, "KElement addition: ambient mismatch");
    for (const auto& [k, c] : o.terms_) add_term({c, k.map, k.twists});
    orient_ += o.orient_;
    return *this;
  }
  friend KElement operator+(KElement a, const KElement& b) { return a += b; }

  KElement& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
      orient_ = 0;
      return *this;
    }
    for (auto& [k, c] : terms_) c *= r;
    orient_ *= r;
    return *this;
  }
  friend KElement operator*(const Rational& r, KElement e) { return e *= r; }
  friend KElement operator-(KElement e) { return e *= Rational(-1); }
  friend KElement operator-(KElement a, const KElement& b) { return a += (-b); }

  friend bool operator==(const KElement& a, const KElement& b) {
    return a.dim_ == b.dim_ && a.orient_ == b.orient_ && a.terms_ == b.terms_;
  }

  bool all_square() const {
    for (const auto& [k, c] : terms_)
      if (k.map.rows() != k.map.cols()) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      os << (first ? "" : " + ") << rational_str(c) << "*" << k.map.str() << "{";
      for (std::size_t i = 0; i < k.twists.size(); ++i)
        os << (i ? "," : "") << rational_str(k.twists[i]);
      os << "}";
      first = false;
    }
    if (orient_ != 0 || first) os << (first ? "" : " + ") << rational_str(orient_) << "*orient";
    return os.str();
  }

 private:
  std::size_t dim_;
  std::map<TermKey, Rational> terms_;
  Rational orient_;
};

// ---------------------------------------------------------------------------
// constructors and operators

// Normalized generator of coefficient 1: column j of content c contributes
// the primitive column with its twist multiplied by c (mod 1), per
// M_* = m_* o [c]_* slotwise and [c]_*{1 - mu w} = {1 - mu^c w}.
inline SymbolTerm generator(const IMat& m, const std::vector<Rational>& twists) {
  require(twists.size() == m.cols(), errc::dimension_mismatch, "generator: twist count mismatch");
  require(rank_exact(m) == m.cols(), errc::rank_deficient, "generator: columns not independent");
  IMat norm(m.rows(), m.cols());
  std::vector<Rational> tw(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Primitive p = primitive(m.col(j));
    norm.set_col(j, p.ray);
    tw[j] = mod1(Rational(p.content) * twists[j]);
  }
  return {Rational(1), std::move(norm), std::move(tw)};
}

inline SymbolTerm generator_untwisted(const IMat& m) {
  return generator(m, std::vector<Rational>(m.cols(), Rational(0)));
}

inline KElement from_term(SymbolTerm t) {
  KElement e(t.ambient_dim());
  e.add_term(t);
  return e;
}

inline KElement orientation_element(std::size_t n, const Rational& c) {
  KElement e(n);
  e.add_orient(c);
  return e;
}

// gamma_* : map M -> gamma*M with columns re-primitivized (the positive
// rational content rolls into the twist); the orientation class transforms by
// the sign character.
inline KElement act(const QMat& gamma, const KElement& e) {
  require(gamma.rows() == gamma.cols() && gamma.rows() == e.dim(), errc::dimension_mismatch,
          "act: matrix/element dimension mismatch");
  Rational dg = det_exact(gamma);
  require(dg != 0, errc::singular, "act: singular matrix");
  KElement out(e.dim());
  for (const auto& [k, c] : e.terms()) {
    IMat nm(k.map.rows(), k.map.cols());
    std::vector<Rational> tw(k.twists.size());
    for (std::size_t j = 0; j < k.map.cols(); ++j) {
      QVec col = gamma.apply(to_qvec(k.map.col(j)));
      PrimitiveQ p = primitive_rational(col);
      nm.set_col(j, p.ray);
      tw[j] = mod1(p.content * k.twists[j]);
    }
    out.add_term({c, std::move(nm), std::move(tw)});
  }
  out.add_orient(e.orient() * Rational(sign_of(dg)));
  return out;
}

inline KElement act(const IMat& gamma, const KElement& e) { return act(to_qmat(gamma), e); }

// [a]_* : twists scale by a (mod 1); untwisted generators and the orientation
// class are fixed.
inline KElement trace(const Integer& a, const KElement& e) {
  require(a >= 1, errc::domain_error, "trace: a must be >= 1");
  KElement out(e.dim());
  for (const auto& [k, c] : e.terms()) {
    std::vector<Rational> tw(k.twists.size());
    for (std::size_t i = 0; i < k.twists.size(); ++i) tw[i] = mod1(Rational(a) * k.twists[i]);
    out.add_term({c, k.map, std::move(tw)});
  }
  out.add_orient(e.orient());
  return out;
}

// t_a on pushforward presentations, as a correspondence: each square term
// M_*{...} becomes the sum over the fiber M*b == a of its b-shifted twists.
inline KElement torsion_translate(const TorsionPoint& a, const KElement& e) {
  require(a.dim() == e.dim(), errc::dimension_mismatch, "torsion_translate: dimension mismatch");
  require(e.orient() == 0 || a.is_zero(), errc::orientation_translate,
          "torsion_translate: cannot translate the orientation class by a nonzero point");
  KElement out(e.dim());
  for (const auto& [k, c] : e.terms()) {
    require(k.map.rows() == k.map.cols(), errc::non_square_term,
            "torsion_translate: non-square term");
    for (const auto& b : torsion_fiber(k.map, a)) {
      std::vector<Rational> tw(k.twists.size());
      for (std::size_t i = 0; i < k.twists.size(); ++i) tw[i] = mod1(k.twists[i] + b.coords[i]);
      out.add_term({c, k.map, std::move(tw)});
    }
  }
  out.add_orient(e.orient());
  return out;
}

}  // namespace torsym
