#pragma once

#include <stdexcept>
#include <string>

namespace torsym {

// Every failure the library reports deliberately carries one of these codes,
// so callers (and the CLI) can tell precondition violations from verified
// mathematical failures.
enum class errc {
  zero_vector,
  singular,
  dimension_mismatch,
  not_full_rank,
  rank_deficient,
  non_square_term,
  orientation_translate,
  extension_dependent,
  not_in_span,
  not_acyclic,
  even_dimension,
  near_singular,
  zero_coordinate,
  non_constant_defect,
  non_integer_defect,
  domain_error,
  too_large,
  non_integral,
  bad_hyperplane,
  orientation_present,
  minor_zero,
  bad_input,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_vector: return "zero_vector";
    case errc::singular: return "singular";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::not_full_rank: return "not_full_rank";
    case errc::rank_deficient: return "rank_deficient";
    case errc::non_square_term: return "non_square_term";
    case errc::orientation_translate: return "orientation_translate";
    case errc::extension_dependent: return "extension_dependent";
    case errc::not_in_span: return "not_in_span";
    case errc::not_acyclic: return "not_acyclic";
    case errc::even_dimension: return "even_dimension";
    case errc::near_singular: return "near_singular";
    case errc::zero_coordinate: return "zero_coordinate";
    case errc::non_constant_defect: return "non_constant_defect";
    case errc::non_integer_defect: return "non_integer_defect";
    case errc::domain_error: return "domain_error";
    case errc::too_large: return "too_large";
    case errc::non_integral: return "non_integral";
    case errc::bad_hyperplane: return "bad_hyperplane";
    case errc::orientation_present: return "orientation_present";
    case errc::minor_zero: return "minor_zero";
    case errc::bad_input: return "bad_input";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace torsym
