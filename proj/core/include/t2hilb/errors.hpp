#pragma once

#include <stdexcept>
#include <string>

namespace t2hilb {

// Failure conditions surfaced by the library. Each value corresponds to a
// named precondition or runtime failure of one of the public operations.
enum class errc {
  rank_deficient,
  zero_column,
  zero_matrix,
  bad_modulus,
  singular_pair,
  bad_pair,
  not_faithful,
  not_standard_form,
  not_genericizable,
  not_normalized,
  needs_reassembly,
  too_few_columns,
  parse_error,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::rank_deficient: return "RankDeficient";
    case errc::zero_column: return "ZeroColumn";
    case errc::zero_matrix: return "ZeroMatrix";
    case errc::bad_modulus: return "BadModulus";
    case errc::singular_pair: return "SingularPair";
    case errc::bad_pair: return "BadPair";
    case errc::not_faithful: return "NotFaithful";
    case errc::not_standard_form: return "NotStandardForm";
    case errc::not_genericizable: return "NotGenericizable";
    case errc::not_normalized: return "NotNormalized";
    case errc::needs_reassembly: return "NeedsReassembly";
    case errc::too_few_columns: return "TooFewColumns";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace t2hilb
