#pragma once

#include <stdexcept>
#include <string>

namespace ifstk {

enum class errc {
  not_expanding,
  duplicate_digit,
  budget_exceeded,
  level_zero,
  max_terms_exceeded,
  not_similarity,
  wrong_family,
  singular_matrix,
  size_mismatch,
  empty_after_exclusion,
  empty_set,
  degenerate_fit,
  non_hermitian_drift,
  invalid_bounds,
  parse_error,
  schema_error,
  invalid_argument,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_expanding:         return "NotExpanding";
    case errc::duplicate_digit:       return "DuplicateDigit";
    case errc::budget_exceeded:       return "BudgetExceeded";
    case errc::level_zero:            return "LevelZero";
    case errc::max_terms_exceeded:    return "MaxTermsExceeded";
    case errc::not_similarity:        return "NotSimilarity";
    case errc::wrong_family:          return "WrongFamily";
    case errc::singular_matrix:       return "SingularMatrix";
    case errc::size_mismatch:         return "SizeMismatch";
    case errc::empty_after_exclusion: return "EmptyAfterExclusion";
    case errc::empty_set:             return "EmptySet";
    case errc::degenerate_fit:        return "DegenerateFit";
    case errc::non_hermitian_drift:   return "NonHermitianDrift";
    case errc::invalid_bounds:        return "InvalidBounds";
    case errc::parse_error:           return "ParseError";
    case errc::schema_error:          return "SchemaError";
    case errc::invalid_argument:      return "InvalidArgument";
    case errc::io_error:              return "IoError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace ifstk
