#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace sftdim {

enum class ErrorCode {
  parse,
  non_square,
  negative_entry,
  zero_row_or_column,
  reducible,
  not_primitive,
  no_convergence,
  dimension_mismatch,
  ambient_mismatch,
  flavor_mismatch,
  not_in_centralizer,
  invalid_witness,
  search_space_too_large,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::non_square: return "NonSquare";
    case ErrorCode::negative_entry: return "NegativeEntry";
    case ErrorCode::zero_row_or_column: return "ZeroRowOrColumn";
    case ErrorCode::reducible: return "Reducible";
    case ErrorCode::not_primitive: return "NotPrimitive";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::ambient_mismatch: return "AmbientMismatch";
    case ErrorCode::flavor_mismatch: return "FlavorMismatch";
    case ErrorCode::not_in_centralizer: return "NotInCentralizer";
    case ErrorCode::invalid_witness: return "InvalidWitness";
    case ErrorCode::search_space_too_large: return "SearchSpaceTooLarge";
  }
  return "Error";
}

/// All library failures. `row`/`col` name the offending entry when there is
/// one (validation and parse errors); for parse errors `row` is the 1-based
/// input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> row = std::nullopt,
        std::optional<std::size_t> col = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        row_(row),
        col_(col) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<std::size_t> col() const noexcept { return col_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
};

}  // namespace sftdim
