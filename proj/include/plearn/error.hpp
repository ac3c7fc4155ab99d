#ifndef PLEARN_ERROR_HPP
#define PLEARN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace plearn {

enum class ErrorCode {
  duplicate_feature_vector,
  schema_mismatch,
  empty_set,
  undefined_at,
  solver_diverged,
  incompatible_family,
  invalid_parameter,
  empty_neighborhood,
  k_exceeds_sample_size,
  empty_leaf,
  non_disjoint_value_sets,
  dimension_mismatch,
  infeasible_slack,
  box_too_large,
  exhausted_retries,
  parse_error,
  unknown_column_kind,
  model_format,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::duplicate_feature_vector: return "DuplicateFeatureVector";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::empty_set: return "EmptySet";
    case ErrorCode::undefined_at: return "UndefinedAt";
    case ErrorCode::solver_diverged: return "SolverDiverged";
    case ErrorCode::incompatible_family: return "IncompatibleFamily";
    case ErrorCode::invalid_parameter: return "InvalidParameter";
    case ErrorCode::empty_neighborhood: return "EmptyNeighborhood";
    case ErrorCode::k_exceeds_sample_size: return "KExceedsSampleSize";
    case ErrorCode::empty_leaf: return "EmptyLeaf";
    case ErrorCode::non_disjoint_value_sets: return "NonDisjointValueSets";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::infeasible_slack: return "InfeasibleSlack";
    case ErrorCode::box_too_large: return "BoxTooLarge";
    case ErrorCode::exhausted_retries: return "ExhaustedRetries";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::unknown_column_kind: return "UnknownColumnKind";
    case ErrorCode::model_format: return "ModelFormat";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plearn

#endif  // PLEARN_ERROR_HPP
