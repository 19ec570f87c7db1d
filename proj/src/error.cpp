#include "lyap/error.hpp"

#include <sstream>

namespace lyap {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonDominantRoot: return "NonDominantRoot";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonStochasticRow: return "NonStochasticRow";
    case ErrorKind::NonPositiveTransition: return "NonPositiveTransition";
    case ErrorKind::BadInitialVector: return "BadInitialVector";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationErrors: return "ValidationErrors";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string Issue::describe() const {
  std::ostringstream out;
  out << to_string(kind);
  if (matrix >= 0) out << " in matrix " << matrix;
  if (row >= 0 && col >= 0) {
    out << " (" << row << ", " << col << ")";
  } else if (row >= 0) {
    out << " (" << row << ")";
  }
  if (!detail.empty()) out << ": " << detail;
  return out.str();
}

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string msg = "ensemble validation failed";
  for (const auto& issue : issues) {
    msg += "\n  ";
    msg += issue.describe();
  }
  return msg;
}

} // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(ErrorKind::ValidationErrors, join_issues(issues)),
      issues_(std::move(issues)) {}

} // namespace lyap
