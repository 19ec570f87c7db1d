#ifndef LYAP_ERROR_HPP
#define LYAP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lyap {

enum class ErrorKind {
  NonPositiveEntry,
  SingularMatrix,
  IndexOutOfRange,
  NoConvergence,
  NonDominantRoot,
  DimensionMismatch,
  NonStochasticRow,
  NonPositiveTransition,
  BadInitialVector,
  BudgetExceeded,
  DegenerateDenominator,
  NoSignChange,
  ParseError,
  ValidationErrors,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// One violated precondition. `row`/`col` are zero-based and -1 when unused;
/// `matrix` names the ensemble member for matrix-level issues.
struct Issue {
  ErrorKind kind;
  int matrix = -1;
  int row = -1;
  int col = -1;
  std::string detail;

  std::string describe() const;
  bool operator==(const Issue&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a model fails validation; carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

} // namespace lyap

#endif
