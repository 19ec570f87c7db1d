#ifndef LYAP_MARKOV_HPP
#define LYAP_MARKOV_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lyap/linalg.hpp"

namespace lyap {

/// k strictly positive d x d matrices driven by a Markov chain with
/// strictly positive transition matrix `transition` (row i = law of the next
/// symbol after symbol i) and initial law `initial`.
///
/// `initial` only affects the first draw of the simulated chain; the cycle
/// expansion does not depend on it.
struct MatrixEnsemble {
  std::size_t dim = 0;
  std::vector<Matrix> matrices;
  Matrix transition;
  Vector initial;

  std::size_t symbols() const noexcept { return matrices.size(); }
  bool operator==(const MatrixEnsemble&) const = default;
};

inline constexpr Real kStochasticTol = 1e-12;

/// Every violated invariant, in a stable order; empty when valid.
std::vector<Issue> validate_ensemble(const MatrixEnsemble& e);

/// Throws ValidationError listing every issue.
void require_valid(const MatrixEnsemble& e);

/// Builds and validates an ensemble. An empty `initial` means uniform.
MatrixEnsemble make_ensemble(std::vector<Matrix> matrices, Matrix transition,
                             Vector initial = {});

/// Unique q with qP = q, sum q = 1. Direct solve up to 64 states, power
/// iteration above that.
Vector stationary_distribution(const Matrix& transition);

/// p(w1,w2) ... p(w_{n-1},w_n) p(w_n,w1).
Real cyclic_probability(std::span<const int> word, const Matrix& transition);

inline constexpr std::uint64_t kDefaultWordBudget = 100'000'000;

/// k^n, throwing BudgetExceeded above `budget`.
std::uint64_t word_count(int k, int n, std::uint64_t budget = kDefaultWordBudget);

/// Lexicographic stream over the k^n words of length n, restricted to the
/// index range [first, last).
class WordEnumerator {
 public:
  static constexpr std::uint64_t npos = std::numeric_limits<std::uint64_t>::max();

  WordEnumerator(int k, int n, std::uint64_t first = 0, std::uint64_t last = npos,
                 std::uint64_t budget = kDefaultWordBudget);

  bool next(Word& out);
  void reset();
  std::uint64_t size() const noexcept { return last_ - first_; }

  static Word word_at(int k, int n, std::uint64_t index);

 private:
  int k_;
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
  std::uint64_t pos_;
  Word current_;
};

/// One rotation class: lexicographically least representative and the
/// number of distinct rotations.
struct NecklaceClass {
  Word representative;
  int multiplicity = 0;

  int length() const noexcept { return static_cast<int>(representative.size()); }
};

/// Necklaces of length n over k symbols in lexicographic order
/// (Fredricksen-Kessler-Maiorana).
class NecklaceEnumerator {
 public:
  NecklaceEnumerator(int k, int n, std::uint64_t budget = kDefaultWordBudget);

  bool next(NecklaceClass& out);
  void reset();

 private:
  bool advance();

  int k_;
  int n_;
  std::vector<int> a_;  // 1-based prenecklace
  int period_ = 1;
  bool started_ = false;
  bool done_ = false;
};

std::vector<NecklaceClass> necklace_classes(int k, int n,
                                            std::uint64_t budget = kDefaultWordBudget);

} // namespace lyap

#endif
