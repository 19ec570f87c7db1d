#include "lyap/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lyap {

std::vector<Issue> validate_ensemble(const MatrixEnsemble& e) {
  std::vector<Issue> issues;
  const std::size_t k = e.symbols();
  if (e.dim < 1) issues.push_back({ErrorKind::DimensionMismatch, -1, -1, -1, "dimension must be >= 1"});
  if (k < 1) issues.push_back({ErrorKind::DimensionMismatch, -1, -1, -1, "need at least one matrix"});

  for (std::size_t m = 0; m < k; ++m) {
    const Matrix& a = e.matrices[m];
    if (a.dim() != e.dim) {
      issues.push_back({ErrorKind::DimensionMismatch, static_cast<int>(m), -1, -1,
                        "matrix is " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                            ", expected dimension " + std::to_string(e.dim)});
      continue;
    }
    if (auto issue = validate_positive(a)) {
      issue->matrix = static_cast<int>(m);
      issues.push_back(*issue);
    }
  }

  const Matrix& p = e.transition;
  if (p.dim() != k) {
    issues.push_back({ErrorKind::DimensionMismatch, -1, -1, -1,
                      "transition matrix must be " + std::to_string(k) + "x" + std::to_string(k)});
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      Real sum = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const Real v = p(i, j);
        if (!(v > 0)) {
          issues.push_back({ErrorKind::NonPositiveTransition, -1, static_cast<int>(i),
                            static_cast<int>(j), "transition probability must be > 0"});
        }
        sum += v;
      }
      if (!(std::abs(sum - 1) <= kStochasticTol)) {
        issues.push_back({ErrorKind::NonStochasticRow, -1, static_cast<int>(i), -1,
                          "row sums to " + std::to_string(static_cast<double>(sum))});
      }
    }
  }

  if (e.initial.size() != k) {
    issues.push_back({ErrorKind::BadInitialVector, -1, -1, -1,
                      "initial vector must have " + std::to_string(k) + " entries"});
  } else {
    Real sum = 0;
    bool negative = false;
    for (Real v : e.initial) {
      negative = negative || !(v >= 0);
      sum += v;
    }
    if (negative || !(std::abs(sum - 1) <= kStochasticTol)) {
      issues.push_back({ErrorKind::BadInitialVector, -1, -1, -1,
                        "initial vector must be non-negative and sum to 1"});
    }
  }
  return issues;
}

void require_valid(const MatrixEnsemble& e) {
  auto issues = validate_ensemble(e);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

MatrixEnsemble make_ensemble(std::vector<Matrix> matrices, Matrix transition, Vector initial) {
  MatrixEnsemble e;
  e.dim = matrices.empty() ? 0 : matrices.front().dim();
  e.matrices = std::move(matrices);
  e.transition = std::move(transition);
  if (initial.empty() && !e.matrices.empty()) {
    initial.assign(e.matrices.size(), Real(1) / static_cast<Real>(e.matrices.size()));
  }
  e.initial = std::move(initial);
  require_valid(e);
  return e;
}

Vector stationary_distribution(const Matrix& transition) {
  const std::size_t k = transition.dim();
  if (k == 0) throw Error(ErrorKind::DimensionMismatch, "empty transition matrix");
  if (k <= 64) {
    // (P^T - I) q = 0 with the last equation replaced by sum q = 1.
    Matrix a(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a(i, j) = transition(j, i) - (i == j ? 1 : 0);
    }
    for (std::size_t j = 0; j < k; ++j) a(k - 1, j) = 1;
    Vector rhs(k, 0);
    rhs[k - 1] = 1;
    return solve(std::move(a), std::move(rhs));
  }
  Vector q(k, Real(1) / static_cast<Real>(k));
  for (int it = 0; it < 100000; ++it) {
    Vector next(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) next[j] += q[i] * transition(i, j);
    }
    Real sum = 0, diff = 0;
    for (Real v : next) sum += v;
    for (std::size_t j = 0; j < k; ++j) {
      next[j] /= sum;
      diff = std::max(diff, std::abs(next[j] - q[j]));
    }
    q = std::move(next);
    if (diff <= 8 * kEpsilon) return q;
  }
  throw Error(ErrorKind::NoConvergence, "stationary distribution power iteration did not converge");
}

Real cyclic_probability(std::span<const int> word, const Matrix& transition) {
  if (word.empty()) throw Error(ErrorKind::InvalidArgument, "word must be non-empty");
  const int k = static_cast<int>(transition.dim());
  for (int s : word) {
    if (s < 0 || s >= k) throw Error(ErrorKind::IndexOutOfRange, "symbol " + std::to_string(s));
  }
  Real prob = 1;
  for (std::size_t j = 0; j + 1 < word.size(); ++j) prob *= transition(word[j], word[j + 1]);
  return prob * transition(word.back(), word.front());
}

std::uint64_t word_count(int k, int n, std::uint64_t budget) {
  if (k < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "need k >= 1 and n >= 1");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > budget / static_cast<std::uint64_t>(k)) {
      throw Error(ErrorKind::BudgetExceeded, std::to_string(k) + "^" + std::to_string(n) +
                                                 " words exceed the budget of " +
                                                 std::to_string(budget));
    }
    count *= static_cast<std::uint64_t>(k);
  }
  return count;
}

WordEnumerator::WordEnumerator(int k, int n, std::uint64_t first, std::uint64_t last,
                               std::uint64_t budget)
    : k_(k), n_(n) {
  const std::uint64_t total = word_count(k, n, budget);
  last_ = std::min(last, total);
  first_ = std::min(first, last_);
  reset();
}

Word WordEnumerator::word_at(int k, int n, std::uint64_t index) {
  Word w(static_cast<std::size_t>(n), 0);
  for (int i = n; i-- > 0;) {
    w[i] = static_cast<int>(index % static_cast<std::uint64_t>(k));
    index /= static_cast<std::uint64_t>(k);
  }
  return w;
}

void WordEnumerator::reset() {
  pos_ = first_;
  current_ = word_at(k_, n_, first_);
}

bool WordEnumerator::next(Word& out) {
  if (pos_ >= last_) return false;
  out = current_;
  ++pos_;
  // odometer increment, last symbol fastest
  for (int i = n_; i-- > 0;) {
    if (++current_[i] < k_) break;
    current_[i] = 0;
  }
  return true;
}

NecklaceEnumerator::NecklaceEnumerator(int k, int n, std::uint64_t budget) : k_(k), n_(n) {
  word_count(k, n, budget);
  reset();
}

void NecklaceEnumerator::reset() {
  a_.assign(static_cast<std::size_t>(n_) + 1, 0);
  period_ = 1;
  started_ = false;
  done_ = false;
}

bool NecklaceEnumerator::advance() {
  int i = n_;
  while (i > 0 && a_[i] == k_ - 1) --i;
  if (i == 0) return false;
  ++a_[i];
  period_ = i;
  for (int j = i + 1; j <= n_; ++j) a_[j] = a_[j - i];
  return true;
}

bool NecklaceEnumerator::next(NecklaceClass& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
  } else if (!advance()) {
    done_ = true;
    return false;
  }
  // prenecklaces whose Lyndon prefix length divides n are necklaces
  while (n_ % period_ != 0) {
    if (!advance()) {
      done_ = true;
      return false;
    }
  }
  out.representative.assign(a_.begin() + 1, a_.end());
  out.multiplicity = period_;
  return true;
}

std::vector<NecklaceClass> necklace_classes(int k, int n, std::uint64_t budget) {
  NecklaceEnumerator gen(k, n, budget);
  std::vector<NecklaceClass> out;
  NecklaceClass c;
  while (gen.next(c)) out.push_back(c);
  return out;
}

} // namespace lyap
