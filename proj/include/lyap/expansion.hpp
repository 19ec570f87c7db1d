#ifndef LYAP_EXPANSION_HPP
#define LYAP_EXPANSION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lyap/markov.hpp"

namespace lyap {

struct CycleOptions {
  Real perron_tol = kDefaultPerronTol;
  int max_iter = kDefaultPerronMaxIter;
  int renorm_every = 8;
  /// Recompute the determinant factor from the characteristic polynomial and
  /// throw NonDominantRoot if the two routes disagree beyond `cross_check_tol`.
  bool cross_check = false;
  Real cross_check_tol = 1e-9;
};

/// One periodic-orbit summand of the trace formula.
struct CycleTerm {
  Word word;
  Real p_star = 0;      // cyclic probability
  Real log_lambda = 0;  // log Perron root of the cycle product
  Real det_factor = 1;  // det(I - DS) at the projective fixed point
  Real weight0 = 0;     // p_star / det_factor
  Real weight_d = 0;    // p_star * log_lambda / det_factor
};

CycleTerm cycle_term(std::span<const int> word, const MatrixEnsemble& e,
                     const CycleOptions& opts = {});

struct TraceOptions {
  CycleOptions cycle;
  /// Worker threads for the class sum; the result does not depend on it.
  unsigned threads = 1;
  std::uint64_t budget = kDefaultWordBudget;
};

/// tr(L_0^n) and d/dt tr(L_t^n) at t = 0.
struct TraceValue {
  Real value = 0;
  Real derivative = 0;
  std::uint64_t cycles = 0;   // k^n words represented
  std::size_t classes = 0;    // rotation classes actually evaluated
};

/// Sums cycle terms over rotation classes weighted by multiplicity, in
/// class order, with compensated summation merged over fixed-size chunks.
TraceValue trace(int n, const MatrixEnsemble& e, const TraceOptions& opts = {});

/// Determinant coefficients a_0..a_p at t = 0 and their t-derivatives;
/// index n holds a_n, with a_0 = 1 and a_0' = 0.
struct Coefficients {
  Vector a;
  Vector a_d;
};

/// Newton recursion n a_n = -sum_{m=1}^n T_m a_{n-m} and its t-derivative.
/// `traces0[m-1]` = T_m(0), `traces_d[m-1]` = T_m'(0).
Coefficients coefficients_recursive(std::span<const Real> traces0,
                                    std::span<const Real> traces_d, int p);

inline constexpr int kMaxPartitionOrder = 12;

/// Explicit sum over ordered compositions of n. Exponential cost; kept as an
/// independent check of coefficients_recursive. Throws BudgetExceeded for
/// p > kMaxPartitionOrder.
Coefficients coefficients_partition(std::span<const Real> traces0,
                                    std::span<const Real> traces_d, int p);

/// gamma^(m) = sum_{n<=m} a_n' / sum_{n<=m} n a_n for m = 1..p (entry m-1).
/// Throws DegenerateDenominator when a denominator vanishes.
Vector gamma_estimates(const Coefficients& c);

/// Everything computed for truncation orders 1..p; entry m-1 belongs to
/// order m. gaps[0] is NaN.
struct ExpansionState {
  int order = 0;
  Vector traces0;
  Vector traces_d;
  Vector coeffs0;
  Vector coeffs_d;
  Vector gamma;
  Vector gaps;
  std::vector<std::uint64_t> cycles;
  std::vector<std::size_t> classes;
  std::vector<double> seconds;  // wall time spent on each trace

  Real estimate() const { return gamma.back(); }
};

ExpansionState lyapunov_estimate(const MatrixEnsemble& e, int p, const TraceOptions& opts = {});

/// 1 + sum_{n=1}^p a_n z^n, with `coeffs0[n-1]` = a_n.
Real truncated_determinant(std::span<const Real> coeffs0, Real z);

/// Smallest positive zero of the truncated determinant: scans [0, z_max] on
/// a uniform grid for a sign change and bisects it. Throws NoSignChange.
Real smallest_positive_root(std::span<const Real> coeffs0, Real z_max = 16, int grid = 4096);

} // namespace lyap

#endif
