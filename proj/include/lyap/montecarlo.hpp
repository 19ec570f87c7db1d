#ifndef LYAP_MONTECARLO_HPP
#define LYAP_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "lyap/markov.hpp"
#include "lyap/projective.hpp"

namespace lyap {

/// Symbol path of the Markov chain: the first symbol is drawn from the
/// initial law, later ones from the row of the previous symbol. Uses the
/// same stream as trial 0 of mc_lyapunov.
std::vector<int> simulate_chain(const MatrixEnsemble& e, long steps, std::uint64_t seed);

struct McOptions {
  unsigned threads = 1;
  /// Take the log of the l1 norm and rescale after this many factors.
  int renorm_every = 1;
};

struct McEstimate {
  Real mean = 0;        // nats per step
  Real std_error = 0;   // sample std of trial means / sqrt(trials)
  long steps = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  bool std_error_undefined = false;  // trials == 1
  std::vector<Real> trial_means;
};

/// Furstenberg-Kesten estimate (1/n) log ||S_n 1||_1 averaged over
/// independent trials; trial t draws from stream seed ^ t.
McEstimate mc_lyapunov(const MatrixEnsemble& e, long steps, long trials, std::uint64_t seed,
                       const McOptions& opts = {});

/// Empirical check of d_H(Sx, Sy) <= r^n d_H(x, y) with r = max_i k(M_i),
/// over random words of length 1..word_len and random chart pairs.
/// `delta` and `birkhoff` report max_i Delta(M_i) and r.
ContractionReport contraction_check(const MatrixEnsemble& e, long samples, int word_len,
                                    std::uint64_t seed);

} // namespace lyap

#endif
