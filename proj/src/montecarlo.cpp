#include "lyap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "lyap/rng.hpp"
#include "lyap/summation.hpp"

namespace lyap {

namespace {

// Cumulative laws in double; the oracle does not need extended precision.
class ChainSampler {
 public:
  explicit ChainSampler(const MatrixEnsemble& e) : k_(e.symbols()) {
    initial_ = cumulative(e.initial);
    rows_.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) rows_.push_back(cumulative(e.transition.row(i)));
  }

  int first(Engine& eng) const { return draw(initial_, eng); }
  int next(int current, Engine& eng) const { return draw(rows_[current], eng); }

 private:
  static std::vector<double> cumulative(std::span<const Real> law) {
    std::vector<double> c(law.size());
    double acc = 0;
    for (std::size_t i = 0; i < law.size(); ++i) {
      acc += static_cast<double>(law[i]);
      c[i] = acc;
    }
    return c;
  }

  static int draw(const std::vector<double>& cum, Engine& eng) {
    const double u = uniform01(eng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum.begin(),
                                                     static_cast<std::ptrdiff_t>(cum.size()) - 1));
  }

  std::size_t k_;
  std::vector<double> initial_;
  std::vector<std::vector<double>> rows_;
};

Real run_trial(const MatrixEnsemble& e, const ChainSampler& sampler,
               const std::vector<std::vector<double>>& mats, long steps, std::uint64_t seed,
               long trial, int renorm_every) {
  const std::size_t d = e.dim;
  Engine eng = make_stream(seed, static_cast<std::uint64_t>(trial));
  std::vector<double> v(d, 1.0), w(d);
  KahanSum acc;
  int symbol = sampler.first(eng);
  for (long s = 0; s < steps; ++s) {
    if (s > 0) symbol = sampler.next(symbol, eng);
    const std::vector<double>& m = mats[symbol];
    for (std::size_t i = 0; i < d; ++i) {
      double r = 0;
      for (std::size_t j = 0; j < d; ++j) r += m[i * d + j] * v[j];
      w[i] = r;
    }
    std::swap(v, w);
    if ((s + 1) % renorm_every == 0 || s + 1 == steps) {
      double norm = 0;
      for (double x : v) norm += x;
      acc.add(static_cast<Real>(std::log(norm)));
      for (double& x : v) x /= norm;
    }
  }
  return acc.value() / static_cast<Real>(steps);
}

} // namespace

std::vector<int> simulate_chain(const MatrixEnsemble& e, long steps, std::uint64_t seed) {
  require_valid(e);
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  const ChainSampler sampler(e);
  Engine eng = make_stream(seed, 0);
  std::vector<int> path(static_cast<std::size_t>(steps));
  path[0] = sampler.first(eng);
  for (long s = 1; s < steps; ++s) path[s] = sampler.next(path[s - 1], eng);
  return path;
}

McEstimate mc_lyapunov(const MatrixEnsemble& e, long steps, long trials, std::uint64_t seed,
                       const McOptions& opts) {
  require_valid(e);
  if (steps < 1 || trials < 1) throw Error(ErrorKind::InvalidArgument, "steps and trials must be >= 1");
  if (opts.renorm_every < 1) throw Error(ErrorKind::InvalidArgument, "renorm_every must be >= 1");

  const ChainSampler sampler(e);
  std::vector<std::vector<double>> mats;
  for (const Matrix& m : e.matrices) {
    std::vector<double> flat;
    for (Real x : m.data()) flat.push_back(static_cast<double>(x));
    mats.push_back(std::move(flat));
  }

  McEstimate out;
  out.steps = steps;
  out.trials = trials;
  out.seed = seed;
  out.trial_means.assign(static_cast<std::size_t>(trials), 0);

  const std::size_t workers = std::min<std::size_t>(std::max(1u, opts.threads),
                                                    static_cast<std::size_t>(trials));
  auto run_range = [&](std::size_t w) {
    for (long t = static_cast<long>(w); t < trials; t += static_cast<long>(workers)) {
      out.trial_means[t] = run_trial(e, sampler, mats, steps, seed, t, opts.renorm_every);
    }
  };
  if (workers <= 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
  }

  KahanSum sum;
  for (Real m : out.trial_means) sum.add(m);
  out.mean = sum.value() / static_cast<Real>(trials);
  if (trials == 1) {
    out.std_error = 0;
    out.std_error_undefined = true;
  } else {
    KahanSum sq;
    for (Real m : out.trial_means) sq.add((m - out.mean) * (m - out.mean));
    const Real var = sq.value() / static_cast<Real>(trials - 1);
    out.std_error = std::sqrt(var / static_cast<Real>(trials));
  }
  return out;
}

ContractionReport contraction_check(const MatrixEnsemble& e, long samples, int word_len,
                                    std::uint64_t seed) {
  require_valid(e);
  if (samples < 1 || word_len < 1) {
    throw Error(ErrorKind::InvalidArgument, "samples and word length must be >= 1");
  }
  ContractionReport rep;
  rep.max_violation = -std::numeric_limits<Real>::infinity();
  for (const Matrix& m : e.matrices) {
    const ContractionReport single = birkhoff_coefficient(m);
    rep.delta = std::max(rep.delta, single.delta);
    rep.birkhoff = std::max(rep.birkhoff, single.birkhoff);
  }

  Engine eng = make_stream(seed);
  const int k = static_cast<int>(e.symbols());
  Word word;
  for (long s = 0; s < samples; ++s) {
    const int n = 1 + static_cast<int>(uniform01(eng) * word_len);
    word.resize(static_cast<std::size_t>(n));
    for (int& sym : word) sym = std::min(k - 1, static_cast<int>(uniform01(eng) * k));
    const Matrix product = scaled_cycle_product(word, e.matrices).matrix;
    const ProjectivePoint x = random_chart_point(e.dim, eng);
    const ProjectivePoint y = random_chart_point(e.dim, eng);
    record_contraction_sample(rep, product, std::pow(rep.birkhoff, static_cast<Real>(n)), x, y);
  }
  return rep;
}

} // namespace lyap
