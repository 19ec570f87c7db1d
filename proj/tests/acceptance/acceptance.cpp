// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lyap/commands.hpp"
#include "lyap/expansion.hpp"
#include "lyap/montecarlo.hpp"
#include "../test_support.hpp"

using namespace lyap;
using namespace lyap::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, <= 0 for none
  std::function<void(Outcome&)> body;
};

std::string sci(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3Le", v);
  return buf;
}

Real rel(Real a, Real b) { return std::abs(a - b) / std::max(std::abs(b), Real(1e-300)); }

MatrixEnsemble scaled(const MatrixEnsemble& e, Real c) {
  std::vector<Matrix> mats;
  for (const auto& m : e.matrices) mats.push_back(c * m);
  return make_ensemble(std::move(mats), e.transition, e.initial);
}

MatrixEnsemble relabeled(const MatrixEnsemble& e, const std::vector<int>& perm) {
  const std::size_t k = e.symbols();
  std::vector<Matrix> mats(k, Matrix(e.dim));
  Matrix p(k);
  Vector init(k);
  for (std::size_t i = 0; i < k; ++i) {
    mats[perm[i]] = e.matrices[i];
    init[perm[i]] = e.initial[i];
    for (std::size_t j = 0; j < k; ++j) p(perm[i], perm[j]) = e.transition(i, j);
  }
  return make_ensemble(std::move(mats), std::move(p), std::move(init));
}

// Every word separately, determinant factor from the characteristic polynomial.
std::pair<Real, Real> brute_trace(int n, const MatrixEnsemble& e) {
  Real t0 = 0, td = 0;
  WordEnumerator words(static_cast<int>(e.symbols()), n);
  Word w;
  while (words.next(w)) {
    Real p = 1;
    for (std::size_t i = 0; i < w.size(); ++i) p *= e.transition(w[i], w[(i + 1) % w.size()]);
    const ScaledMatrix s = scaled_cycle_product(w, e.matrices);
    const PerronPair pp = perron(s.matrix);
    const Real det = det_factor_charpoly(s.matrix, pp.eigenvalue);
    t0 += p / det;
    td += p * (std::log(pp.eigenvalue) + s.log_scale) / det;
  }
  return {t0, td};
}

void single_matrix_exactness(Outcome& out) {
  const Real expected = std::log(golden_lambda());
  const ExpansionState st = lyapunov_estimate(single_matrix(), 8);
  Real worst = 0;
  for (Real g : st.gamma) worst = std::max(worst, std::abs(g - expected));
  out.require(st.gamma.size() == 8, "eight orders");
  out.require(worst <= 1e-12, "|gamma - log lambda| <= 1e-12");
  out.detail << "max |err| " << sci(worst);
}

void scalar_exactness(Outcome& out) {
  const Real l2 = std::log(Real(2)), l8 = std::log(Real(8));
  const ExpansionState sym = lyapunov_estimate(scalar_pair(), 2);
  Real worst = 0;
  for (Real g : sym.gamma) worst = std::max(worst, std::abs(g - 2 * l2));
  out.require(worst <= 1e-12, "symmetric P within 1e-12");

  const ExpansionState gen = lyapunov_estimate(scalar_pair(Matrix{{0.6, 0.4}, {0.3, 0.7}}), 8);
  const Real err = std::abs(gen.estimate() - (3 * l2 + 4 * l8) / 7);
  out.require(err < 1e-6, "general P within 1e-6");
  out.detail << "symmetric " << sci(worst) << ", general " << sci(err);
}

void determinant_lemma(Outcome& out) {
  std::mt19937_64 gen(20240501);
  Real worst_lemma = 0, worst_fd = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 5;
    const Matrix a = random_positive(gen, d);
    const PerronPair pp = perron(a);
    const Real via_jac = det_factor_jacobian(a);
    const Real via_poly = det_factor_charpoly(a, pp.eigenvalue);
    worst_lemma = std::max(worst_lemma, std::abs(via_jac - via_poly) / via_poly);

    const ProjectivePoint s = ProjectivePoint::from_raw(pp.direction);
    const Matrix closed = jacobian(a, s, pp.eigenvalue);
    const Matrix fd = finite_difference_jacobian(a, s);
    for (int r = 0; r < d - 1; ++r) {
      for (int c = 0; c < d - 1; ++c) {
        worst_fd = std::max(worst_fd, std::abs(closed(r, c) - fd(r, c)) /
                                          std::max(Real(1), std::abs(fd(r, c))));
      }
    }
  }
  out.require(worst_lemma <= 1e-9, "determinant routes within 1e-9");
  out.require(worst_fd <= 1e-6, "Jacobian within 1e-6 of finite differences");
  out.detail << "lemma " << sci(worst_lemma) << ", finite-diff " << sci(worst_fd);
}

void trace_oracles(Outcome& out) {
  std::mt19937_64 gen(77);
  Real worst_coef = 0;
  for (int trial = 0; trial < 27; ++trial) {
    const MatrixEnsemble e = random_ensemble(gen, 1 + trial % 3, 1 + (trial / 3) % 3);
    Vector t0, td;
    for (int n = 1; n <= 6; ++n) {
      const TraceValue t = trace(n, e);
      t0.push_back(t.value);
      td.push_back(t.derivative);
    }
    const Coefficients r = coefficients_recursive(t0, td, 6);
    const Coefficients p = coefficients_partition(t0, td, 6);
    for (int n = 0; n <= 6; ++n) {
      worst_coef = std::max(worst_coef, std::abs(r.a[n] - p.a[n]) / std::max(Real(1), std::abs(p.a[n])));
      worst_coef =
          std::max(worst_coef, std::abs(r.a_d[n] - p.a_d[n]) / std::max(Real(1), std::abs(p.a_d[n])));
    }
  }
  out.require(worst_coef <= 1e-10, "recursion matches compositions");

  Real worst_neck = 0, worst_pstar = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int d = 1; d <= 3; ++d) {
      const MatrixEnsemble e = random_ensemble(gen, k, d);
      Matrix pn = e.transition;
      for (int n = 1; n <= 8; ++n) {
        const TraceValue t = trace(n, e);
        const auto [b0, bd] = brute_trace(n, e);
        worst_neck = std::max({worst_neck, rel(t.value, b0), rel(t.derivative, bd)});
        if (d == 1) {
          Real total = 0;
          WordEnumerator words(k, n);
          Word w;
          while (words.next(w)) total += cyclic_probability(w, e.transition);
          worst_pstar = std::max(worst_pstar, rel(total, pn.trace()));
        }
        pn = pn * e.transition;
      }
    }
  }
  out.require(worst_neck <= 1e-12, "necklace sum matches all words");
  out.require(worst_pstar <= 1e-12, "sum of p* matches trace(P^n)");
  out.detail << "coefficients " << sci(worst_coef) << ", necklace " << sci(worst_neck) << ", p* "
             << sci(worst_pstar);
}

void monte_carlo_agreement(Outcome& out) {
  const MatrixEnsemble e = markov_pair();
  const Real gamma = lyapunov_estimate(e, 10).estimate();
  McOptions opts;
  opts.threads = std::max(1u, std::thread::hardware_concurrency());
  const McEstimate mc = mc_lyapunov(e, 1000000, 16, 1, opts);
  const Real diff = std::abs(gamma - mc.mean);
  out.require(mc.std_error > 0, "nonzero stderr");
  out.require(diff <= 3 * mc.std_error, "|gamma - mean| <= 3 stderr");
  out.detail << "gamma " << sci(gamma) << ", mean " << sci(mc.mean) << ", z "
             << sci(diff / mc.std_error);
}

void convergence_shape(Outcome& out) {
  const ExpansionState st = lyapunov_estimate(markov_pair(), 10);
  for (int m = 3; m <= 10; ++m) {
    out.require(st.gaps[m - 1] < st.gaps[m - 2], "gap " + std::to_string(m) + " decreases");
  }
  out.require(st.gaps[9] < 1e-8, "gap at order 10 below 1e-8");
  out.detail << "gap3 " << sci(st.gaps[2]) << ", gap10 " << sci(st.gaps[9]);
}

void invariance(Outcome& out) {
  std::mt19937_64 gen(4242);
  std::vector<MatrixEnsemble> ensembles{markov_pair()};
  for (int i = 0; i < 4; ++i) ensembles.push_back(random_ensemble(gen, 2 + i % 2, 2 + i % 3));

  Real worst_scale = 0, worst_perm = 0, worst_rot = 0;
  for (const MatrixEnsemble& e : ensembles) {
    const Real base = lyapunov_estimate(e, 6).estimate();
    for (Real c : {Real(0.5), Real(3)}) {
      worst_scale = std::max(worst_scale,
                             std::abs(lyapunov_estimate(scaled(e, c), 6).estimate() - base - std::log(c)));
    }
    std::vector<int> perm(e.symbols());
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      worst_perm =
          std::max(worst_perm, std::abs(lyapunov_estimate(relabeled(e, perm), 6).estimate() - base));
    }
    const int k = static_cast<int>(e.symbols());
    for (int trial = 0; trial < 20; ++trial) {
      Word w(static_cast<std::size_t>(2 + trial % 7));
      for (int& s : w) s = static_cast<int>(gen() % static_cast<unsigned>(k));
      const CycleTerm t = cycle_term(w, e);
      Word r = w;
      for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        const CycleTerm u = cycle_term(r, e);
        worst_rot = std::max({worst_rot, rel(u.weight0, t.weight0), rel(u.weight_d, t.weight_d)});
      }
    }
  }
  out.require(worst_scale <= 1e-10, "scaling covariance within 1e-10");
  out.require(worst_perm <= 1e-12, "relabeling within 1e-12");
  out.require(worst_rot <= 1e-10, "rotation within 1e-10");
  out.detail << "scale " << sci(worst_scale) << ", relabel " << sci(worst_perm) << ", rotate "
             << sci(worst_rot);
}

void contraction(Outcome& out) {
  const ContractionReport r = contraction_check(markov_pair(), 1000, 6, 1);
  out.require(r.samples_checked + r.samples_skipped == 1000, "1000 samples");
  out.require(r.max_ratio <= 1 + 1e-12, "max ratio <= 1 + 1e-12");
  Real worst = r.max_ratio;
  std::mt19937_64 gen(99);
  for (int d = 2; d <= 5; ++d) {
    const ContractionReport rr = contraction_check(random_ensemble(gen, 3, d), 1000, 6, d);
    out.require(rr.max_ratio <= 1 + 1e-12, "random ensemble d=" + std::to_string(d));
    worst = std::max(worst, rr.max_ratio);
  }
  out.detail << "Markov pair " << sci(r.max_ratio) << ", worst " << sci(worst);
}

void determinism(Outcome& out) {
  RunConfig cfg;
  cfg.ensemble = markov_pair();
  cfg.order = 10;
  cfg.steps = 100000;
  cfg.trials = 8;
  cfg.seed = 7;
  int compared = 0;
  for (Format fmt : {Format::Csv, Format::Json}) {
    cfg.format = fmt;
    cfg.threads = 1;
    const std::string est = render(cmd_estimate(cfg).report, fmt);
    const std::string sim = render(cmd_simulate(cfg).report, fmt);
    for (unsigned threads : {1u, 2u, 4u, 8u}) {
      cfg.threads = threads;
      out.require(render(cmd_estimate(cfg).report, fmt) == est, "estimate bytes");
      out.require(render(cmd_simulate(cfg).report, fmt) == sim, "simulate bytes");
      compared += 2;
    }
  }
  out.detail << compared << " repeated runs identical";
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "single-matrix exactness", 1, single_matrix_exactness},
      {2, "scalar exactness", 1, scalar_exactness},
      {3, "modified determinant lemma", 10, determinant_lemma},
      {4, "trace-formula oracles", 30, trace_oracles},
      {5, "Monte Carlo agreement", 60, monte_carlo_agreement},
      {6, "convergence shape", 0, convergence_shape},
      {7, "invariance suite", 10, invariance},
      {8, "contraction diagnostics", 10, contraction},
      {9, "determinism", 0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      out.pass = false;
      out.detail << "; over time limit " << c.time_limit << " s";
    }
    std::printf("[%s] %d %s: %s (%.3f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.str().c_str(), secs);
    if (!out.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
