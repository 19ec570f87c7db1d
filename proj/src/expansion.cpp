#include "lyap/expansion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "lyap/projective.hpp"
#include "lyap/summation.hpp"

namespace lyap {

CycleTerm cycle_term(std::span<const int> word, const MatrixEnsemble& e, const CycleOptions& opts) {
  CycleTerm t;
  t.word.assign(word.begin(), word.end());
  t.p_star = cyclic_probability(word, e.transition);

  // The determinant factor only sees eigenvalue ratios, so the scaled
  // product carries all the information needed apart from log_scale.
  const ScaledMatrix s = scaled_cycle_product(word, e.matrices, opts.renorm_every);
  const PerronPair pp = perron(s.matrix, opts.perron_tol, opts.max_iter);
  t.log_lambda = std::log(pp.eigenvalue) + s.log_scale;
  t.det_factor = det_factor_at(s.matrix, ProjectivePoint::from_raw(pp.direction), pp.eigenvalue);
  if (!(t.det_factor > 0)) {
    throw Error(ErrorKind::NonDominantRoot, "non-positive determinant factor for a cycle product");
  }
  if (opts.cross_check) {
    const Real alt = det_factor_charpoly(s.matrix, pp.eigenvalue);
    if (std::abs(alt - t.det_factor) > opts.cross_check_tol * alt) {
      throw Error(ErrorKind::NonDominantRoot,
                  "determinant factor routes disagree: jacobian " +
                      std::to_string(static_cast<double>(t.det_factor)) + ", charpoly " +
                      std::to_string(static_cast<double>(alt)));
    }
  }
  t.weight0 = t.p_star / t.det_factor;
  t.weight_d = t.p_star * t.log_lambda / t.det_factor;
  return t;
}

namespace {

constexpr std::size_t kClassesPerChunk = 32;

struct ChunkSum {
  KahanSum value;
  KahanSum derivative;
};

} // namespace

TraceValue trace(int n, const MatrixEnsemble& e, const TraceOptions& opts) {
  const int k = static_cast<int>(e.symbols());
  TraceValue out;
  out.cycles = word_count(k, n, opts.budget);
  const std::vector<NecklaceClass> classes = necklace_classes(k, n, opts.budget);
  out.classes = classes.size();

  const std::size_t chunks = (classes.size() + kClassesPerChunk - 1) / kClassesPerChunk;
  std::vector<ChunkSum> partial(chunks);
  std::vector<std::exception_ptr> failures(chunks);

  auto run_chunk = [&](std::size_t c) {
    try {
      const std::size_t lo = c * kClassesPerChunk;
      const std::size_t hi = std::min(classes.size(), lo + kClassesPerChunk);
      for (std::size_t i = lo; i < hi; ++i) {
        const CycleTerm term = cycle_term(classes[i].representative, e, opts.cycle);
        const Real mult = static_cast<Real>(classes[i].multiplicity);
        partial[c].value.add(mult * term.weight0);
        partial[c].derivative.add(mult * term.weight_d);
      }
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, opts.threads), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  KahanSum value, derivative;
  for (const auto& p : partial) {
    value.merge(p.value);
    derivative.merge(p.derivative);
  }
  out.value = value.value();
  out.derivative = derivative.value();
  return out;
}

namespace {

void check_trace_lengths(std::span<const Real> traces0, std::span<const Real> traces_d, int p) {
  if (p < 0) throw Error(ErrorKind::InvalidArgument, "order must be non-negative");
  const auto need = static_cast<std::size_t>(p);
  if (traces0.size() < need || traces_d.size() < need) {
    throw Error(ErrorKind::InvalidArgument, "need at least p traces");
  }
}

} // namespace

Coefficients coefficients_recursive(std::span<const Real> traces0, std::span<const Real> traces_d,
                                    int p) {
  check_trace_lengths(traces0, traces_d, p);
  Coefficients c;
  c.a.assign(static_cast<std::size_t>(p) + 1, 0);
  c.a_d.assign(static_cast<std::size_t>(p) + 1, 0);
  c.a[0] = 1;
  for (int n = 1; n <= p; ++n) {
    KahanSum s, sd;
    for (int m = 1; m <= n; ++m) {
      s.add(traces0[m - 1] * c.a[n - m]);
      sd.add(traces_d[m - 1] * c.a[n - m]);
      sd.add(traces0[m - 1] * c.a_d[n - m]);
    }
    c.a[n] = -s.value() / n;
    c.a_d[n] = -sd.value() / n;
  }
  return c;
}

Coefficients coefficients_partition(std::span<const Real> traces0, std::span<const Real> traces_d,
                                    int p) {
  if (p > kMaxPartitionOrder) {
    throw Error(ErrorKind::BudgetExceeded, "partition formula limited to order " +
                                               std::to_string(kMaxPartitionOrder));
  }
  check_trace_lengths(traces0, traces_d, p);
  Coefficients c;
  c.a.assign(static_cast<std::size_t>(p) + 1, 0);
  c.a_d.assign(static_cast<std::size_t>(p) + 1, 0);
  c.a[0] = 1;

  std::vector<int> parts;
  for (int n = 1; n <= p; ++n) {
    KahanSum s, sd;
    // Bit b of `cuts` set means a part boundary after position b + 1.
    for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
      parts.clear();
      int start = 0;
      for (int b = 0; b < n - 1; ++b) {
        if (cuts & (1u << b)) {
          parts.push_back(b + 1 - start);
          start = b + 1;
        }
      }
      parts.push_back(n - start);

      const int l = static_cast<int>(parts.size());
      Real sign_over_fact = (l % 2 == 0) ? 1 : -1;
      for (int i = 2; i <= l; ++i) sign_over_fact /= i;

      Real prod = 1;
      for (int part : parts) prod *= traces0[part - 1] / part;
      // product rule over the factors
      Real dprod = 0;
      for (int j = 0; j < l; ++j) {
        Real term = traces_d[parts[j] - 1] / parts[j];
        for (int i = 0; i < l; ++i) {
          if (i != j) term *= traces0[parts[i] - 1] / parts[i];
        }
        dprod += term;
      }
      s.add(sign_over_fact * prod);
      sd.add(sign_over_fact * dprod);
    }
    c.a[n] = s.value();
    c.a_d[n] = sd.value();
  }
  return c;
}

Vector gamma_estimates(const Coefficients& c) {
  const std::size_t p = c.a.size() - 1;
  Vector gamma(p);
  KahanSum num, den;
  for (std::size_t n = 1; n <= p; ++n) {
    num.add(c.a_d[n]);
    den.add(static_cast<Real>(n) * c.a[n]);
    const Real d = den.value();
    if (!(std::abs(d) >= Real(1e-300))) {
      throw Error(ErrorKind::DegenerateDenominator,
                  "sum of n a_n(0) vanishes at order " + std::to_string(n));
    }
    gamma[n - 1] = num.value() / d;
  }
  return gamma;
}

ExpansionState lyapunov_estimate(const MatrixEnsemble& e, int p, const TraceOptions& opts) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  require_valid(e);

  ExpansionState st;
  st.order = p;
  for (int n = 1; n <= p; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const TraceValue tv = trace(n, e, opts);
    st.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    st.traces0.push_back(tv.value);
    st.traces_d.push_back(tv.derivative);
    st.cycles.push_back(tv.cycles);
    st.classes.push_back(tv.classes);
  }
  const Coefficients c = coefficients_recursive(st.traces0, st.traces_d, p);
  st.coeffs0.assign(c.a.begin() + 1, c.a.end());
  st.coeffs_d.assign(c.a_d.begin() + 1, c.a_d.end());
  st.gamma = gamma_estimates(c);
  st.gaps.assign(static_cast<std::size_t>(p), std::numeric_limits<Real>::quiet_NaN());
  for (int m = 2; m <= p; ++m) st.gaps[m - 1] = std::abs(st.gamma[m - 1] - st.gamma[m - 2]);
  return st;
}

Real truncated_determinant(std::span<const Real> coeffs0, Real z) {
  Real acc = 0;
  for (std::size_t i = coeffs0.size(); i-- > 0;) acc = (acc + coeffs0[i]) * z;
  return 1 + acc;
}

Real smallest_positive_root(std::span<const Real> coeffs0, Real z_max, int grid) {
  if (!(z_max > 0) || grid < 1) throw Error(ErrorKind::InvalidArgument, "bad root search window");
  Real lo = 0;
  for (int i = 1; i <= grid; ++i) {
    const Real hi = z_max * static_cast<Real>(i) / static_cast<Real>(grid);
    const Real f_hi = truncated_determinant(coeffs0, hi);
    if (f_hi == 0) return hi;
    if (f_hi < 0) {
      // f(a) > 0 > f(b)
      Real a = lo, b = hi;
      for (int it = 0; it < 200; ++it) {
        const Real mid = a + (b - a) / 2;
        if (mid <= a || mid >= b) break;
        const Real f_mid = truncated_determinant(coeffs0, mid);
        if (f_mid == 0) return mid;
        (f_mid > 0 ? a : b) = mid;
      }
      return a + (b - a) / 2;
    }
    lo = hi;
  }
  throw Error(ErrorKind::NoSignChange, "truncated determinant has no sign change on [0, " +
                                           std::to_string(static_cast<double>(z_max)) + "]");
}

} // namespace lyap
