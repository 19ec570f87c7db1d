#include "lyap/commands.hpp"

#include <cmath>
#include <limits>

#include "lyap/expansion.hpp"
#include "lyap/montecarlo.hpp"
#include "lyap/projective.hpp"

namespace lyap {

void check_config(const RunConfig& cfg) {
  if (cfg.order < 1) throw Error(ErrorKind::InvalidArgument, "--order must be >= 1");
  if (cfg.steps < 1) throw Error(ErrorKind::InvalidArgument, "--steps must be >= 1");
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be >= 1");
  if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "--samples must be >= 1");
  if (cfg.word_len < 1) throw Error(ErrorKind::InvalidArgument, "--word-length must be >= 1");
  if (cfg.precision < 1 || cfg.precision > 21) {
    throw Error(ErrorKind::InvalidArgument, "--precision must be in 1..21");
  }
}

namespace {

TraceOptions trace_options(const RunConfig& cfg) {
  TraceOptions opts;
  opts.threads = cfg.threads;
  return opts;
}

} // namespace

CommandResult cmd_estimate(const RunConfig& cfg) {
  check_config(cfg);
  const ExpansionState st = lyapunov_estimate(cfg.ensemble, cfg.order, trace_options(cfg));
  const int prec = cfg.precision;

  Table t{"estimate", {"order", "gamma", "gap", "a0", "a0_prime", "trace0", "trace0_prime", "cycles"}, {}};
  if (cfg.timing) t.columns.push_back("wall_time");
  for (int m = 1; m <= st.order; ++m) {
    const std::size_t i = static_cast<std::size_t>(m - 1);
    std::vector<Cell> row{
        Cell::integer(m),
        Cell::number(st.gamma[i], prec),
        m == 1 ? Cell::empty() : Cell::number(st.gaps[i], prec),
        Cell::number(st.coeffs0[i], prec),
        Cell::number(st.coeffs_d[i], prec),
        Cell::number(st.traces0[i], prec),
        Cell::number(st.traces_d[i], prec),
        Cell::integer(static_cast<std::int64_t>(st.cycles[i])),
    };
    if (cfg.timing) row.push_back(Cell::number(st.seconds[i], 6));
    t.rows.push_back(std::move(row));
  }
  std::vector<Cell> last(t.columns.size(), Cell::empty());
  last[0] = Cell::string("final");
  last[1] = Cell::number(st.estimate(), prec);
  t.rows.push_back(std::move(last));

  CommandResult out;
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  check_config(cfg);
  McOptions opts;
  opts.threads = cfg.threads;
  const McEstimate mc = mc_lyapunov(cfg.ensemble, cfg.steps, cfg.trials, cfg.seed, opts);

  CommandResult out;
  Table t{"simulate", {"mean", "stderr", "steps", "trials", "seed", "stderr_undefined"}, {}};
  t.rows.push_back({Cell::number(mc.mean, cfg.precision), Cell::number(mc.std_error, cfg.precision),
                    Cell::integer(mc.steps), Cell::integer(mc.trials),
                    Cell{std::to_string(mc.seed), true},
                    Cell::integer(mc.std_error_undefined ? 1 : 0)});
  if (mc.std_error_undefined) {
    out.warnings.push_back("a single trial has no sample deviation; stderr reported as 0");
  }
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_compare(const RunConfig& cfg) {
  check_config(cfg);
  const ExpansionState st = lyapunov_estimate(cfg.ensemble, cfg.order, trace_options(cfg));
  McOptions opts;
  opts.threads = cfg.threads;
  const McEstimate mc = mc_lyapunov(cfg.ensemble, cfg.steps, cfg.trials, cfg.seed, opts);

  const Real diff = st.estimate() - mc.mean;
  Real z;
  if (mc.std_error > 0) {
    z = diff / mc.std_error;
  } else {
    z = diff == 0 ? Real(0) : std::copysign(std::numeric_limits<Real>::infinity(), diff);
  }
  const bool pass = std::abs(z) <= 3;

  CommandResult out;
  Table t{"compare", {"order", "gamma", "mc_mean", "mc_stderr", "z", "verdict"}, {}};
  t.rows.push_back({Cell::integer(cfg.order), Cell::number(st.estimate(), cfg.precision),
                    Cell::number(mc.mean, cfg.precision), Cell::number(mc.std_error, cfg.precision),
                    Cell::number(z, cfg.precision), Cell::string(pass ? "PASS" : "FAIL")});
  if (mc.std_error_undefined) {
    out.warnings.push_back("a single trial has no sample deviation; stderr reported as 0");
  }
  out.report.tables.push_back(std::move(t));
  out.exit_code = pass ? kExitOk : kExitCompareFail;
  return out;
}

CommandResult cmd_diagnose(const RunConfig& cfg) {
  check_config(cfg);
  const MatrixEnsemble& e = cfg.ensemble;
  require_valid(e);
  const int prec = cfg.precision;

  Table mats{"matrices",
             {"index", "delta", "birkhoff", "sampled_max_ratio", "det_jacobian", "det_charpoly",
              "det_lemma_residual"},
             {}};
  for (std::size_t i = 0; i < e.symbols(); ++i) {
    const Matrix& m = e.matrices[i];
    const ContractionReport rep = birkhoff_coefficient(m, cfg.samples, cfg.seed + i);
    const PerronPair pp = perron(m);
    const Real via_jac = det_factor_at(m, ProjectivePoint::from_raw(pp.direction), pp.eigenvalue);
    const Real via_poly = det_factor_charpoly(m, pp.eigenvalue);
    mats.rows.push_back({Cell::integer(static_cast<std::int64_t>(i)), Cell::number(rep.delta, prec),
                         Cell::number(rep.birkhoff, prec), Cell::number(rep.max_ratio, prec),
                         Cell::number(via_jac, prec), Cell::number(via_poly, prec),
                         Cell::number(std::abs(via_jac - via_poly) / via_poly, prec)});
  }

  const ContractionReport cc = contraction_check(e, cfg.samples, cfg.word_len, cfg.seed);
  Table contraction{"contraction",
                    {"r", "word_length", "samples_checked", "samples_skipped", "max_ratio",
                     "max_violation"},
                    {}};
  contraction.rows.push_back({Cell::number(cc.birkhoff, prec), Cell::integer(cfg.word_len),
                              Cell::integer(cc.samples_checked), Cell::integer(cc.samples_skipped),
                              Cell::number(cc.max_ratio, prec), Cell::number(cc.max_violation, prec)});

  const ExpansionState st = lyapunov_estimate(e, cfg.order, trace_options(cfg));
  Table orders{"orders", {"order", "root"}, {}};
  for (int m = 1; m <= st.order; ++m) {
    const std::span<const Real> coeffs(st.coeffs0.data(), static_cast<std::size_t>(m));
    Cell root = Cell::empty();
    try {
      root = Cell::number(smallest_positive_root(coeffs), prec);
    } catch (const Error& ex) {
      if (ex.kind() != ErrorKind::NoSignChange) throw;
    }
    orders.rows.push_back({Cell::integer(m), std::move(root)});
  }

  CommandResult out;
  out.report.tables = {std::move(mats), std::move(contraction), std::move(orders)};
  return out;
}

} // namespace lyap
