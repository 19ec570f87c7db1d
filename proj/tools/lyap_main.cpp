// lyap: top Lyapunov exponent of Markovian products of positive matrices.
//
//   lyap estimate  ENSEMBLE [--order p]
//   lyap simulate  ENSEMBLE [--steps N --trials T --seed S]
//   lyap compare   ENSEMBLE [--order p --steps N --trials T --seed S]
//   lyap diagnose  ENSEMBLE [--order p --samples N --seed S]
//
// Exit codes: 0 success, 1 comparison failure, 2 usage or validation error,
// 3 numerical failure.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lyap/commands.hpp"
#include "lyap/ensemble_io.hpp"

namespace {

struct CliOptions {
  std::string ensemble_path;
  std::string oracle_path;
  std::string output_path;
  std::string format = "csv";
  lyap::RunConfig cfg;
  unsigned threads = 1;
};

void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("ensemble", o.ensemble_path, "Ensemble JSON file")->required();
  sub->add_option("--output,-o", o.output_path, "Write the report here instead of stdout");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--precision", o.cfg.precision, "Significant digits")->check(CLI::Range(1, 21));
  sub->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
}

void add_order(CLI::App* sub, CliOptions& o) {
  sub->add_option("--order,-p", o.cfg.order, "Truncation order")->check(CLI::PositiveNumber);
}

void add_mc(CLI::App* sub, CliOptions& o) {
  sub->add_option("--steps", o.cfg.steps, "Steps per trial")->check(CLI::PositiveNumber);
  sub->add_option("--trials", o.cfg.trials, "Independent trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.cfg.seed, "Base seed");
}

int emit(const lyap::CommandResult& result, const CliOptions& o) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const std::string text = lyap::render(result.report, o.cfg.format);
  if (o.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << o.output_path << "\n";
      return lyap::kExitUsage;
    }
    out << text;
  }
  return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top Lyapunov exponent of Markovian products of positive matrices"};
  app.require_subcommand(1);
  CliOptions o;

  auto* estimate = app.add_subcommand("estimate", "Cycle-expansion estimates for orders 1..p");
  add_common(estimate, o);
  add_order(estimate, o);
  estimate->add_flag("--timing", o.cfg.timing, "Add a wall_time column");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate");
  add_common(simulate, o);
  add_mc(simulate, o);

  auto* compare = app.add_subcommand("compare", "Cycle expansion against Monte Carlo");
  add_common(compare, o);
  add_order(compare, o);
  add_mc(compare, o);
  compare->add_option("--oracle-ensemble", o.oracle_path,
                      "Ensemble for the Monte Carlo path; must match ENSEMBLE");

  auto* diagnose = app.add_subcommand("diagnose", "Contraction and determinant diagnostics");
  add_common(diagnose, o);
  add_order(diagnose, o);
  diagnose->add_option("--samples", o.cfg.samples, "Random pairs per check")->check(CLI::PositiveNumber);
  diagnose->add_option("--word-length", o.cfg.word_len, "Longest random word")->check(CLI::PositiveNumber);
  diagnose->add_option("--seed", o.cfg.seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lyap::kExitUsage;
  }

  o.cfg.format = *lyap::parse_format(o.format);
  o.cfg.threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;

  try {
    o.cfg.ensemble = lyap::load_ensemble(o.ensemble_path);
    if (!o.oracle_path.empty() && !(lyap::load_ensemble(o.oracle_path) == o.cfg.ensemble)) {
      std::cerr << "error: --oracle-ensemble differs from " << o.ensemble_path << "\n";
      return lyap::kExitUsage;
    }
    lyap::check_config(o.cfg);
  } catch (const lyap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lyap::kExitUsage;
  }

  try {
    if (estimate->parsed()) return emit(lyap::cmd_estimate(o.cfg), o);
    if (simulate->parsed()) return emit(lyap::cmd_simulate(o.cfg), o);
    if (compare->parsed()) return emit(lyap::cmd_compare(o.cfg), o);
    return emit(lyap::cmd_diagnose(o.cfg), o);
  } catch (const lyap::Error& e) {
    std::cerr << "error: " << lyap::to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == lyap::ErrorKind::InvalidArgument ? lyap::kExitUsage : lyap::kExitRuntime;
  }
}
