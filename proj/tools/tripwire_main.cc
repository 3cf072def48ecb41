#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tripwire/cli.h"
#include "tripwire/errors.h"

namespace {

constexpr int kExitInvalidArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

}  // namespace

int main(int argc, char** argv) {
  using tripwire::cli::Command;
  using tripwire::cli::OutputFormat;
  using tripwire::cli::RunConfig;

  CLI::App app{"Invisible quantum tripwire: partial-Zeno operating points, distances and "
               "Monte Carlo campaigns"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  std::vector<std::string> truths;
  std::string q_reference = "running";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--theta-total", cfg.theta_total,
                    "total rotation N*theta_N as a fraction of pi (0.5 = pi/2)");
    sub->add_option("--n", cfg.n_values, "number(s) of passes");
    sub->add_option("--out", cfg.output_path, "output file ('-' for stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* table1 = app.add_subcommand("table1", "operating points and distance ratios");
  add_common(table1);
  auto* curve = app.add_subcommand("curve", "no-object transmission versus controlled loss");
  add_common(curve);
  curve->add_option("--grid", cfg.lambda_grid_size, "number of loss grid points");
  auto* scaling = app.add_subcommand("scaling", "invisibility and error bound versus trials");
  add_common(scaling);
  scaling->add_option("--m", cfg.m_values, "trial counts M");
  auto* mc = app.add_subcommand("montecarlo", "seeded interrogation campaigns");
  add_common(mc);
  mc->add_option("--m", cfg.m_values, "trials per campaign");
  mc->add_option("--campaigns", cfg.campaigns, "campaigns per (N, M, truth)");
  mc->add_option("--truth", truths, "absent and/or present")
      ->check(CLI::IsMember({"absent", "present"}));
  mc->add_option("--extra-loss", cfg.noise.extra_loss, "environmental loss per pass");
  mc->add_option("--phase-sigma", cfg.noise.phase_sigma, "per-pass phase noise std (rad)");
  mc->add_option("--phase-offset", cfg.noise.phase_offset, "mean environmental phase (rad)");
  mc->add_option("--drift-seed", cfg.noise.drift_seed, "seed of the environment stream");
  mc->add_flag("--feedback", cfg.feedback, "re-tune loss and phase every 100 trials");
  mc->add_option("--q-reference", q_reference, "running or analytic")
      ->check(CLI::IsMember({"running", "analytic"}));
  mc->add_option("--transcript", cfg.transcript_path, "JSON-lines campaign transcript");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidArgs;
  }

  if (table1->parsed()) cfg.command = Command::Table1;
  if (curve->parsed()) cfg.command = Command::Curve;
  if (scaling->parsed()) cfg.command = Command::Scaling;
  if (mc->parsed()) cfg.command = Command::MonteCarlo;
  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  cfg.q_reference = q_reference == "analytic" ? tripwire::QReference::Analytic
                                              : tripwire::QReference::Running;
  cfg.seed_given = app.get_subcommands().front()->count("--seed") > 0;
  if (!truths.empty()) {
    cfg.truths.clear();
    for (const auto& t : truths) {
      cfg.truths.push_back(t == "present" ? tripwire::Hypothesis::ObjectPresent
                                          : tripwire::Hypothesis::ObjectAbsent);
    }
  }
  if (cfg.command == Command::MonteCarlo && !cfg.seed_given) {
    std::cerr << "warning: no --seed given, using default seed " << cfg.seed << '\n';
  }

  try {
    tripwire::cli::run(cfg);
  } catch (const tripwire::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const tripwire::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const tripwire::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const tripwire::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
