#include "tripwire/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <type_traits>

#include "json.hpp"
#include "tripwire/errors.h"
#include "tripwire/hypothesis_stats.h"
#include "tripwire/zeno_optimizer.h"

namespace tripwire::cli {
namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double angle(double fraction_of_pi) { return fraction_of_pi * std::numbers::pi; }

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

const char* to_string(QReference q) { return q == QReference::Running ? "running" : "analytic"; }

std::string default_extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

double binomial_sigma(double prob, std::int64_t n) {
  return std::sqrt(prob * (1.0 - prob) / static_cast<double>(n));
}

nlohmann::ordered_json json_value(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double x = std::get<double>(cell);
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_double(x).c_str(), nullptr);
}

nlohmann::ordered_json meta(const RunConfig& cfg) {
  nlohmann::ordered_json m;
  m["command"] = to_string(cfg.command);
  m["version"] = kVersion;
  m["theta_total_pi"] = cfg.theta_total;
  m["n_values"] = cfg.n_values;
  m["lambda_grid_size"] = cfg.lambda_grid_size;
  m["m_values"] = cfg.m_values;
  m["seed"] = cfg.seed;
  m["output_path"] = cfg.output_path;
  m["format"] = to_string(cfg.format);
  if (cfg.command == Command::MonteCarlo) {
    m["campaigns"] = cfg.campaigns;
    std::vector<std::string> truths;
    for (auto h : cfg.truths) truths.emplace_back(tripwire::to_string(h));
    m["truths"] = truths;
    m["extra_loss"] = cfg.noise.extra_loss;
    m["phase_sigma"] = cfg.noise.phase_sigma;
    m["phase_offset"] = cfg.noise.phase_offset;
    m["drift_seed"] = cfg.noise.drift_seed;
    m["feedback"] = cfg.feedback;
    m["q_reference"] = to_string(cfg.q_reference);
    m["transcript_path"] = cfg.transcript_path;
  }
  return m;
}

void write_output(const RunConfig& cfg, const Table& table) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write_table(std::cout, table, cfg);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + cfg.output_path + "'");
  write_table(out, table, cfg);
  out.close();
  if (!out) throw IoError("failed writing output file '" + cfg.output_path + "'");
}

}  // namespace

const char* to_string(Command command) {
  switch (command) {
    case Command::Table1: return "table1";
    case Command::Curve: return "curve";
    case Command::Scaling: return "scaling";
    case Command::MonteCarlo: return "montecarlo";
  }
  return "?";
}

void RunConfig::finalize() {
  if (n_values.empty()) {
    switch (command) {
      case Command::Table1: n_values = {5, 10, 11, 12, 13, 20, 50}; break;
      case Command::Curve: n_values = {5, 10, 20, 50, 100}; break;
      case Command::Scaling: n_values = {20, 50}; break;
      case Command::MonteCarlo: n_values = {20}; break;
    }
  }
  if (m_values.empty()) {
    if (command == Command::Scaling) {
      for (std::int64_t m = 0; m <= 200; m += 10) m_values.push_back(m);
    } else if (command == Command::MonteCarlo) {
      m_values = {50};
    }
  }
  if (theta_total.empty()) throw InvalidInput("--theta-total needs at least one value");
  for (double t : theta_total) {
    for (int n : n_values) {
      if (n < 1) throw InvalidInput("--n values must be >= 1");
      if (!(t > 0.0) || !(t / n <= 0.5)) {
        throw InvalidInput("--theta-total must give a per-pass angle in (0, pi/2]");
      }
    }
  }
  if (lambda_grid_size < 2) throw InvalidInput("--grid must be >= 2");
  for (auto m : m_values) {
    if (m < 0) throw InvalidInput("--m values must be >= 0");
    if (command == Command::MonteCarlo && m < 1) throw InvalidInput("campaigns need --m >= 1");
  }
  if (command == Command::MonteCarlo) {
    if (campaigns < 1) throw InvalidInput("--campaigns must be >= 1");
    if (truths.empty()) throw InvalidInput("--truth needs at least one value");
    if (!(noise.extra_loss >= 0.0 && noise.extra_loss < 1.0) || !(noise.phase_sigma >= 0.0)) {
      throw InvalidInput("noise parameters out of range");
    }
  }
}

Table cmd_table1(const RunConfig& cfg) {
  Table t{{"theta_total_pi", "N", "ratio", "c_vis", "lambda", "c2", "p", "q", "boundary"}, {}};
  for (double theta : cfg.theta_total) {
    const SweepResult result = sweep(cfg.n_values, angle(theta));
    for (const auto& r : result.reports) {
      t.rows.push_back({theta, std::int64_t{r.point.n_passes}, r.ratio, r.c_vis,
                        r.point.lambda_opt, r.c2, r.point.p, r.point.q_min,
                        std::int64_t{r.point.at_boundary || r.degenerate ? 1 : 0}});
    }
  }
  return t;
}

Table cmd_transmission_curve(const RunConfig& cfg) {
  Table t{{"theta_total_pi", "N", "lambda", "p_tr"}, {}};
  const std::vector<double> grid = unit_grid(cfg.lambda_grid_size);
  for (double theta : cfg.theta_total) {
    for (int n : cfg.n_values) {
      for (const auto& [lam, ptr] : transmission_curve(n, angle(theta), grid)) {
        t.rows.push_back({theta, std::int64_t{n}, lam, ptr});
      }
    }
  }
  return t;
}

Table cmd_trial_scaling(const RunConfig& cfg) {
  Table t{{"theta_total_pi", "N", "lambda", "c2", "c_vis", "M", "p_vis", "pe_max"}, {}};
  for (double theta : cfg.theta_total) {
    for (int n : cfg.n_values) {
      const DistanceReport report = distance_report(optimize_loss(n, angle(theta) / n));
      for (auto m : cfg.m_values) {
        const TrialScaling scaling{m, report.c2, report.c_vis};
        t.rows.push_back({theta, std::int64_t{n}, report.point.lambda_opt, report.c2,
                          report.c_vis, m, invisibility_probability(scaling),
                          max_error_bound(scaling)});
      }
    }
  }
  return t;
}

Table cmd_montecarlo(const RunConfig& cfg) {
  Table t{{"theta_total_pi", "N", "M", "truth", "campaigns", "feedback", "lambda", "p",
           "q_reference", "empirical_transmission", "decision_errors", "empirical_error",
           "pe_max", "error_bound_3sigma", "strikes", "empirical_invisibility", "p_vis",
           "invisibility_sigma"},
          {}};
  std::ofstream transcript;
  if (!cfg.transcript_path.empty()) {
    transcript.open(cfg.transcript_path, std::ios::binary | std::ios::trunc);
    if (!transcript) throw IoError("cannot open transcript file '" + cfg.transcript_path + "'");
  }
  const CampaignOptions options{cfg.feedback, 100, 0.1, cfg.q_reference, false};
  for (double theta : cfg.theta_total) {
    for (int n : cfg.n_values) {
      const OperatingPoint point = optimize_loss(n, angle(theta) / n);
      const DistanceReport report = distance_report(point);
      for (auto m : cfg.m_values) {
        const TrialScaling scaling{m, report.c2, report.c_vis};
        const double pe_max = max_error_bound(scaling);
        const double p_vis = invisibility_probability(scaling);
        for (Hypothesis truth : cfg.truths) {
          const auto results =
              run_campaigns(point.config(), truth, cfg.noise, m, options, cfg.seed, cfg.campaigns);
          std::int64_t errors = 0, strikes = 0, invisible = 0;
          double q_ref = 0.0, freq = 0.0;
          for (const auto& r : results) {
            errors += r.decision_error ? 1 : 0;
            strikes += r.strikes;
            invisible += r.stayed_invisible ? 1 : 0;
            q_ref += r.q_reference;
            freq += r.empirical_frequency;
          }
          const double k = static_cast<double>(results.size());
          t.rows.push_back({theta, std::int64_t{n}, m, std::string(tripwire::to_string(truth)),
                            cfg.campaigns, std::int64_t{cfg.feedback ? 1 : 0}, point.lambda_opt,
                            point.p, q_ref / k, freq / k, errors, errors / k, pe_max,
                            pe_max + 3.0 * binomial_sigma(pe_max, cfg.campaigns), strikes,
                            invisible / k, p_vis, binomial_sigma(p_vis, cfg.campaigns)});
          if (transcript.is_open()) write_transcript(transcript, results);
        }
      }
    }
  }
  if (transcript.is_open()) {
    transcript.close();
    if (!transcript) throw IoError("failed writing transcript file");
  }
  return t;
}

void write_table(std::ostream& out, const Table& table, const RunConfig& cfg) {
  if (cfg.format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        std::visit(
            [&out](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, double>) {
                out << format_double(v);
              } else {
                out << v;
              }
            },
            row[i]);
      }
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["meta"] = meta(cfg);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_value(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void run(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.output_path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      cfg.output_path = (std::filesystem::path(dir) /
                         (std::string(to_string(cfg.command)) + default_extension(cfg.format)))
                            .string();
    }
  }
  cfg.finalize();
  Table table;
  switch (cfg.command) {
    case Command::Table1: table = cmd_table1(cfg); break;
    case Command::Curve: table = cmd_transmission_curve(cfg); break;
    case Command::Scaling: table = cmd_trial_scaling(cfg); break;
    case Command::MonteCarlo: table = cmd_montecarlo(cfg); break;
  }
  write_output(cfg, table);
}

}  // namespace tripwire::cli
