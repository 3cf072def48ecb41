#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "tripwire/monte_carlo.h"
#include "tripwire/state_evolution.h"

namespace tripwire::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "TRIPWIRE_OUTPUT_DIR";

enum class Command { Table1, Curve, Scaling, MonteCarlo };
enum class OutputFormat { Csv, Json };

const char* to_string(Command command);

/// Everything a command needs. Angles are fractions of pi (0.5 = pi/2).
struct RunConfig {
  Command command = Command::Table1;
  std::vector<double> theta_total{0.5};
  std::vector<int> n_values;
  int lambda_grid_size = 101;
  std::vector<std::int64_t> m_values;
  std::uint64_t seed = 12345;
  bool seed_given = false;
  std::string output_path;  // empty or "-" means standard output
  OutputFormat format = OutputFormat::Csv;

  // montecarlo only
  std::int64_t campaigns = 1000;
  std::vector<Hypothesis> truths{Hypothesis::ObjectAbsent, Hypothesis::ObjectPresent};
  NoiseModel noise;
  bool feedback = false;
  QReference q_reference = QReference::Running;
  std::string transcript_path;

  /// Fills command-specific defaults for empty lists and checks ranges.
  /// Throws InvalidInput.
  void finalize();
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Table cmd_table1(const RunConfig& cfg);
Table cmd_transmission_curve(const RunConfig& cfg);
Table cmd_trial_scaling(const RunConfig& cfg);
Table cmd_montecarlo(const RunConfig& cfg);

/// CSV: header line, doubles with 9 significant digits, '\n' endings.
/// JSON: {"meta": {...config echo, "version"}, "rows": [{column: value}]}.
void write_table(std::ostream& out, const Table& table, const RunConfig& cfg);

/// Builds the table for cfg.command and writes it to cfg.output_path.
/// Throws IoError when the output cannot be written.
void run(const RunConfig& cfg);

}  // namespace tripwire::cli
