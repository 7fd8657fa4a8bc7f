#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdchan/channel.hpp"
#include "qdchan/entropy.hpp"

namespace qdchan::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Curve, Crossover, Sweep, Validate };
enum class Format { Csv, Json };

const char* to_string(Command command);
const char* to_string(Format format);

/// Custom input state for `curve`: "product", "max-entangled", "alpha=<radians>",
/// or explicit alphas/phis/offset.
struct StateSpec {
  enum class Kind { Product, MaxEntangled, Alpha, Ansatz } kind = Kind::Product;
  double alpha = 0;
  AnsatzParams<double> params;

  static StateSpec parse(const std::string& text);
  std::string label() const;
  PureState<double> build(int d) const;
};

struct RunConfig {
  Command command = Command::Curve;
  Model model = Model::QD;
  std::vector<int> dims;
  std::vector<double> etas;
  std::vector<double> nus;
  int mu_points = 101;
  std::vector<double> mu_list;  ///< overrides mu_points when nonempty
  std::optional<StateSpec> state;
  std::string output;  ///< empty or "-" writes to stdout
  Format format = Format::Csv;
  int grid_n = 64;
  double tol = 1e-8;
  Tolerances tolerances;
  int workers = 1;

  std::vector<double> mu_grid() const;
  /// Throws InvalidArgument naming the offending field.
  void validate() const;
  /// Computation-relevant fields as (key, value) pairs. Excludes the worker
  /// hint and output path so that output bytes depend only on the inputs.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Thrown after --help or --version output has been printed.
struct EarlyExit {
  int status = 0;
};

/// Parses flags, with `--config <file>` supplying key = value defaults.
RunConfig parse_command_line(int argc, const char* const* argv);

// ---------------------------------------------------------------------------
// Tables

struct Null {};
using Cell = std::variant<double, long long, std::string, Null>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CurveRow {
  double mu = 0;
  double I_product = 0;
  double I_entangled = 0;
  std::optional<double> I_custom;
  double delta = 0;
};

struct CurveTable {
  std::vector<std::pair<std::string, std::string>> meta;
  bool has_custom = false;
  std::vector<CurveRow> rows;

  Table to_table() const;
};

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double value);

std::string render(const Table& table, Format format);
/// Writes the rendered table; an empty path or "-" means stdout.
void emit(const Table& table, Format format, const std::string& path);

CurveTable compute_curve(const RunConfig& config);
Table crossover_table(const RunConfig& config);
Table sweep_table(const RunConfig& config);

// ---------------------------------------------------------------------------
// Self-check

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle and invariant checks on small dimensions (d <= max_d).
std::vector<PropertyResult> run_validation(int max_d = 4);

/// Executes a parsed configuration. Returns the process exit status.
int run(const RunConfig& config, std::ostream& diagnostics);

}  // namespace qdchan::cli
