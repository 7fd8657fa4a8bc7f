#include <cmath>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdchan/cli.hpp"

namespace qdchan::cli {

const char* to_string(Command command) {
  switch (command) {
    case Command::Curve: return "curve";
    case Command::Crossover: return "crossover";
    case Command::Sweep: return "sweep";
    case Command::Validate: return "validate";
  }
  return "?";
}

const char* to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidArgument("cannot parse '" + item + "' as a number");
    }
    values.push_back(v);
  }
  return values;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

StateSpec StateSpec::parse(const std::string& text) {
  StateSpec spec;
  if (text == "product") {
    spec.kind = Kind::Product;
  } else if (text == "max-entangled") {
    spec.kind = Kind::MaxEntangled;
  } else if (text.rfind("alpha=", 0) == 0) {
    spec.kind = Kind::Alpha;
    try {
      spec.alpha = std::stod(text.substr(6));
    } catch (const std::exception&) {
      throw InvalidArgument("--state: cannot parse angle in '" + text + "'");
    }
  } else {
    throw InvalidArgument("--state must be product, max-entangled or alpha=<radians>, got '" +
                          text + "'");
  }
  return spec;
}

std::string StateSpec::label() const {
  switch (kind) {
    case Kind::Product: return "product";
    case Kind::MaxEntangled: return "max-entangled";
    case Kind::Alpha: return "alpha=" + format_double(alpha);
    case Kind::Ansatz:
      return "ansatz(alphas=" + join(params.alphas) + ";phis=" + join(params.phis) +
             ";offset=" + std::to_string(params.offset) + ")";
  }
  return "?";
}

PureState<double> StateSpec::build(int d) const {
  switch (kind) {
    case Kind::Product: return product_state<double>(d);
    case Kind::MaxEntangled: return max_entangled_state<double>(d);
    case Kind::Alpha: return interpolating_state<double>(d, alpha);
    case Kind::Ansatz: return ansatz_state<double>(d, params);
  }
  throw InvalidArgument("unknown state kind");
}

std::vector<double> RunConfig::mu_grid() const {
  return mu_list.empty() ? uniform_mu_grid(mu_points) : mu_list;
}

void RunConfig::validate() const {
  auto single = [&](const char* field, std::size_t count) {
    if (count != 1) {
      throw InvalidArgument(std::string("--") + field + ": '" + to_string(command) +
                            "' needs exactly one value, got " + std::to_string(count));
    }
  };
  if (command == Command::Validate) return;
  if (dims.empty()) throw InvalidArgument("--d: dimension is required (integer >= 2)");
  if (etas.empty()) throw InvalidArgument("--eta: shrinking factor is required");
  if (nus.empty()) throw InvalidArgument("--nu: phase-correlation parameter is required, range [0, 1]");
  if (command != Command::Sweep) {
    single("d", dims.size());
    single("eta", etas.size());
    single("nu", nus.size());
  }
  for (int d : dims) {
    if (d < 2) throw InvalidArgument("--d: dimension must be >= 2, got " + std::to_string(d));
    // A sweep records out-of-range combinations in their rows instead.
    if (command == Command::Sweep) continue;
    for (double eta : etas) {
      const double lo = eta_lower_bound(model, d);
      if (!(eta >= lo && eta <= 1.0)) {
        throw InvalidArgument("--eta: must lie in [" + format_double(lo) + ", 1] for " +
                              std::string(qdchan::to_string(model)) + " with d=" +
                              std::to_string(d) + ", got " + format_double(eta));
      }
    }
  }
  for (double eta : etas) {
    if (!std::isfinite(eta)) throw InvalidArgument("--eta: must be finite");
  }
  for (double nu : nus) {
    if (!(nu >= 0 && nu <= 1)) throw InvalidArgument("--nu: must lie in [0, 1], got " + format_double(nu));
  }
  if (workers < 1) throw InvalidArgument("--workers: must be >= 1");
  if (command == Command::Curve) {
    if (mu_list.empty() && mu_points < 2) {
      throw InvalidArgument("--mu-points: must be >= 2, got " + std::to_string(mu_points));
    }
    try {
      require_mu_grid(mu_grid());
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(std::string("--mu-list: ") + e.what());
    }
    if (state) {
      try {
        state->build(dims.front());
      } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("--state/--alphas: ") + e.what());
      }
    }
  }
  if (command == Command::Crossover || command == Command::Sweep) {
    if (grid_n < 16) throw InvalidArgument("--grid-n: must be >= 16, got " + std::to_string(grid_n));
    if (!(tol > 0)) throw InvalidArgument("--tol: must be > 0");
  }
  if (!(tolerances.structural > 0) || !(tolerances.eigen_floor > 0)) {
    throw InvalidArgument("--structural-tol/--eigen-floor: must be > 0");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> meta{
      {"version", kVersion},
      {"command", to_string(command)},
  };
  if (command == Command::Validate) return meta;
  meta.emplace_back("model", std::string(qdchan::to_string(model)));
  meta.emplace_back("d", join(dims));
  meta.emplace_back("eta", join(etas));
  meta.emplace_back("nu", join(nus));
  if (command == Command::Curve) {
    if (mu_list.empty()) {
      meta.emplace_back("mu_points", std::to_string(mu_points));
    } else {
      meta.emplace_back("mu_list", join(mu_list));
    }
    meta.emplace_back("state", state ? state->label() : "none");
  } else {
    meta.emplace_back("grid_n", std::to_string(grid_n));
    meta.emplace_back("tol", format_double(tol));
  }
  meta.emplace_back("structural_tol", format_double(tolerances.structural));
  meta.emplace_back("eigen_floor", format_double(tolerances.eigen_floor));
  meta.emplace_back("format", to_string(format));
  return meta;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{"Correlated two-use qudit channels: mutual information and crossover analysis",
               "qdchan"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  std::string command;
  std::string model = "qd";
  std::string format = "csv";
  std::string state;
  std::string alphas;
  std::string phis;
  std::string mu_list;
  int offset = 0;
  config.workers = default_workers();

  app.add_option("command", command, "curve | crossover | sweep | validate")
      ->required()
      ->check(CLI::IsMember({"curve", "crossover", "sweep", "validate"}));
  app.add_option("--model", model, "qd | qcd")->check(CLI::IsMember({"qd", "qcd"}));
  app.add_option("--d,--dims", config.dims, "dimension(s), comma separated for sweep")->delimiter(',');
  app.add_option("--eta,--etas", config.etas, "shrinking factor(s)")->delimiter(',');
  app.add_option("--nu,--nus", config.nus, "phase anticorrelation weight(s) in [0, 1]")->delimiter(',');
  app.add_option("--mu-points", config.mu_points, "uniform mu grid size for curve");
  app.add_option("--mu-list", mu_list, "explicit comma separated mu grid for curve");
  app.add_option("--state", state, "custom curve state: product | max-entangled | alpha=<radians>");
  app.add_option("--alphas", alphas, "custom ansatz amplitudes alpha_j (comma separated)");
  app.add_option("--phis", phis, "custom ansatz phases phi_j in radians (comma separated)");
  app.add_option("--offset", offset, "custom ansatz offset m: amplitudes on |j>|j+m>");
  app.add_option("-o,--output", config.output, "output file (default stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--grid-n", config.grid_n, "crossover scan intervals");
  app.add_option("--tol", config.tol, "crossover bisection tolerance");
  app.add_option("--structural-tol", config.tolerances.structural, "Hermiticity/trace tolerance");
  app.add_option("--eigen-floor", config.tolerances.eigen_floor, "eigenvalue clamping window");
  app.add_option("--workers", config.workers,
                 std::string("worker threads (default from ") + kWorkersEnv + ")");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    throw EarlyExit{0};
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(e.what());
  }

  static const std::pair<const char*, Command> commands[] = {
      {"curve", Command::Curve},
      {"crossover", Command::Crossover},
      {"sweep", Command::Sweep},
      {"validate", Command::Validate}};
  for (const auto& [name, value] : commands)
    if (command == name) config.command = value;
  config.model = parse_model(model);
  config.format = format == "json" ? Format::Json : Format::Csv;

  if (!mu_list.empty()) config.mu_list = parse_list(mu_list);
  if (!alphas.empty()) {
    if (!state.empty()) throw InvalidArgument("--state and --alphas are mutually exclusive");
    StateSpec spec;
    spec.kind = StateSpec::Kind::Ansatz;
    spec.params.alphas = parse_list(alphas);
    if (!phis.empty()) spec.params.phis = parse_list(phis);
    spec.params.offset = offset;
    config.state = spec;
  } else if (!phis.empty()) {
    throw InvalidArgument("--phis requires --alphas");
  } else if (!state.empty()) {
    config.state = StateSpec::parse(state);
  }
  return config;
}

}  // namespace qdchan::cli
