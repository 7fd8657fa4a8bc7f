#include <cmath>
#include <ostream>

#include "qdchan/cli.hpp"
#include "qdchan/crossover.hpp"

namespace qdchan::cli {

namespace {

ChannelSpec<double> single_spec(const RunConfig& config) {
  return {config.model, config.dims.front(), config.etas.front(), 0.0, config.nus.front()};
}

CrossoverOptions crossover_options(const RunConfig& config) {
  CrossoverOptions options;
  options.grid_n = config.grid_n;
  options.tol = config.tol;
  options.workers = config.workers;
  return options;
}

Cell mu_c_cell(const std::optional<double>& mu_c) {
  return mu_c ? Cell{*mu_c} : Cell{std::string("none")};
}

}  // namespace

CurveTable compute_curve(const RunConfig& config) {
  config.validate();
  const ChannelSpec<double> spec = single_spec(config);
  const int d = spec.d;
  const std::vector<double> grid = config.mu_grid();

  const auto& tol = config.tolerances;
  auto curve = [&](const PureState<double>& state, const std::string& label) {
    // Single-sector states take the block route without forming the d^2 x d^2 density.
    bool single_sector = true;
    SectorBlocks<double> blocks;
    try {
      blocks = pure_sector_blocks(state, tol.sector_leak);
    } catch (const InvalidArgument&) {
      single_sector = false;
    }
    if (single_sector) return mutual_information_curve(spec, blocks, grid, label, config.workers, tol);
    return mutual_information_curve(spec, density_from_pure(state), grid, label, config.workers,
                                    EvalPath::Automatic, tol);
  };

  const auto product_curve = curve(product_state<double>(d), "product");
  const auto entangled_curve = curve(max_entangled_state<double>(d), "max-entangled");
  std::vector<MutualInfoPoint> custom_curve;
  if (config.state) custom_curve = curve(config.state->build(d), config.state->label());

  CurveTable table;
  table.meta = config.echo();
  table.has_custom = config.state.has_value();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CurveRow row;
    row.mu = grid[i];
    row.I_product = product_curve[i].I_bits;
    row.I_entangled = entangled_curve[i].I_bits;
    if (table.has_custom) row.I_custom = custom_curve[i].I_bits;
    row.delta = row.I_entangled - row.I_product;
    for (double v : {row.I_product, row.I_entangled, row.delta, row.I_custom.value_or(0.0)}) {
      if (!std::isfinite(v)) throw std::runtime_error("non-finite mutual information at mu=" + format_double(row.mu));
    }
    table.rows.push_back(row);
  }
  return table;
}

Table crossover_table(const RunConfig& config) {
  config.validate();
  const ChannelSpec<double> spec = single_spec(config);
  const CrossoverResult r = find_crossover(spec, crossover_options(config));
  Table table;
  table.meta = config.echo();
  table.columns = {"model", "d", "eta", "nu", "mu_c", "delta_at_0", "delta_at_1",
                   "iterations", "bracket_width", "entangled_wins_above"};
  table.rows.push_back({std::string(to_string(spec.model)), static_cast<long long>(spec.d), spec.eta,
                        spec.nu, mu_c_cell(r.mu_c), r.delta_at_0, r.delta_at_1,
                        static_cast<long long>(r.iterations), r.bracket_width,
                        r.mu_c ? Cell{std::string(r.entangled_wins_above ? "true" : "false")}
                               : Cell{Null{}}});
  return table;
}

Table sweep_table(const RunConfig& config) {
  config.validate();
  const auto rows =
      sweep_crossover(config.model, config.dims, config.etas, config.nus, crossover_options(config));
  Table table;
  table.meta = config.echo();
  table.columns = {"model", "d", "eta", "nu", "parity", "mu_c", "delta_at_0", "delta_at_1", "error"};
  for (const SweepRow& row : rows) {
    table.rows.push_back({std::string(to_string(row.model)), static_cast<long long>(row.d), row.eta,
                          row.nu, std::string(to_string(row.parity)),
                          row.ok() ? mu_c_cell(row.mu_c) : Cell{Null{}},
                          row.ok() ? Cell{row.delta_at_0} : Cell{Null{}},
                          row.ok() ? Cell{row.delta_at_1} : Cell{Null{}}, row.error});
  }
  return table;
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Curve:
        emit(compute_curve(config).to_table(), config.format, config.output);
        return 0;
      case Command::Crossover:
        emit(crossover_table(config), config.format, config.output);
        return 0;
      case Command::Sweep:
        emit(sweep_table(config), config.format, config.output);
        return 0;
      case Command::Validate: {
        const auto results = run_validation();
        Table table;
        table.meta = config.echo();
        table.columns = {"property", "status", "detail"};
        bool all = true;
        for (const auto& r : results) {
          all = all && r.passed;
          table.rows.push_back({r.name, std::string(r.passed ? "pass" : "fail"), r.detail});
          diagnostics << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
        }
        emit(table, config.format, config.output);
        diagnostics << (all ? "all properties pass" : "validation FAILED") << '\n';
        return all ? 0 : 1;
      }
    }
  } catch (const MultipleCrossingsError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgument& e) {
    diagnostics << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    diagnostics << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace qdchan::cli
