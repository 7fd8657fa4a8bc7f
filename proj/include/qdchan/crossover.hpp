#pragma once

// Crossover in the memory parameter between product and maximally entangled
// inputs: the root of
//
//   delta_I(mu) = I(E2, max-entangled) - I(E2, |00>).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdchan/entropy.hpp"

namespace qdchan {

struct CrossoverOptions {
  int grid_n = 64;          ///< scan uses grid_n + 1 uniform points on [0, 1]
  double tol = 1e-8;        ///< final bracket width
  double zero_tol = 1e-12;  ///< |delta_I| at or below this counts as zero
  int workers = 1;
};

struct CrossoverResult {
  std::optional<double> mu_c;  ///< empty: no sign change on [0, 1]
  double delta_at_0 = 0;
  double delta_at_1 = 0;
  int iterations = 0;
  double bracket_width = 0;
  bool entangled_wins_above = true;  ///< direction of the sign change

  bool has_crossover() const { return mu_c.has_value(); }
};

/// More than one sign change of delta_I on the scan grid.
class MultipleCrossingsError : public std::runtime_error {
 public:
  explicit MultipleCrossingsError(std::vector<std::pair<double, double>> brackets)
      : std::runtime_error(describe(brackets)), brackets_(std::move(brackets)) {}

  const std::vector<std::pair<double, double>>& brackets() const { return brackets_; }

 private:
  static std::string describe(const std::vector<std::pair<double, double>>& brackets) {
    std::string text = std::to_string(brackets.size()) + " sign changes of delta_I at";
    for (const auto& [lo, hi] : brackets) {
      text += " [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    }
    return text;
  }

  std::vector<std::pair<double, double>> brackets_;
};

/// Evaluates delta_I at arbitrary mu for a fixed (model, d, eta, nu).
template <typename Real = double>
class DeltaI {
 public:
  explicit DeltaI(const ChannelSpec<Real>& spec_base, const Tolerances& tol = {})
      : spec_(spec_base),
        tol_(tol),
        product_(pure_sector_blocks(product_state<Real>(spec_base.d))),
        entangled_(pure_sector_blocks(max_entangled_state<Real>(spec_base.d))) {
    validate(spec_);
  }

  double operator()(double mu) const {
    const auto spec = spec_.with_mu(static_cast<Real>(mu));
    return mutual_information(spec, entangled_, tol_) - mutual_information(spec, product_, tol_);
  }

  const ChannelSpec<Real>& spec() const { return spec_; }

 private:
  ChannelSpec<Real> spec_;
  Tolerances tol_;
  SectorBlocks<Real> product_;
  SectorBlocks<Real> entangled_;
};

template <typename Real>
double delta_I(const ChannelSpec<Real>& spec_base, double mu) {
  require_unit_interval("mu", mu);
  return DeltaI<Real>(spec_base)(mu);
}

namespace detail {

inline int sign_with_tolerance(double value, double zero_tol) {
  if (value > zero_tol) return 1;
  if (value < -zero_tol) return -1;
  return 0;
}

}  // namespace detail

/// Scans `f` on grid_n + 1 uniform points of [0, 1], then bisects the single
/// bracketed sign change down to `tol`. Values within zero_tol of zero carry
/// no sign. Throws MultipleCrossingsError on more than one sign change.
template <typename Function>
CrossoverResult scan_and_bisect(const Function& f, const CrossoverOptions& options = {}) {
  if (options.grid_n < 16) {
    throw InvalidArgument("grid_n must be >= 16, got " + std::to_string(options.grid_n));
  }
  if (!(options.tol > 0)) throw InvalidArgument("tol must be positive");

  const int points = options.grid_n + 1;
  std::vector<double> grid(points);
  std::vector<double> values(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / options.grid_n;
  parallel_for(points, options.workers, [&](std::size_t i) { values[i] = f(grid[i]); });

  CrossoverResult result;
  result.delta_at_0 = values.front();
  result.delta_at_1 = values.back();

  std::vector<std::pair<int, int>> changes;
  int last = -1;
  for (int i = 0; i < points; ++i) {
    const int s = detail::sign_with_tolerance(values[i], options.zero_tol);
    if (s == 0) continue;
    if (last >= 0 && s != detail::sign_with_tolerance(values[last], options.zero_tol)) {
      changes.emplace_back(last, i);
    }
    last = i;
  }
  if (changes.empty()) return result;
  if (changes.size() > 1) {
    std::vector<std::pair<double, double>> brackets;
    for (const auto& [lo, hi] : changes) brackets.emplace_back(grid[lo], grid[hi]);
    throw MultipleCrossingsError(std::move(brackets));
  }

  double lo = grid[changes[0].first];
  double hi = grid[changes[0].second];
  const int lo_sign = detail::sign_with_tolerance(values[changes[0].first], options.zero_tol);
  result.entangled_wins_above = lo_sign < 0;
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++result.iterations;
    const int s = detail::sign_with_tolerance(f(mid), options.zero_tol);
    if (s == 0) {
      lo = hi = mid;
    } else if (s == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.mu_c = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  return result;
}

/// Crossover of delta_I for fixed (model, d, eta, nu); spec_base.mu is ignored.
template <typename Real>
CrossoverResult find_crossover(const ChannelSpec<Real>& spec_base, const CrossoverOptions& options = {}) {
  const DeltaI<Real> delta(spec_base);
  return scan_and_bisect(delta, options);
}

enum class Parity { Even, Odd };

inline const char* to_string(Parity parity) { return parity == Parity::Even ? "even" : "odd"; }

struct SweepRow {
  Model model = Model::QD;
  int d = 2;
  double eta = 0;
  double nu = 0;
  Parity parity = Parity::Even;
  std::optional<double> mu_c;
  double delta_at_0 = 0;
  double delta_at_1 = 0;
  std::string error;  ///< empty when the row evaluated cleanly

  bool ok() const { return error.empty(); }
};

/// One row per (d, eta, nu) in nested input order. Failures are recorded in
/// the row and the sweep continues.
inline std::vector<SweepRow> sweep_crossover(Model model, const std::vector<int>& dims,
                                             const std::vector<double>& etas,
                                             const std::vector<double>& nus,
                                             CrossoverOptions options = {}) {
  if (dims.empty() || etas.empty() || nus.empty()) {
    throw InvalidArgument("sweep needs nonempty dims, etas and nus");
  }
  std::vector<SweepRow> rows;
  for (int d : dims)
    for (double eta : etas)
      for (double nu : nus)
        rows.push_back({model, d, eta, nu, d % 2 == 0 ? Parity::Even : Parity::Odd, {}, 0, 0, {}});

  const int row_workers = options.workers;
  options.workers = 1;
  parallel_for(rows.size(), row_workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    try {
      const ChannelSpec<double> spec{model, row.d, row.eta, 0.0, row.nu};
      const CrossoverResult r = find_crossover(spec, options);
      row.mu_c = r.mu_c;
      row.delta_at_0 = r.delta_at_0;
      row.delta_at_1 = r.delta_at_1;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace qdchan
