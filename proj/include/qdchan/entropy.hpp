#pragma once

// Von Neumann entropy of channel outputs and the mutual-information figure of
// merit I = log2(d^2) - S(E2(rho)).
//
// Two routes compute S(E2(rho)):
//  * dense: apply_channel followed by a d^2 x d^2 Hermitian eigensolve;
//  * blockwise: when rho has no coherences between "difference sectors"
//    (basis pairs |j>|k> grouped by k - j mod d), neither does E2(rho), because
//    U_{a,n} (x) U_{a',n'} moves every entry of sector s to sector s + a' - a.
//    The output is then d blocks of size d x d, built directly from the
//    marginal's Fourier transform in O(d^4) and diagonalized in O(d^4).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qdchan/channel.hpp"
#include "qdchan/parallel.hpp"
#include "qdchan/states.hpp"

namespace qdchan {

struct EntropyResult {
  double entropy_bits = 0;
  std::vector<double> eigenvalues;  ///< descending, after clamping and renormalization
  double clamped_mass = 0;          ///< total negative mass set to zero
};

/// Entropy (bits) of a spectrum. Eigenvalues in [-floor, 0) are clamped to
/// zero; anything lower signals an invalid density upstream.
inline EntropyResult entropy_from_spectrum(std::vector<double> eigenvalues,
                                           const Tolerances& tol = {}) {
  EntropyResult result;
  double total = 0;
  for (double& v : eigenvalues) {
    if (v < -tol.eigen_floor) {
      throw InvalidDensity("eigenvalue " + std::to_string(v) + " below the clamping window");
    }
    if (v < 0) {
      result.clamped_mass += -v;
      v = 0;
    }
    total += v;
  }
  if (!(total > 0)) throw InvalidDensity("spectrum has no positive mass");
  double entropy = 0;
  for (double& v : eigenvalues) {
    v /= total;
    if (v > 0) entropy -= v * std::log2(v);
  }
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  result.entropy_bits = std::max(0.0, entropy);
  result.eigenvalues = std::move(eigenvalues);
  return result;
}

template <typename Real>
EntropyResult von_neumann_entropy(const CMatrix<Real>& rho, const Tolerances& tol = {}) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw InvalidDensity("entropy needs a nonempty square matrix");
  }
  if (const double herm = hermiticity_error(rho); herm > tol.structural) {
    throw InvalidDensity("entropy input is not Hermitian (max |rho - rho^dag| = " +
                         std::to_string(herm) + ")");
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(rho, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(static_cast<std::size_t>(ev.size()));
  for (long i = 0; i < ev.size(); ++i) values[i] = static_cast<double>(ev(i));
  return entropy_from_spectrum(std::move(values), tol);
}

// ---------------------------------------------------------------------------
// Difference-sector blocks

/// Block s holds the entries <j, j+s| rho |j', j'+s> at (j, j').
template <typename Real>
using SectorBlocks = std::vector<CMatrix<Real>>;

inline long sector_index(int d, int j, int sector) {
  return static_cast<long>(j) * d + detail::mod(j + sector, d);
}

template <typename Real>
bool is_sector_diagonal(int d, const CMatrix<Real>& rho, double leak = Tolerances{}.sector_leak) {
  const long dim = static_cast<long>(d) * d;
  if (rho.rows() != dim || rho.cols() != dim) return false;
  for (long c = 0; c < dim; ++c) {
    const int sc = detail::mod(c % d - c / d, d);
    for (long r = 0; r < dim; ++r) {
      if (detail::mod(r % d - r / d, d) != sc && std::abs(rho(r, c)) > leak) return false;
    }
  }
  return true;
}

template <typename Real>
SectorBlocks<Real> split_sectors(int d, const CMatrix<Real>& rho) {
  SectorBlocks<Real> blocks(d, CMatrix<Real>::Zero(d, d));
  for (int s = 0; s < d; ++s)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) blocks[s](j, k) = rho(sector_index(d, j, s), sector_index(d, k, s));
  return blocks;
}

template <typename Real>
CMatrix<Real> assemble_sectors(int d, const SectorBlocks<Real>& blocks) {
  const long dim = static_cast<long>(d) * d;
  CMatrix<Real> out = CMatrix<Real>::Zero(dim, dim);
  for (int s = 0; s < d; ++s)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out(sector_index(d, j, s), sector_index(d, k, s)) = blocks[s](j, k);
  return out;
}

/// Density check on sector blocks: d Hermitian, positive semidefinite d x d
/// blocks with unit total trace. Costs O(d^4) instead of O(d^6).
template <typename Real>
void check_sector_density(int d, const SectorBlocks<Real>& blocks, const Tolerances& tol = {}) {
  if (static_cast<int>(blocks.size()) != d) {
    throw InvalidArgument("expected " + std::to_string(d) + " sector blocks, got " +
                          std::to_string(blocks.size()));
  }
  Complex<Real> trace = 0;
  for (const auto& block : blocks) {
    if (block.rows() != d || block.cols() != d) throw InvalidArgument("sector block must be d x d");
    if (hermiticity_error(block) > tol.structural) throw InvalidDensity("sector block is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(block, Eigen::EigenvaluesOnly);
    if (const double lowest = solver.eigenvalues()(0); lowest < -tol.eigen_floor) {
      throw InvalidDensity("density matrix has eigenvalue " + std::to_string(lowest));
    }
    trace += block.trace();
  }
  if (std::abs(trace - Complex<Real>(1)) > tol.structural) {
    throw InvalidDensity("density matrix trace differs from 1 by " +
                         std::to_string(static_cast<double>(std::abs(trace - Complex<Real>(1)))));
  }
}

/// Sector blocks of |psi><psi|. psi must live in a single sector.
template <typename Real>
SectorBlocks<Real> pure_sector_blocks(const PureState<Real>& psi, double leak = Tolerances{}.sector_leak) {
  const int d = psi.d;
  int occupied = -1;
  for (long i = 0; i < psi.amplitudes.size(); ++i) {
    if (std::abs(psi.amplitudes(i)) <= leak) continue;
    const int s = detail::mod(i % d - i / d, d);
    if (occupied >= 0 && s != occupied) {
      throw InvalidArgument("state has support on more than one difference sector");
    }
    occupied = s;
  }
  if (occupied < 0) throw InvalidArgument("state is zero");
  SectorBlocks<Real> blocks(d, CMatrix<Real>::Zero(d, d));
  CVector<Real> v(d);
  for (int j = 0; j < d; ++j) v(j) = psi.amplitudes(sector_index(d, j, occupied));
  blocks[occupied] = v * v.adjoint();
  return blocks;
}

/// E2 applied to a sector-diagonal input given by its blocks; the output is
/// again sector diagonal.
template <typename Real>
SectorBlocks<Real> apply_channel_blockwise(const ChannelSpec<Real>& spec, const SectorBlocks<Real>& input,
                                           const Tolerances& tol = {}) {
  validate(spec);
  const int d = spec.d;
  check_sector_density(d, input, tol);
  const MarginalTable<Real> q = marginal(spec);

  // fourier(a, D) = sum_n q(a, n) w^{n D}
  CMatrix<Real> fourier(d, d);
  for (int a = 0; a < d; ++a) {
    for (int D = 0; D < d; ++D) {
      Complex<Real> acc = 0;
      for (int n = 0; n < d; ++n) acc += q(a, n) * detail::root_of_unity<Real>(static_cast<long long>(n) * D, d);
      fourier(a, D) = acc;
    }
  }

  // Every (n, n') pair multiplies entry (j, j') of any sector by w^{(n+n')(j-j')}.
  // Summing p over phases for shifts (a, a') gives weight(a, a', j - j').
  const Real uncorrelated = 1 - spec.mu;
  const Real same_phase = spec.mu * (1 - spec.nu);
  const Real opposite_phase = spec.mu * spec.nu;
  std::vector<Complex<Real>> weights(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a)
    for (int a2 = 0; a2 < d; ++a2)
      for (int D = 0; D < d; ++D) {
        Complex<Real> w = uncorrelated * fourier(a, D) * fourier(a2, D);
        if (a == a2) w += same_phase * fourier(a, detail::mod(2 * D, d)) + opposite_phase * fourier(a, 0);
        weights[(static_cast<std::size_t>(a) * d + a2) * d + D] = w;
      }

  SectorBlocks<Real> output(d, CMatrix<Real>::Zero(d, d));
  struct Entry {
    int row, col;
    Complex<Real> value;
  };
  for (int s = 0; s < d; ++s) {
    std::vector<Entry> entries;
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r)
        if (input[s](r, c) != Complex<Real>(0)) entries.push_back({r, c, input[s](r, c)});
    if (entries.empty()) continue;
    for (int a = 0; a < d; ++a) {
      for (int a2 = 0; a2 < d; ++a2) {
        CMatrix<Real>& block = output[detail::mod(s + a2 - a, d)];
        const Complex<Real>* w = &weights[(static_cast<std::size_t>(a) * d + a2) * d];
        for (const Entry& e : entries) {
          block(detail::mod(e.row + a, d), detail::mod(e.col + a, d)) += e.value * w[detail::mod(e.row - e.col, d)];
        }
      }
    }
  }
  return output;
}

/// E2(rho) as difference-sector blocks. rho must be a density with no
/// coherence between sectors (e.g. any |psi_m><psi_m|).
template <typename Real>
SectorBlocks<Real> apply_channel_blockwise(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho,
                                           const Tolerances& tol = {}) {
  validate(spec);
  detail::require_two_qudit(spec, rho);
  check_density(rho, tol);
  if (!is_sector_diagonal(spec.d, rho, tol.sector_leak)) {
    throw InvalidArgument("blockwise evaluation needs an input without cross-sector coherences");
  }
  return apply_channel_blockwise(spec, split_sectors(spec.d, rho), tol);
}

template <typename Real>
std::vector<double> blockwise_eigenvalues(const SectorBlocks<Real>& blocks) {
  std::vector<double> values;
  for (const auto& block : blocks) {
    const Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(block, Eigen::EigenvaluesOnly);
    for (long i = 0; i < solver.eigenvalues().size(); ++i)
      values.push_back(static_cast<double>(solver.eigenvalues()(i)));
  }
  return values;
}

// ---------------------------------------------------------------------------
// Mutual information

enum class EvalPath {
  Automatic,  ///< blockwise when the input allows it, dense otherwise
  Dense,
  Blockwise,
};

/// Entropy of E2 applied to a sector-diagonal input given by its blocks.
template <typename Real>
EntropyResult output_entropy(const ChannelSpec<Real>& spec, const SectorBlocks<Real>& input,
                             const Tolerances& tol = {}) {
  const auto blocks = apply_channel_blockwise(spec, input, tol);
  for (const auto& b : blocks) {
    if (hermiticity_error(b) > tol.structural) throw InvalidDensity("channel output is not Hermitian");
  }
  return entropy_from_spectrum(blockwise_eigenvalues(blocks), tol);
}

/// Entropy of E2(rho) along the requested route.
template <typename Real>
EntropyResult output_entropy(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho,
                             EvalPath path = EvalPath::Automatic, const Tolerances& tol = {}) {
  if (path == EvalPath::Automatic) {
    path = is_sector_diagonal(spec.d, rho, tol.sector_leak) ? EvalPath::Blockwise : EvalPath::Dense;
  }
  if (path == EvalPath::Blockwise) {
    validate(spec);
    detail::require_two_qudit(spec, rho);
    check_density(rho, tol);
    if (!is_sector_diagonal(spec.d, rho, tol.sector_leak)) {
      throw InvalidArgument("blockwise evaluation needs an input without cross-sector coherences");
    }
    return output_entropy(spec, split_sectors(spec.d, rho), tol);
  }
  return von_neumann_entropy(apply_channel(spec, rho, tol), tol);
}

/// log2(d^2) - S(E2(rho)), in bits.
template <typename Real>
double mutual_information(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho,
                          EvalPath path = EvalPath::Automatic, const Tolerances& tol = {}) {
  const double capacity = 2.0 * std::log2(static_cast<double>(spec.d));
  return capacity - output_entropy(spec, rho, path, tol).entropy_bits;
}

template <typename Real>
double mutual_information(const ChannelSpec<Real>& spec, const SectorBlocks<Real>& input,
                          const Tolerances& tol = {}) {
  const double capacity = 2.0 * std::log2(static_cast<double>(spec.d));
  return capacity - output_entropy(spec, input, tol).entropy_bits;
}

struct MutualInfoPoint {
  double mu = 0;
  double I_bits = 0;
  std::string state_label;
};

inline void require_mu_grid(const std::vector<double>& mu_grid) {
  if (mu_grid.empty()) throw InvalidArgument("mu grid is empty");
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    require_unit_interval("mu grid value", mu_grid[i]);
    if (i > 0 && !(mu_grid[i] > mu_grid[i - 1])) {
      throw InvalidArgument("mu grid must be strictly increasing");
    }
  }
}

/// Uniform grid of `points` values from 0 to 1 inclusive.
inline std::vector<double> uniform_mu_grid(int points) {
  if (points < 2) throw InvalidArgument("mu grid needs at least 2 points, got " + std::to_string(points));
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

/// I(mu) over a grid for a sector-diagonal input; each point costs O(d^4).
template <typename Real>
std::vector<MutualInfoPoint> mutual_information_curve(const ChannelSpec<Real>& spec_base,
                                                      const SectorBlocks<Real>& input,
                                                      const std::vector<double>& mu_grid,
                                                      const std::string& label, int workers = 1,
                                                      const Tolerances& tol = {}) {
  require_mu_grid(mu_grid);
  validate(spec_base);
  check_sector_density(spec_base.d, input, tol);
  std::vector<MutualInfoPoint> points(mu_grid.size());
  parallel_for(mu_grid.size(), workers, [&](std::size_t i) {
    const auto spec = spec_base.with_mu(static_cast<Real>(mu_grid[i]));
    points[i] = {mu_grid[i], mutual_information(spec, input, tol), label};
  });
  return points;
}

template <typename Real>
std::vector<MutualInfoPoint> mutual_information_curve(const ChannelSpec<Real>& spec_base,
                                                      const CMatrix<Real>& rho_in,
                                                      const std::vector<double>& mu_grid,
                                                      const std::string& label, int workers = 1,
                                                      EvalPath path = EvalPath::Automatic,
                                                      const Tolerances& tol = {}) {
  require_mu_grid(mu_grid);
  validate(spec_base);
  if (path == EvalPath::Automatic) {
    path = is_sector_diagonal(spec_base.d, rho_in, tol.sector_leak) ? EvalPath::Blockwise
                                                                     : EvalPath::Dense;
  }
  std::vector<MutualInfoPoint> points(mu_grid.size());
  if (path == EvalPath::Blockwise) {
    detail::require_two_qudit(spec_base, rho_in);
    check_density(rho_in, tol);
    if (!is_sector_diagonal(spec_base.d, rho_in, tol.sector_leak)) {
      throw InvalidArgument("blockwise evaluation needs an input without cross-sector coherences");
    }
    return mutual_information_curve(spec_base, split_sectors(spec_base.d, rho_in), mu_grid, label, workers, tol);
  }
  parallel_for(mu_grid.size(), workers, [&](std::size_t i) {
    const auto spec = spec_base.with_mu(static_cast<Real>(mu_grid[i]));
    points[i] = {mu_grid[i], mutual_information(spec, rho_in, path, tol), label};
  });
  return points;
}

}  // namespace qdchan
