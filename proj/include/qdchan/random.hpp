#pragma once

// Random test inputs: Ginibre densities, Haar-ish unitaries, pure states.

#include <random>

#include "qdchan/types.hpp"

namespace qdchan {

template <typename Real = double, typename Rng>
CMatrix<Real> random_ginibre(long rows, long cols, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  CMatrix<Real> g(rows, cols);
  for (long c = 0; c < cols; ++c)
    for (long r = 0; r < rows; ++r) g(r, c) = {normal(rng), normal(rng)};
  return g;
}

/// G G^dagger / Tr, full rank with probability one.
template <typename Real = double, typename Rng>
CMatrix<Real> random_density(long dim, Rng& rng) {
  const CMatrix<Real> g = random_ginibre<Real>(dim, dim, rng);
  CMatrix<Real> rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity; the product is Hermitian only up to roundoff.
  return (0.5 * (rho + rho.adjoint())).eval();
}

template <typename Real = double, typename Rng>
CVector<Real> random_pure(long dim, Rng& rng) {
  CVector<Real> v = random_ginibre<Real>(dim, 1, rng);
  return v / v.norm();
}

template <typename Real = double, typename Rng>
CMatrix<Real> random_unitary(long dim, Rng& rng) {
  const Eigen::HouseholderQR<CMatrix<Real>> qr(random_ginibre<Real>(dim, dim, rng));
  return qr.householderQ() * CMatrix<Real>::Identity(dim, dim);
}

}  // namespace qdchan
