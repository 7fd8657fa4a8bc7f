#pragma once

// Input states on the two-qudit space. Basis |j>|k> has index j*d + k.

#include <cmath>
#include <string>
#include <vector>

#include "qdchan/heisenberg.hpp"

namespace qdchan {

template <typename Real = double>
struct PureState {
  int d = 0;
  CVector<Real> amplitudes;
};

using PureStated = PureState<double>;

/// Amplitudes alpha_j e^{i phi_j} on |j>|j+offset>. An empty `phis` means all zero.
template <typename Real = double>
struct AnsatzParams {
  std::vector<Real> alphas;
  std::vector<Real> phis;
  int offset = 0;
};

inline constexpr double kNormTolerance = 1e-14;

template <typename Real = double>
PureState<Real> ansatz_state(int d, const AnsatzParams<Real>& params) {
  detail::require_dimension(d);
  if (static_cast<int>(params.alphas.size()) != d) {
    throw InvalidArgument("ansatz needs " + std::to_string(d) + " alphas, got " +
                          std::to_string(params.alphas.size()));
  }
  if (!params.phis.empty() && static_cast<int>(params.phis.size()) != d) {
    throw InvalidArgument("ansatz needs " + std::to_string(d) + " phis, got " +
                          std::to_string(params.phis.size()));
  }
  if (params.offset < 0 || params.offset >= d) {
    throw InvalidArgument("ansatz offset m must lie in [0, " + std::to_string(d - 1) + "], got " +
                          std::to_string(params.offset));
  }
  Real norm2 = 0;
  for (Real a : params.alphas) {
    if (!(a >= 0)) throw InvalidArgument("ansatz alphas must be nonnegative");
    norm2 += a * a;
  }
  if (std::abs(static_cast<double>(norm2) - 1.0) > kNormTolerance) {
    throw InvalidArgument("ansatz alphas must satisfy sum alpha_j^2 = 1, got " +
                          std::to_string(static_cast<double>(norm2)));
  }

  PureState<Real> state{d, CVector<Real>::Zero(static_cast<long>(d) * d)};
  for (int j = 0; j < d; ++j) {
    const Real phi = params.phis.empty() ? Real(0) : params.phis[j];
    state.amplitudes(j * d + detail::mod(j + params.offset, d)) =
        params.alphas[j] * Complex<Real>(std::cos(phi), std::sin(phi));
  }
  return state;
}

/// cos(a) |00> + sin(a)/sqrt(d-1) sum_{j>=1} |jj>. a = 0 is the product state,
/// cos^2(a) = 1/d the maximally entangled state.
template <typename Real = double>
PureState<Real> interpolating_state(int d, Real angle) {
  detail::require_dimension(d);
  AnsatzParams<Real> params;
  params.alphas.assign(d, std::sin(angle) / std::sqrt(Real(d - 1)));
  params.alphas[0] = std::cos(angle);
  // sin(a) < 0 for angles past pi; fold the sign into a phase.
  if (params.alphas[1] < 0 || params.alphas[0] < 0) {
    params.phis.assign(d, Real(0));
    for (int j = 0; j < d; ++j) {
      if (params.alphas[j] < 0) {
        params.alphas[j] = -params.alphas[j];
        params.phis[j] = Real(3.14159265358979323846264338327950288L);
      }
    }
  }
  return ansatz_state<Real>(d, params);
}

/// Angle at which interpolating_state is maximally entangled.
template <typename Real = double>
Real max_entangled_angle(int d) {
  detail::require_dimension(d);
  return std::acos(1 / std::sqrt(Real(d)));
}

template <typename Real = double>
PureState<Real> product_state(int d) {
  detail::require_dimension(d);
  PureState<Real> state{d, CVector<Real>::Zero(static_cast<long>(d) * d)};
  state.amplitudes(0) = 1;
  return state;
}

template <typename Real = double>
PureState<Real> max_entangled_state(int d) {
  detail::require_dimension(d);
  return ansatz_state<Real>(d, {std::vector<Real>(d, 1 / std::sqrt(Real(d))), {}, 0});
}

template <typename Real>
CMatrix<Real> density_from_pure(const PureState<Real>& state) {
  return state.amplitudes * state.amplitudes.adjoint();
}

/// Phase twirl (1/d) sum_n (U_{0,n} (x) U_{0,n}) rho (...)^dagger.
template <typename Real>
CMatrix<Real> averaging_map(int d, const CMatrix<Real>& rho, const Tolerances& tol = {}) {
  detail::require_dimension(d);
  const long dim = static_cast<long>(d) * d;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidArgument("averaging map expects a " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " matrix for d=" + std::to_string(d));
  }
  check_density(rho, tol);
  CMatrix<Real> out = CMatrix<Real>::Zero(dim, dim);
  for (int n = 0; n < d; ++n) {
    const Monomial<Real> u = displacement_monomial<Real>(d, {0, n});
    conjugate_accumulate(out, Real(1) / Real(d), kron(u, u), rho);
  }
  return out;
}

}  // namespace qdchan
