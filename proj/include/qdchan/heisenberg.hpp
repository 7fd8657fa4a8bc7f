#pragma once

// Weyl-Heisenberg displacement operators on a d-dimensional space.
//
//   U_{m,n} |k> = e^{2 pi i k n / d} |k + m mod d>
//
// Basis state |k> is the k-th standard column, so entry (row, col) of U_{m,n}
// is nonzero only at row = (col + m) mod d.

#include <string>
#include <vector>

#include "qdchan/types.hpp"

namespace qdchan {

struct DisplacementIndex {
  int m = 0;  ///< cyclic shift of the basis
  int n = 0;  ///< phase gradient

  bool valid_for(int d) const { return m >= 0 && m < d && n >= 0 && n < d; }
  friend bool operator==(const DisplacementIndex&, const DisplacementIndex&) = default;
};

inline void require_index(int d, const DisplacementIndex& idx) {
  detail::require_dimension(d);
  if (!idx.valid_for(d)) {
    throw InvalidArgument("displacement index (" + std::to_string(idx.m) + "," +
                          std::to_string(idx.n) + ") out of range for d=" + std::to_string(d));
  }
}

/// Index of the product U_a U_b up to phase: components add modulo d.
inline DisplacementIndex compose(int d, const DisplacementIndex& a, const DisplacementIndex& b) {
  return {detail::mod(a.m + b.m, d), detail::mod(a.n + b.n, d)};
}

/// A matrix with exactly one nonzero per column: column k maps to row target[k]
/// with value phase[k]. Displacement operators and their tensor products are of
/// this form, so conjugating a dense matrix by one costs O(dim^2).
template <typename Real>
struct Monomial {
  std::vector<int> target;
  std::vector<Complex<Real>> phase;

  int dim() const { return static_cast<int>(target.size()); }

  CMatrix<Real> dense() const {
    CMatrix<Real> out = CMatrix<Real>::Zero(dim(), dim());
    for (int k = 0; k < dim(); ++k) out(target[k], k) = phase[k];
    return out;
  }
};

template <typename Real = double>
Monomial<Real> displacement_monomial(int d, const DisplacementIndex& idx) {
  require_index(d, idx);
  Monomial<Real> op;
  op.target.resize(d);
  op.phase.resize(d);
  for (int k = 0; k < d; ++k) {
    op.target[k] = detail::mod(k + idx.m, d);
    op.phase[k] = detail::root_of_unity<Real>(static_cast<long long>(k) * idx.n, d);
  }
  return op;
}

/// Tensor product A (x) B with the first factor as the slow index (j*dB + k).
template <typename Real>
Monomial<Real> kron(const Monomial<Real>& a, const Monomial<Real>& b) {
  const int da = a.dim();
  const int db = b.dim();
  Monomial<Real> out;
  out.target.resize(static_cast<std::size_t>(da) * db);
  out.phase.resize(static_cast<std::size_t>(da) * db);
  for (int j = 0; j < da; ++j) {
    for (int k = 0; k < db; ++k) {
      out.target[j * db + k] = a.target[j] * db + b.target[k];
      out.phase[j * db + k] = a.phase[j] * b.phase[k];
    }
  }
  return out;
}

/// out += weight * op * rho * op^dagger
template <typename Real>
void conjugate_accumulate(CMatrix<Real>& out, Real weight, const Monomial<Real>& op,
                          const CMatrix<Real>& rho) {
  const int n = op.dim();
  for (int c = 0; c < n; ++c) {
    const Complex<Real> col_phase = weight * std::conj(op.phase[c]);
    const int tc = op.target[c];
    for (int r = 0; r < n; ++r) {
      out(op.target[r], tc) += op.phase[r] * col_phase * rho(r, c);
    }
  }
}

/// Dense U_{m,n}.
template <typename Real = double>
CMatrix<Real> displacement(int d, const DisplacementIndex& idx) {
  return displacement_monomial<Real>(d, idx).dense();
}

/// Phase c such that U_a U_b = c U_b U_a, namely e^{2 pi i (m' n - m n') / d}
/// for a = (m, n), b = (m', n').
template <typename Real = double>
Complex<Real> commutation_phase(int d, const DisplacementIndex& a, const DisplacementIndex& b) {
  require_index(d, a);
  require_index(d, b);
  const long long exponent =
      static_cast<long long>(b.m) * a.n - static_cast<long long>(a.m) * b.n;
  return detail::root_of_unity<Real>(exponent, d);
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = Tolerances{}.structural) {
  if (u.rows() != u.cols()) return false;
  using Matrix = typename Derived::PlainObject;
  const Matrix gram = u.adjoint() * u;
  return detail::max_abs(gram - Matrix::Identity(u.rows(), u.cols())) <= tol;
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return detail::max_abs(m - m.adjoint());
}

/// Throws InvalidDensity unless rho is square, Hermitian, unit-trace and has
/// no eigenvalue below -tol.eigen_floor.
template <typename Real>
void check_density(const CMatrix<Real>& rho, const Tolerances& tol = {}) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw InvalidDensity("density matrix must be square and nonempty");
  }
  if (const double herm = hermiticity_error(rho); herm > tol.structural) {
    throw InvalidDensity("density matrix is not Hermitian (max |rho - rho^dag| = " +
                         std::to_string(herm) + ")");
  }
  const Complex<Real> trace = rho.trace();
  if (std::abs(trace - Complex<Real>(1)) > tol.structural) {
    throw InvalidDensity("density matrix trace differs from 1 by " +
                         std::to_string(static_cast<double>(std::abs(trace - Complex<Real>(1)))));
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(rho, Eigen::EigenvaluesOnly);
  if (const double lowest = solver.eigenvalues()(0); lowest < -tol.eigen_floor) {
    throw InvalidDensity("density matrix has eigenvalue " + std::to_string(lowest));
  }
}

template <typename Real>
bool is_density(const CMatrix<Real>& rho, const Tolerances& tol = {}) {
  try {
    check_density(rho, tol);
    return true;
  } catch (const InvalidDensity&) {
    return false;
  }
}

}  // namespace qdchan
