#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdchan {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;

/// Numerical tolerances shared by the validation and entropy routines.
struct Tolerances {
  /// Unitarity, Hermiticity, trace and normalization checks.
  double structural = 1e-12;
  /// Most negative eigenvalue accepted (and clamped to zero) in a density matrix.
  double eigen_floor = 1e-10;
  /// Off-sector entries allowed when an input is treated as block-diagonal.
  double sector_leak = 1e-14;
};

/// Raised when an argument violates a documented range or shape.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix that must be a density operator is not one.
class InvalidDensity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

template <typename Real>
constexpr Real two_pi() {
  return Real(2) * Real(3.14159265358979323846264338327950288L);
}

/// Nonnegative representative of `value mod d`.
inline int mod(long long value, int d) {
  const long long r = value % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// e^{2 pi i k / d}, computed from the reduced exponent so large k stays exact.
template <typename Real>
Complex<Real> root_of_unity(long long k, int d) {
  const Real angle = two_pi<Real>() * Real(mod(k, d)) / Real(d);
  return {std::cos(angle), std::sin(angle)};
}

inline void require_dimension(int d) {
  if (d < 2) {
    throw InvalidArgument("dimension d must be >= 2, got " + std::to_string(d));
  }
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

}  // namespace detail
}  // namespace qdchan
