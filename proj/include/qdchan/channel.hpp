#pragma once

// Two correlated uses of a d-dimensional Heisenberg channel.
//
// Single-use noise is a table q_{m,n} over displacement indices. Two uses draw
// (m,n,m',n') from
//
//   p = (1-mu) q_{m,n} q_{m',n'}
//     + mu q_{m,n} delta_{m,m'} ((1-nu) delta_{n,n'} + nu delta_{n,-n'})
//
// and apply U_{m,n} (x) U_{m',n'}. Index arithmetic is modulo d with
// nonnegative representatives, so -n' means (d - n') mod d.

#include <string>
#include <string_view>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "qdchan/heisenberg.hpp"

namespace qdchan {

enum class Model { QD, QCD };

inline std::string_view to_string(Model model) { return model == Model::QD ? "qd" : "qcd"; }

inline Model parse_model(std::string_view text) {
  if (text == "qd" || text == "QD") return Model::QD;
  if (text == "qcd" || text == "QCD") return Model::QCD;
  throw InvalidArgument("model must be one of {qd, qcd}, got '" + std::string(text) + "'");
}

/// Lowest admissible shrinking factor: -1/(d^2-1) for QD, -1/(d-1) for QCD.
inline double eta_lower_bound(Model model, int d) {
  detail::require_dimension(d);
  return model == Model::QD ? -1.0 / (double(d) * d - 1.0) : -1.0 / (double(d) - 1.0);
}

template <typename Real = double>
struct ChannelSpec {
  Model model = Model::QD;
  int d = 2;
  Real eta = 1;  ///< shrinking factor
  Real mu = 0;   ///< memory
  Real nu = 0;   ///< phase anticorrelation weight

  ChannelSpec with_mu(Real value) const {
    ChannelSpec copy = *this;
    copy.mu = value;
    return copy;
  }
};

using ChannelSpecd = ChannelSpec<double>;

inline void require_unit_interval(const char* name, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

inline void require_eta(Model model, int d, double eta) {
  const double lo = eta_lower_bound(model, d);
  if (!(eta >= lo && eta <= 1.0)) {
    throw InvalidArgument("eta must lie in [" + std::to_string(lo) + ", 1] for " +
                          std::string(to_string(model)) + " with d=" + std::to_string(d) +
                          ", got " + std::to_string(eta));
  }
}

template <typename Real>
void validate(const ChannelSpec<Real>& spec) {
  detail::require_dimension(spec.d);
  require_eta(spec.model, spec.d, static_cast<double>(spec.eta));
  require_unit_interval("mu", static_cast<double>(spec.mu));
  require_unit_interval("nu", static_cast<double>(spec.nu));
}

/// Single-use error probabilities, q(m, n).
template <typename Real = double>
struct MarginalTable {
  int d = 0;
  RMatrix<Real> q;

  Real operator()(int m, int n) const { return q(m, n); }
};

/// Joint two-use error probabilities p(m, n, m', n'), stored densely (d^4).
template <typename Real = double>
struct JointProbTable {
  int d = 0;
  std::vector<Real> values;

  std::size_t offset(int m, int n, int m2, int n2) const {
    const auto dd = static_cast<std::size_t>(d);
    return ((static_cast<std::size_t>(m) * dd + n) * dd + m2) * dd + n2;
  }
  Real operator()(int m, int n, int m2, int n2) const { return values[offset(m, n, m2, n2)]; }
};

/// Depolarizing: p at (0,0), q = (1-p)/(d^2-1) elsewhere, p - q = eta.
template <typename Real = double>
MarginalTable<Real> qd_marginal(int d, Real eta) {
  require_eta(Model::QD, d, static_cast<double>(eta));
  const Real dim2 = Real(d) * Real(d);
  const Real p = (eta * (dim2 - 1) + 1) / dim2;
  const Real q = (1 - eta) / dim2;
  MarginalTable<Real> table{d, RMatrix<Real>::Constant(d, d, q)};
  table.q(0, 0) = p;
  return table;
}

/// Quasi-classical depolarizing: q_{m,n} depends on m only, p on the m = 0 row
/// and q elsewhere, with d (p - q) = eta.
template <typename Real = double>
MarginalTable<Real> qcd_marginal(int d, Real eta) {
  require_eta(Model::QCD, d, static_cast<double>(eta));
  const Real dim2 = Real(d) * Real(d);
  const Real p = (1 + eta * Real(d - 1)) / dim2;
  const Real q = (1 - eta) / dim2;
  MarginalTable<Real> table{d, RMatrix<Real>::Constant(d, d, q)};
  table.q.row(0).setConstant(p);
  return table;
}

template <typename Real>
MarginalTable<Real> marginal(const ChannelSpec<Real>& spec) {
  return spec.model == Model::QD ? qd_marginal<Real>(spec.d, spec.eta)
                                 : qcd_marginal<Real>(spec.d, spec.eta);
}

template <typename Real>
JointProbTable<Real> joint_probability(const MarginalTable<Real>& marginal, Real mu, Real nu) {
  require_unit_interval("mu", static_cast<double>(mu));
  require_unit_interval("nu", static_cast<double>(nu));
  const int d = marginal.d;
  JointProbTable<Real> table{d, std::vector<Real>(static_cast<std::size_t>(d) * d * d * d)};
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const Real qmn = marginal(m, n);
      for (int m2 = 0; m2 < d; ++m2) {
        for (int n2 = 0; n2 < d; ++n2) {
          Real value = (1 - mu) * qmn * marginal(m2, n2);
          if (m == m2) {
            const Real same = n == n2 ? 1 - nu : Real(0);
            const Real opposite = n == detail::mod(-n2, d) ? nu : Real(0);
            value += mu * qmn * (same + opposite);
          }
          table.values[table.offset(m, n, m2, n2)] = value;
        }
      }
    }
  }
  return table;
}

namespace detail {

template <typename Real>
void require_two_qudit(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho) {
  const long dim = static_cast<long>(spec.d) * spec.d;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidArgument("input is " + std::to_string(rho.rows()) + "x" +
                          std::to_string(rho.cols()) + " but d=" + std::to_string(spec.d) +
                          " requires " + std::to_string(dim) + "x" + std::to_string(dim));
  }
}

template <typename Real>
std::vector<Monomial<Real>> all_displacements(int d) {
  std::vector<Monomial<Real>> ops;
  ops.reserve(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) ops.push_back(displacement_monomial<Real>(d, {m, n}));
  return ops;
}

template <typename Real>
Monomial<Real> identity_monomial(int d) {
  return displacement_monomial<Real>(d, {0, 0});
}

}  // namespace detail

/// Applies the two-use channel. The joint sum is split into the uncorrelated
/// part, applied one qudit at a time, and the two correlated parts, each a
/// sum of d^2 monomial conjugations.
template <typename Real>
CMatrix<Real> apply_channel(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho,
                            const Tolerances& tol = {}) {
  validate(spec);
  detail::require_two_qudit(spec, rho);
  check_density(rho, tol);

  const int d = spec.d;
  const long dim = static_cast<long>(d) * d;
  const MarginalTable<Real> q = marginal(spec);
  const auto ops = detail::all_displacements<Real>(d);
  const Monomial<Real> id = detail::identity_monomial<Real>(d);
  auto op = [&](int m, int n) -> const Monomial<Real>& { return ops[m * d + n]; };

  CMatrix<Real> out = CMatrix<Real>::Zero(dim, dim);

  if (const Real w = 1 - spec.mu; w > 0) {
    CMatrix<Real> first = CMatrix<Real>::Zero(dim, dim);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (q(m, n) > 0) conjugate_accumulate(first, q(m, n), kron(op(m, n), id), rho);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (q(m, n) > 0) conjugate_accumulate(out, w * q(m, n), kron(id, op(m, n)), first);
  }
  if (const Real w = spec.mu * (1 - spec.nu); w > 0) {
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (q(m, n) > 0) conjugate_accumulate(out, w * q(m, n), kron(op(m, n), op(m, n)), rho);
  }
  if (const Real w = spec.mu * spec.nu; w > 0) {
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (q(m, n) > 0)
          conjugate_accumulate(out, w * q(m, n), kron(op(m, n), op(m, detail::mod(-n, d))), rho);
  }
  return out;
}

/// Literal d^4-term Kraus sum with dense tensor products. Cost grows as d^10;
/// meant as a reference for small d.
template <typename Real>
CMatrix<Real> apply_channel_naive(const ChannelSpec<Real>& spec, const CMatrix<Real>& rho,
                                  const Tolerances& tol = {}) {
  validate(spec);
  detail::require_two_qudit(spec, rho);
  check_density(rho, tol);

  const int d = spec.d;
  const JointProbTable<Real> joint = joint_probability(marginal(spec), spec.mu, spec.nu);
  std::vector<CMatrix<Real>> ops;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) ops.push_back(displacement<Real>(d, {m, n}));

  CMatrix<Real> out = CMatrix<Real>::Zero(rho.rows(), rho.cols());
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      for (int m2 = 0; m2 < d; ++m2) {
        for (int n2 = 0; n2 < d; ++n2) {
          const Real p = joint(m, n, m2, n2);
          if (p == 0) continue;
          const CMatrix<Real> kraus = Eigen::kroneckerProduct(ops[m * d + n], ops[m2 * d + n2]);
          out += p * (kraus * rho * kraus.adjoint());
        }
      }
    }
  }
  return out;
}

}  // namespace qdchan
