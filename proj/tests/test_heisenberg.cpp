#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qdchan/heisenberg.hpp"
#include "qdchan/random.hpp"

using namespace qdchan;

namespace {
constexpr double kPi = 3.14159265358979323846;

double max_diff(const CMatrixd& a, const CMatrixd& b) { return (a - b).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("bit flip and phase flip for d=2") {
  CMatrixd x(2, 2);
  x << 0, 1, 1, 0;
  CMatrixd z(2, 2);
  z << 1, 0, 0, -1;
  CHECK(max_diff(displacement(2, {1, 0}), x) < 1e-15);
  CHECK(max_diff(displacement(2, {0, 1}), z) < 1e-15);
}

TEST_CASE("d=3 shift-clock operator U_{1,1}") {
  const std::complex<double> w = std::polar(1.0, 2 * kPi / 3);
  CMatrixd expected = CMatrixd::Zero(3, 3);
  expected(1, 0) = 1.0;
  expected(2, 1) = w;
  expected(0, 2) = w * w;
  CHECK(max_diff(displacement(3, {1, 1}), expected) < 1e-15);
  CHECK(max_diff(displacement(3, {1, 1}), oracle::shift_clock(3, 1, 1)) < 1e-15);
}

TEST_CASE("displacement rejects bad arguments") {
  CHECK_THROWS_AS(displacement(1, {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(displacement(3, {3, 0}), InvalidArgument);
  CHECK_THROWS_AS(displacement(3, {0, -1}), InvalidArgument);
  CHECK_THROWS_AS(commutation_phase(3, {0, 0}, {0, 5}), InvalidArgument);
}

TEST_CASE("commutation phase examples") {
  CHECK(std::abs(commutation_phase(2, {1, 0}, {0, 1}) - std::complex<double>(-1, 0)) < 1e-15);
  for (int d = 2; d <= 6; ++d)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) CHECK(std::abs(commutation_phase(d, {0, 0}, {m, n}) - 1.0) < 1e-15);

  // X Z |k> = w^k |k+1> while Z X |k> = w^{k+1} |k+1>, so X Z = w^{-1} Z X.
  const CMatrixd x = oracle::shift_clock(3, 1, 0);
  const CMatrixd z = oracle::shift_clock(3, 0, 1);
  const std::complex<double> expected = std::polar(1.0, -2 * kPi / 3);
  CHECK(max_diff(x * z, expected * (z * x)) < 1e-15);
  CHECK(std::abs(commutation_phase(3, {1, 0}, {0, 1}) - expected) < 1e-15);
}

TEST_CASE("unitarity for all indices, d <= 8") {
  for (int d = 2; d <= 8; ++d)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) CHECK(is_unitary(displacement(d, {m, n}), 1e-12));
}

TEST_CASE("group property: U_a U_b is a phase times U_{a+b}") {
  for (int d = 2; d <= 6; ++d) {
    for (int a = 0; a < d * d; ++a) {
      for (int b = 0; b < d * d; ++b) {
        const DisplacementIndex ia{a / d, a % d};
        const DisplacementIndex ib{b / d, b % d};
        const CMatrixd prod = displacement(d, ia) * displacement(d, ib);
        const CMatrixd sum = displacement(d, compose(d, ia, ib));
        // Mean ratio over the d shared nonzeros; a single global phase if the property holds.
        const std::complex<double> phase = prod.cwiseProduct(sum.conjugate()).sum() / double(d);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
        CHECK(max_diff(prod, phase * sum) < 1e-12);
      }
    }
  }
}

TEST_CASE("commutation identity holds for all pairs, d <= 6") {
  for (int d = 2; d <= 6; ++d) {
    double worst = 0;
    for (int a = 0; a < d * d; ++a)
      for (int b = 0; b < d * d; ++b) {
        const DisplacementIndex ia{a / d, a % d};
        const DisplacementIndex ib{b / d, b % d};
        const CMatrixd ua = displacement(d, ia);
        const CMatrixd ub = displacement(d, ib);
        worst = std::max(worst, max_diff(ua * ub, commutation_phase(d, ia, ib) * (ub * ua)));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("full twirl over all displacements depolarizes") {
  std::mt19937_64 rng(7);
  for (int d = 2; d <= 6; ++d) {
    const CMatrixd m = random_ginibre(d, d, rng);
    CMatrixd twirl = CMatrixd::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const CMatrixd u = displacement(d, {a, b});
        twirl += u * m * u.adjoint();
      }
    twirl /= double(d * d);
    CHECK(max_diff(twirl, (m.trace() / double(d)) * CMatrixd::Identity(d, d)) < 1e-10);
  }
}

TEST_CASE("monomial conjugation matches the dense product") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 4; ++d) {
    const CMatrixd rho = random_ginibre(d * d, d * d, rng);
    for (int a = 0; a < d * d; ++a) {
      const auto op = kron(displacement_monomial(d, {a / d, a % d}), displacement_monomial(d, {a % d, a / d}));
      CMatrixd fast = CMatrixd::Zero(d * d, d * d);
      conjugate_accumulate(fast, 0.25, op, rho);
      const CMatrixd dense = op.dense();
      CHECK(max_diff(fast, 0.25 * dense * rho * dense.adjoint()) < 1e-13);
    }
  }
}

TEST_CASE("density validation") {
  CMatrixd rho = CMatrixd::Zero(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  CHECK(is_density(rho));
  CMatrixd skew = rho;
  skew(0, 1) = 0.1;
  CHECK_FALSE(is_density(skew));
  CMatrixd heavy = 2.0 * rho;
  CHECK_FALSE(is_density(heavy));
  CMatrixd negative = rho;
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(check_density(negative), InvalidDensity);
}
