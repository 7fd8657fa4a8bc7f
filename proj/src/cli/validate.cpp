#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qdchan/cli.hpp"
#include "qdchan/crossover.hpp"
#include "qdchan/random.hpp"

namespace qdchan::cli {

namespace {

std::string sci(double value) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << value;
  return out.str();
}

/// Runs `check`, which returns the worst observed error, against `limit`.
PropertyResult measure(std::string name, double limit, const std::function<double()>& check) {
  PropertyResult result{std::move(name), false, {}};
  try {
    const double worst = check();
    result.passed = worst <= limit;
    result.detail = "max error " + sci(worst) + " (limit " + sci(limit) + ")";
  } catch (const std::exception& e) {
    result.detail = std::string("exception: ") + e.what();
  }
  return result;
}

ChannelSpec<double> random_spec(Model model, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = eta_lower_bound(model, d);
  return {model, d, lo + (1.0 - lo) * unit(rng), unit(rng), unit(rng)};
}

}  // namespace

std::vector<PropertyResult> run_validation(int max_d) {
  const Tolerances tol;
  std::vector<PropertyResult> results;
  std::mt19937_64 rng(20061016);

  results.push_back(measure("displacement operators are unitary", tol.structural, [&] {
    double worst = 0;
    for (int d = 2; d <= max_d; ++d)
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
          const auto u = displacement(d, {m, n});
          worst = std::max(worst, detail::max_abs(u.adjoint() * u - CMatrixd::Identity(d, d)));
        }
    return worst;
  }));

  results.push_back(measure("commutation phase identity", tol.structural, [&] {
    double worst = 0;
    for (int d = 2; d <= max_d; ++d)
      for (int a = 0; a < d * d; ++a)
        for (int b = 0; b < d * d; ++b) {
          const DisplacementIndex ia{a / d, a % d};
          const DisplacementIndex ib{b / d, b % d};
          const auto ua = displacement(d, ia);
          const auto ub = displacement(d, ib);
          worst = std::max(worst, detail::max_abs(ua * ub - commutation_phase(d, ia, ib) * (ub * ua)));
        }
    return worst;
  }));

  results.push_back(measure("full twirl depolarizes", tol.eigen_floor, [&] {
    double worst = 0;
    for (int d = 2; d <= max_d; ++d) {
      const CMatrixd m = random_ginibre(d, d, rng);
      CMatrixd twirl = CMatrixd::Zero(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const auto u = displacement(d, {a, b});
          twirl += u * m * u.adjoint();
        }
      twirl /= double(d) * d;
      worst = std::max(worst, detail::max_abs(twirl - (m.trace() / double(d)) * CMatrixd::Identity(d, d)));
    }
    return worst;
  }));

  results.push_back(measure("joint table marginalizes to q", tol.structural, [&] {
    double worst = 0;
    for (Model model : {Model::QD, Model::QCD})
      for (int d = 2; d <= max_d; ++d) {
        const auto spec = random_spec(model, d, rng);
        const auto q = marginal(spec);
        const auto joint = joint_probability(q, spec.mu, spec.nu);
        for (int m = 0; m < d; ++m)
          for (int n = 0; n < d; ++n) {
            double sum = 0;
            for (int m2 = 0; m2 < d; ++m2)
              for (int n2 = 0; n2 < d; ++n2) sum += joint(m, n, m2, n2);
            worst = std::max(worst, std::abs(sum - q(m, n)));
          }
      }
    return worst;
  }));

  results.push_back(measure("structured channel matches naive Kraus sum", tol.structural, [&] {
    double worst = 0;
    for (Model model : {Model::QD, Model::QCD})
      for (int d = 2; d <= max_d; ++d)
        for (int trial = 0; trial < 3; ++trial) {
          const auto spec = random_spec(model, d, rng);
          const auto rho = random_density(long(d) * d, rng);
          worst = std::max(worst, detail::max_abs(apply_channel(spec, rho) - apply_channel_naive(spec, rho)));
        }
    return worst;
  }));

  {
    double trace_herm = 0;
    double negativity = 0;
    std::string failure;
    try {
      for (Model model : {Model::QD, Model::QCD})
        for (int d = 2; d <= max_d; ++d)
          for (int trial = 0; trial < 10; ++trial) {
            const auto out = apply_channel(random_spec(model, d, rng), random_density(long(d) * d, rng));
            const Eigen::SelfAdjointEigenSolver<CMatrixd> es(out, Eigen::EigenvaluesOnly);
            trace_herm = std::max({trace_herm, std::abs(out.trace() - 1.0), hermiticity_error(out)});
            negativity = std::max(negativity, -es.eigenvalues()(0));
          }
    } catch (const std::exception& e) {
      failure = e.what();
    }
    results.push_back(measure("channel output is trace-one and Hermitian", tol.structural, [&] {
      if (!failure.empty()) throw std::runtime_error(failure);
      return trace_herm;
    }));
    results.push_back(measure("channel output is positive semidefinite", tol.eigen_floor, [&] {
      if (!failure.empty()) throw std::runtime_error(failure);
      return negativity;
    }));
  }

  results.push_back(measure("d=2 outputs do not depend on nu", tol.structural, [&] {
    double worst = 0;
    for (Model model : {Model::QD, Model::QCD})
      for (int trial = 0; trial < 10; ++trial) {
        auto spec = random_spec(model, 2, rng);
        const auto rho = random_density(4, rng);
        spec.nu = 0;
        const auto a = apply_channel(spec, rho);
        spec.nu = 1;
        worst = std::max(worst, detail::max_abs(a - apply_channel(spec, rho)));
      }
    return worst;
  }));

  // With the U_{0,n} (x) U_{0,n} twirl the invariance holds for correlated
  // phases (nu = 0) and for d = 2; anticorrelated phases break it for d >= 3.
  results.push_back(measure("QCD channel (nu=0) is invariant under phase averaging", tol.eigen_floor, [&] {
    double worst = 0;
    for (int d = 2; d <= max_d; ++d)
      for (int trial = 0; trial < 5; ++trial) {
        auto spec = random_spec(Model::QCD, d, rng);
        spec.nu = 0;
        const auto rho = random_density(long(d) * d, rng);
        worst = std::max(worst, detail::max_abs(apply_channel(spec, averaging_map(d, rho)) -
                                                apply_channel(spec, rho)));
      }
    return worst;
  }));

  results.push_back(measure("blockwise spectrum matches dense spectrum", tol.eigen_floor, [&] {
    double worst = 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Model model : {Model::QD, Model::QCD})
      for (int d = 2; d <= max_d; ++d)
        for (int offset = 0; offset < d; ++offset) {
          const auto spec = random_spec(model, d, rng);
          AnsatzParams<double> params;
          double norm2 = 0;
          for (int j = 0; j < d; ++j) {
            params.alphas.push_back(unit(rng) + 0.1);
            params.phis.push_back(6.283185307179586 * unit(rng));
            norm2 += params.alphas.back() * params.alphas.back();
          }
          for (double& a : params.alphas) a /= std::sqrt(norm2);
          params.offset = offset;
          const auto rho = density_from_pure(ansatz_state(d, params));
          auto dense = output_entropy(spec, rho, EvalPath::Dense).eigenvalues;
          auto blocks = output_entropy(spec, rho, EvalPath::Blockwise).eigenvalues;
          for (std::size_t i = 0; i < dense.size(); ++i) worst = std::max(worst, std::abs(dense[i] - blocks[i]));
        }
    return worst;
  }));

  results.push_back(measure("QD endpoint values (eta=1 noiseless, eta=0 mu=0 depolarized)", tol.eigen_floor, [&] {
    double worst = 0;
    for (int d = 2; d <= max_d; ++d) {
      for (double mu : {0.0, 0.5, 1.0}) {
        const ChannelSpec<double> spec{Model::QD, d, 1.0, mu, 0.5};
        for (const auto& state : {product_state(d), max_entangled_state(d)}) {
          worst = std::max(worst, std::abs(mutual_information(spec, density_from_pure(state)) -
                                           2 * std::log2(double(d))));
        }
      }
      const ChannelSpec<double> depolarizing{Model::QD, d, 0.0, 0.0, 0.0};
      worst = std::max(worst, std::abs(mutual_information(depolarizing, random_density(long(d) * d, rng))));
    }
    return worst;
  }));

  return results;
}

}  // namespace qdchan::cli
