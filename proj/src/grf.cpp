#include "latticenn/grf.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

#include "latticenn/rng.hpp"

namespace latticenn {

CovarianceMatrix build_cov_matrix(const SiteSet& sites, const MaternParams& params) {
  params.validate();
  const Eigen::Index n = sites.count();
  if (n < 1) throw MaternError("covariance matrix needs at least one site");

  CovarianceMatrix cov;
  cov.sigma2 = params.sigma2;
  cov.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov.values(i, i) = params.sigma2;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double h = (sites.sites.row(i) - sites.sites.row(j)).norm();
      const double c = matern_cov(h, params);
      cov.values(i, j) = c;
      cov.values(j, i) = c;
    }
  }
  return cov;
}

CholeskyFactor cholesky_with_jitter(const CovarianceMatrix& cov) {
  const Eigen::Index n = cov.values.rows();
  const double jitters[] = {0.0, 1e-12, 1e-10, 1e-8, 1e-6};
  for (double j : jitters) {
    Eigen::MatrixXd shifted = cov.values;
    if (j > 0.0) shifted.diagonal().array() += j * cov.sigma2;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      CholeskyFactor out;
      out.lower = llt.matrixL();
      out.jitter = j * cov.sigma2;
      return out;
    }
  }
  throw FactorizationError("covariance matrix is not positive definite even with jitter 1e-6*sigma2 (order " +
                           std::to_string(n) + ")");
}

FieldRealization sample_grf(const CholeskyFactor& factor, Eigen::Index n,
                            std::uint64_t seed) {
  if (n < 1) throw FactorizationError("replicate count must be >= 1");
  const Eigen::Index sites = factor.lower.rows();
  FieldRealization field;
  field.seed = seed;
  field.values.resize(n, sites);
  // one stream per replicate so parallel and serial sampling coincide
  for (Eigen::Index t = 0; t < n; ++t) {
    RandomStream stream(derive_seed(seed, "grf-replicate", static_cast<std::uint64_t>(t)));
    Eigen::VectorXd z(sites);
    for (Eigen::Index i = 0; i < sites; ++i) z(i) = stream.normal();
    field.values.row(t) = (factor.lower * z).transpose();
  }
  return field;
}

FieldRealization sample_grf(const SiteSet& sites, const MaternParams& params,
                            Eigen::Index n, std::uint64_t seed) {
  return sample_grf(cholesky_with_jitter(build_cov_matrix(sites, params)), n, seed);
}

SimulatedDataset simulate_dataset(const SiteSet& sites, const MaternParams& params,
                                  Eigen::Index n, std::uint64_t seed,
                                  double response_noise_sd) {
  const CholeskyFactor factor = cholesky_with_jitter(build_cov_matrix(sites, params));

  SimulatedDataset data;
  data.covariates.reserve(SimulatedDataset::kCovariates);
  data.response.seed = seed;
  data.response.values = Eigen::MatrixXd::Zero(n, sites.count());
  for (int k = 1; k <= SimulatedDataset::kCovariates; ++k) {
    FieldRealization x = sample_grf(factor, n,
        derive_seed(seed, "covariate", static_cast<std::uint64_t>(k)));
    data.response.values += static_cast<double>(k) * x.values;
    data.covariates.push_back(std::move(x));
  }
  if (response_noise_sd > 0.0) {
    for (Eigen::Index t = 0; t < n; ++t) {
      RandomStream stream(derive_seed(seed, "response-noise", static_cast<std::uint64_t>(t)));
      for (Eigen::Index i = 0; i < sites.count(); ++i)
        data.response.values(t, i) += response_noise_sd * stream.normal();
    }
  }
  return data;
}

}  // namespace latticenn
