#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latticenn/geometry.hpp"
#include "latticenn/matern.hpp"

namespace latticenn {

struct FactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CovarianceMatrix {
  double sigma2 = 1.0;
  Eigen::MatrixXd values;  // dense symmetric, diagonal = sigma2
};

struct CholeskyFactor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;  // diagonal shift that made the factorization succeed
};

// n iid replicate rows of a zero-mean field sampled at the sites.
struct FieldRealization {
  Eigen::MatrixXd values;  // n x N_n
  std::uint64_t seed = 0;

  Eigen::Index replicates() const { return values.rows(); }
  Eigen::Index site_count() const { return values.cols(); }
};

// Ten covariate fields plus the response built as the k-weighted sum.
struct SimulatedDataset {
  static constexpr int kCovariates = 10;
  std::vector<FieldRealization> covariates;  // X_1..X_10
  FieldRealization response;                 // Y = sum_k k X_k (+ optional noise)
};

CovarianceMatrix build_cov_matrix(const SiteSet& sites, const MaternParams& params);

// L with L L^T = cov + j I; the jitter ladder is {0, 1e-12, 1e-10, 1e-8, 1e-6}
// times sigma2, escalated until the factorization succeeds.
CholeskyFactor cholesky_with_jitter(const CovarianceMatrix& cov);

FieldRealization sample_grf(const SiteSet& sites, const MaternParams& params,
                            Eigen::Index n, std::uint64_t seed);

// Shared factor variant; avoids refactorizing when sampling many fields over
// the same sites.
FieldRealization sample_grf(const CholeskyFactor& factor, Eigen::Index n,
                            std::uint64_t seed);

SimulatedDataset simulate_dataset(const SiteSet& sites, const MaternParams& params,
                                  Eigen::Index n, std::uint64_t seed,
                                  double response_noise_sd = 0.0);

}  // namespace latticenn
