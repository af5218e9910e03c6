#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latticenn/geometry.hpp"
#include "latticenn/grf.hpp"
#include "latticenn/net.hpp"

namespace latticenn {

struct RegressError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// q >= max{N_n, n}: refuse to fit and say why.
struct GuardError : RegressError {
  using RegressError::RegressError;
};

struct TrainingDiverged : RegressError {
  int epoch;
  explicit TrainingDiverged(int at_epoch)
      : RegressError("training diverged (non-finite loss) at epoch " +
                     std::to_string(at_epoch)),
        epoch(at_epoch) {}
};

// Per-feature min-max map onto [-1, 1], fitted on training rows only.
struct FeatureScaler {
  Eigen::VectorXd lo;
  Eigen::VectorXd range;  // hi - lo, floored at a tiny width for constants

  static FeatureScaler fit(const Eigen::Ref<const Eigen::MatrixXd>& rows);
  Eigen::MatrixXd apply(const Eigen::Ref<const Eigen::MatrixXd>& rows, bool clamp) const;
};

struct TargetScaler {
  double lo = 0.0;
  double range = 1.0;

  static TargetScaler fit(const Eigen::Ref<const Eigen::VectorXd>& values);
  double to_unit(double y) const { return 2.0 * (y - lo) / range - 1.0; }
  double from_unit(double u) const { return (u + 1.0) * 0.5 * range + lo; }
};

struct SplitSpec {
  double train_fraction = 0.70;
  double val_fraction = 0.20;
  double test_fraction = 0.10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ReplicateSplit {
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> val;
  std::vector<Eigen::Index> test;
};

// Everything needed to fit the localized network at one target site.
// Response inputs exclude the center; covariate inputs include it. Row t is
// [neighbor responses sorted by site index | covariates sorted by
// (covariate index, site index)].
struct LocalDataset {
  Eigen::Index site = 0;
  Neighborhood response_nb;
  Neighborhood covariate_nb;
  Eigen::MatrixXd inputs;   // n x q, raw units
  Eigen::VectorXd targets;  // n, raw units
  ReplicateSplit split;
  FeatureScaler input_scaler;   // fitted on the train rows
  TargetScaler target_scaler;

  Eigen::Index q() const { return inputs.cols(); }
  Eigen::Index replicates() const { return targets.size(); }
};

struct TrainConfig {
  Eigen::Index hidden_width = 0;  // 0 -> ceil(n^0.3)
  double v1 = 3.0;
  double v2 = 3.0;
  int epochs = 500;
  Eigen::Index batch_size = 16;
  AdamConfig adam;
  enum class Schedule { Constant, Cosine } schedule = Schedule::Constant;

  Eigen::Index resolve_width(Eigen::Index n) const;
};

struct FitResult {
  NetworkParams params;  // best-validation snapshot
  std::vector<std::pair<double, double>> curve;  // per-epoch (train, val) loss
  double mspe = 0.0;     // original response units, test replicates
  int epochs_run = 0;
  std::uint64_t seed = 0;
};

ReplicateSplit split_replicates(Eigen::Index n, const SplitSpec& spec);

LocalDataset assemble_local(const Eigen::MatrixXd& response,
                            const std::vector<Eigen::MatrixXd>& covariates,
                            const SiteSet& sites, Eigen::Index center,
                            double delta, const SplitSpec& split);

LocalDataset assemble_local(const SimulatedDataset& data, const SiteSet& sites,
                            Eigen::Index center, double delta,
                            const SplitSpec& split);

FitResult fit_local(const LocalDataset& local, const TrainConfig& config,
                    std::uint64_t seed);

double mspe(const NetworkParams& params, const LocalDataset& local,
            const std::vector<Eigen::Index>& test_indices);

// ---- scenario driver ----

struct DesignPoint {
  double lambda = 4.0;
  Eigen::Index n = 20;
  double eta = 0.16;
};

struct ScenarioConfig {
  std::string name = "scenario";
  MaternParams matern;
  int dimension = 2;
  std::vector<DesignPoint> designs;
  std::vector<double> deltas;          // strictly increasing
  int target_sites = 5;                // interior sites nearest the centroid
  std::vector<std::uint64_t> seeds;    // replication seeds
  TrainConfig train;
  SplitSpec split;
  double response_noise_sd = 0.0;

  // pooled: one network per (design, delta, seed) trained on rows from all
  // interior sites (the replicate-level split applies to every site alike);
  // per_site: an independent network per target site.
  enum class FitMode { Pooled, PerSite } fit_mode = FitMode::Pooled;
  Eigen::Index pooled_site_cap = 256;  // subsample cap on pooled sites
  int jobs = 1;

  void validate() const;
};

struct ScenarioRow {
  std::string name;
  double sigma2, phi, nu;
  double lambda;
  Eigen::Index n;
  double eta;
  double delta;
  Eigen::Index gamma;  // covariate-neighborhood cardinality at a target site
  double mspe_mean;
  double mspe_sd;
  int seed_count;
};

// Centroid-nearest sites whose neighborhoods at `delta` stay inside the
// region (full neighborhoods, no boundary truncation).
std::vector<Eigen::Index> interior_target_sites(const SiteSet& sites, double delta,
                                                int count);

// One network trained on rows pooled over interior sites (graph-level split:
// the same replicate split applies at every site). Evaluation assembles the
// feature row for any interior center on demand.
struct PooledFit {
  double delta = 0.0;
  NetworkParams params;
  FeatureScaler input_scaler;
  TargetScaler target_scaler;
  ReplicateSplit split;
  std::vector<Eigen::Index> pool;
  Eigen::Index q = 0;
};

struct PooledFitSpec {
  TrainConfig train;
  SplitSpec split;
  Eigen::Index site_cap = 256;
};

PooledFit fit_pooled(const SimulatedDataset& data, const SiteSet& sites,
                     double delta, const std::vector<Eigen::Index>& must_include,
                     const PooledFitSpec& spec, std::uint64_t seed);

// Raw-unit prediction at (center, replicate); center must have a full
// neighborhood at the fit's delta.
double predict_pooled(const PooledFit& fit, const SimulatedDataset& data,
                      const SiteSet& sites, Eigen::Index center, Eigen::Index t);

std::vector<ScenarioRow> run_scenario(const ScenarioConfig& config);

std::string scenario_table_csv(const std::vector<ScenarioRow>& rows, int precision);

}  // namespace latticenn
