#include "latticenn/regress.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "latticenn/rng.hpp"

namespace latticenn {

namespace {
constexpr double kMinRange = 1e-300;
}

FeatureScaler FeatureScaler::fit(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  FeatureScaler s;
  s.lo = rows.colwise().minCoeff();
  s.range = (rows.colwise().maxCoeff().transpose() - s.lo).cwiseMax(kMinRange);
  return s;
}

Eigen::MatrixXd FeatureScaler::apply(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                     bool clamp) const {
  Eigen::MatrixXd out =
      2.0 * ((rows.rowwise() - lo.transpose()).array().rowwise() /
             range.transpose().array()) -
      1.0;
  if (clamp) out = out.cwiseMax(-1.0).cwiseMin(1.0);
  return out;
}

TargetScaler TargetScaler::fit(const Eigen::Ref<const Eigen::VectorXd>& values) {
  TargetScaler s;
  s.lo = values.minCoeff();
  s.range = std::max(values.maxCoeff() - s.lo, kMinRange);
  return s;
}

void SplitSpec::validate() const {
  if (!(train_fraction > 0.0) || !(val_fraction > 0.0) || !(test_fraction > 0.0))
    throw RegressError("split fractions must be positive");
  if (std::abs(train_fraction + val_fraction + test_fraction - 1.0) > 1e-12)
    throw RegressError("split fractions must sum to 1");
}

ReplicateSplit split_replicates(Eigen::Index n, const SplitSpec& spec) {
  spec.validate();
  const auto ntr = static_cast<Eigen::Index>(
      std::llround(spec.train_fraction * static_cast<double>(n)));
  const auto nva = static_cast<Eigen::Index>(
      std::llround(spec.val_fraction * static_cast<double>(n)));
  const Eigen::Index nte = n - ntr - nva;
  if (ntr < 1 || nva < 1 || nte < 1)
    throw RegressError("replicate count " + std::to_string(n) +
                       " too small: every split needs at least one replicate");

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  RandomStream stream(derive_seed(spec.seed, "replicate-split", 0));
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(stream.next_u64() %
                                             static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }

  ReplicateSplit split;
  split.train.assign(perm.begin(), perm.begin() + ntr);
  split.val.assign(perm.begin() + ntr, perm.begin() + ntr + nva);
  split.test.assign(perm.begin() + ntr + nva, perm.end());
  return split;
}

namespace {

// Feature row layout shared by every assembly path: neighbor responses by
// site index, then covariates by (covariate index, site index).
Eigen::MatrixXd raw_features(const Eigen::MatrixXd& response,
                             const std::vector<const Eigen::MatrixXd*>& covariates,
                             const Neighborhood& resp_nb,
                             const Neighborhood& cov_nb) {
  const Eigen::Index n = response.rows();
  const auto p = static_cast<Eigen::Index>(covariates.size());
  const Eigen::Index q = resp_nb.cardinality() + p * cov_nb.cardinality();
  Eigen::MatrixXd inputs(n, q);
  Eigen::Index col = 0;
  for (Eigen::Index j : resp_nb.member_indices) inputs.col(col++) = response.col(j);
  for (const Eigen::MatrixXd* x : covariates)
    for (Eigen::Index j : cov_nb.member_indices) inputs.col(col++) = x->col(j);
  return inputs;
}

std::vector<const Eigen::MatrixXd*> covariate_ptrs(const SimulatedDataset& data) {
  std::vector<const Eigen::MatrixXd*> out;
  out.reserve(data.covariates.size());
  for (const FieldRealization& x : data.covariates) out.push_back(&x.values);
  return out;
}

}  // namespace

LocalDataset assemble_local(const Eigen::MatrixXd& response,
                            const std::vector<Eigen::MatrixXd>& covariates,
                            const SiteSet& sites, Eigen::Index center,
                            double delta, const SplitSpec& split) {
  std::vector<const Eigen::MatrixXd*> ptrs;
  ptrs.reserve(covariates.size());
  for (const Eigen::MatrixXd& x : covariates) ptrs.push_back(&x);

  const Eigen::Index n = response.rows();
  LocalDataset local;
  local.site = center;
  local.response_nb = neighborhood(sites, center, delta, /*include_center=*/false);
  local.covariate_nb = neighborhood(sites, center, delta, /*include_center=*/true);
  if (local.response_nb.cardinality() == 0)
    throw RegressError(
        "empty neighborhood: no site other than the center lies within delta = " +
        std::to_string(delta));

  const auto p = static_cast<Eigen::Index>(covariates.size());
  const Eigen::Index q =
      local.response_nb.cardinality() + p * local.covariate_nb.cardinality();
  const Eigen::Index bound = std::max(sites.count(), n);
  if (q >= bound)
    throw GuardError("dimensionality guard violated: q = " + std::to_string(q) +
                     " >= max{N_n = " + std::to_string(sites.count()) +
                     ", n = " + std::to_string(n) + "}");

  local.inputs = raw_features(response, ptrs, local.response_nb, local.covariate_nb);
  local.targets = response.col(center);
  local.split = split_replicates(n, split);

  Eigen::MatrixXd train_rows(static_cast<Eigen::Index>(local.split.train.size()), q);
  Eigen::VectorXd train_targets(train_rows.rows());
  for (Eigen::Index i = 0; i < train_rows.rows(); ++i) {
    train_rows.row(i) = local.inputs.row(local.split.train[static_cast<std::size_t>(i)]);
    train_targets(i) = local.targets(local.split.train[static_cast<std::size_t>(i)]);
  }
  local.input_scaler = FeatureScaler::fit(train_rows);
  local.target_scaler = TargetScaler::fit(train_targets);
  return local;
}

LocalDataset assemble_local(const SimulatedDataset& data, const SiteSet& sites,
                            Eigen::Index center, double delta,
                            const SplitSpec& split) {
  std::vector<Eigen::MatrixXd> covariates;
  covariates.reserve(data.covariates.size());
  for (const FieldRealization& x : data.covariates) covariates.push_back(x.values);
  return assemble_local(data.response.values, covariates, sites, center, delta, split);
}

Eigen::Index TrainConfig::resolve_width(Eigen::Index n) const {
  if (hidden_width > 0) return hidden_width;
  return static_cast<Eigen::Index>(std::ceil(std::pow(static_cast<double>(n), 0.3)));
}

namespace {

struct EpochTrainer {
  const TrainConfig& cfg;
  NetworkParams params;
  AdamState adam;
  NetworkParams best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> curve;
  std::uint64_t seed;

  EpochTrainer(const TrainConfig& config, Eigen::Index q, Eigen::Index r,
               std::uint64_t fit_seed)
      : cfg(config),
        params(init_params({q, r}, config.v1, config.v2, fit_seed)),
        adam(AdamState::init(params, config.adam)),
        best(params),
        seed(fit_seed) {}

  void run(const Eigen::MatrixXd& x_train, const Eigen::VectorXd& y_train,
           const Eigen::MatrixXd& x_val, const Eigen::VectorXd& y_val) {
    const Eigen::Index ntr = y_train.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ntr));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      if (cfg.schedule == TrainConfig::Schedule::Cosine)
        adam.config.alpha = cfg.adam.alpha * 0.5 *
                            (1.0 + std::cos(M_PI * static_cast<double>(epoch) /
                                            static_cast<double>(cfg.epochs)));
      RandomStream shuffle(
          derive_seed(seed, "epoch-shuffle", static_cast<std::uint64_t>(epoch)));
      for (Eigen::Index i = ntr - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(shuffle.next_u64() %
                                                 static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
      }
      for (Eigen::Index start = 0; start < ntr; start += cfg.batch_size) {
        const Eigen::Index b = std::min(cfg.batch_size, ntr - start);
        Batch batch;
        batch.inputs.resize(b, x_train.cols());
        batch.targets.resize(b);
        for (Eigen::Index i = 0; i < b; ++i) {
          batch.inputs.row(i) = x_train.row(order[static_cast<std::size_t>(start + i)]);
          batch.targets(i) = y_train(order[static_cast<std::size_t>(start + i)]);
        }
        const NetworkGradient grad = backward(params, batch);
        adam_step(adam, params, grad);
        project_constraints(params);
      }
      const double train_loss =
          (forward_batch(params, x_train) - y_train).squaredNorm() /
          static_cast<double>(ntr);
      const double val_loss = (forward_batch(params, x_val) - y_val).squaredNorm() /
                              static_cast<double>(y_val.size());
      if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
        throw TrainingDiverged(epoch);
      curve.emplace_back(train_loss, val_loss);
      if (val_loss < best_val) {
        best_val = val_loss;
        best = params;
      }
    }
  }
};

}  // namespace

double mspe(const NetworkParams& params, const LocalDataset& local,
            const std::vector<Eigen::Index>& test_indices) {
  if (test_indices.empty()) throw RegressError("mspe over an empty test set");
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(test_indices.size()), local.q());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    rows.row(i) = local.inputs.row(test_indices[static_cast<std::size_t>(i)]);
  const Eigen::VectorXd pred_unit =
      forward_batch(params, local.input_scaler.apply(rows, true));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < pred_unit.size(); ++i) {
    const double resid = local.target_scaler.from_unit(pred_unit(i)) -
                         local.targets(test_indices[static_cast<std::size_t>(i)]);
    sum += resid * resid;
  }
  return sum / static_cast<double>(pred_unit.size());
}

FitResult fit_local(const LocalDataset& local, const TrainConfig& config,
                    std::uint64_t seed) {
  const auto pick = [&](const std::vector<Eigen::Index>& idx, bool clamp,
                        Eigen::MatrixXd& x, Eigen::VectorXd& y) {
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(idx.size()), local.q());
    y.resize(static_cast<Eigen::Index>(idx.size()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      rows.row(i) = local.inputs.row(idx[static_cast<std::size_t>(i)]);
      y(i) = local.target_scaler.to_unit(local.targets(idx[static_cast<std::size_t>(i)]));
    }
    x = local.input_scaler.apply(rows, clamp);
  };
  Eigen::MatrixXd x_train, x_val;
  Eigen::VectorXd y_train, y_val;
  pick(local.split.train, false, x_train, y_train);
  pick(local.split.val, true, x_val, y_val);

  const Eigen::Index r = config.resolve_width(local.replicates());
  EpochTrainer trainer(config, local.q(), r, seed);
  trainer.run(x_train, y_train, x_val, y_val);

  FitResult result;
  result.params = trainer.best;
  result.curve = std::move(trainer.curve);
  result.epochs_run = config.epochs;
  result.seed = seed;
  result.mspe = mspe(result.params, local, local.split.test);
  return result;
}

void ScenarioConfig::validate() const {
  matern.validate();
  if (designs.empty()) throw RegressError("scenario needs at least one design point");
  if (deltas.empty()) throw RegressError("scenario needs at least one delta");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] > deltas[i - 1]))
      throw RegressError("delta values must be strictly increasing");
  if (seeds.empty()) throw RegressError("scenario needs at least one seed");
  if (target_sites < 1) throw RegressError("target_sites must be >= 1");
}

namespace {

bool site_is_interior(const SiteSet& sites, Eigen::Index i, double delta) {
  const Eigen::Index d = sites.sites.cols();
  for (Eigen::Index a = 0; a < d; ++a) {
    const double lo =
        sites.design.lambda * sites.design.prototype.lower[static_cast<std::size_t>(a)];
    const double hi =
        sites.design.lambda * sites.design.prototype.upper[static_cast<std::size_t>(a)];
    const double c = sites.sites(i, a);
    if (!((c - delta > lo + 1e-12) && (c + delta <= hi + 1e-12))) return false;
  }
  return true;
}

}  // namespace

std::vector<Eigen::Index> interior_target_sites(const SiteSet& sites, double delta,
                                                int count) {
  std::vector<std::pair<double, Eigen::Index>> ranked;
  for (Eigen::Index i = 0; i < sites.count(); ++i)
    if (site_is_interior(sites, i, delta))
      ranked.emplace_back(sites.sites.row(i).norm(), i);
  if (static_cast<int>(ranked.size()) < count)
    throw RegressError("fewer than " + std::to_string(count) +
                       " interior sites at delta = " + std::to_string(delta));
  std::sort(ranked.begin(), ranked.end());
  std::vector<Eigen::Index> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(ranked[static_cast<std::size_t>(i)].second);
  return out;
}

PooledFit fit_pooled(const SimulatedDataset& data, const SiteSet& sites,
                     double delta, const std::vector<Eigen::Index>& must_include,
                     const PooledFitSpec& spec, std::uint64_t seed) {
  const Eigen::MatrixXd& response = data.response.values;
  const std::vector<const Eigen::MatrixXd*> covariates = covariate_ptrs(data);
  const Eigen::Index n = response.rows();

  PooledFit fit;
  fit.delta = delta;
  SplitSpec split_spec = spec.split;
  split_spec.seed = derive_seed(seed, "pooled-split", 0);
  fit.split = split_replicates(n, split_spec);

  std::vector<Eigen::Index> pool;
  for (Eigen::Index i = 0; i < sites.count(); ++i)
    if (site_is_interior(sites, i, delta)) pool.push_back(i);
  if (pool.empty())
    throw RegressError("no interior site at delta = " + std::to_string(delta));
  if (spec.site_cap > 0 && static_cast<Eigen::Index>(pool.size()) > spec.site_cap) {
    RandomStream stream(derive_seed(seed, "pooled-site-pick", 0));
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(stream.next_u64() % (i + 1));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(spec.site_cap));
  }
  for (Eigen::Index t : must_include) {
    if (!site_is_interior(sites, t, delta))
      throw RegressError("target site " + std::to_string(t) +
                         " is not interior at delta = " + std::to_string(delta));
    if (std::find(pool.begin(), pool.end(), t) == pool.end()) pool.push_back(t);
  }
  std::sort(pool.begin(), pool.end());
  fit.pool = pool;

  const auto p = static_cast<Eigen::Index>(covariates.size());
  const Neighborhood nb0 = neighborhood(sites, pool.front(), delta, false);
  fit.q = nb0.cardinality() * (1 + p) + p;

  const Eigen::Index rows_train = static_cast<Eigen::Index>(fit.split.train.size()) *
                                  static_cast<Eigen::Index>(pool.size());
  if (fit.q >= std::max(sites.count(), rows_train))
    throw GuardError("dimensionality guard violated in pooled fit: q = " +
                     std::to_string(fit.q) +
                     " >= max{N_n = " + std::to_string(sites.count()) +
                     ", pooled train rows = " + std::to_string(rows_train) + "}");

  Eigen::MatrixXd x_train(rows_train, fit.q);
  Eigen::MatrixXd x_val(static_cast<Eigen::Index>(fit.split.val.size()) *
                            static_cast<Eigen::Index>(pool.size()),
                        fit.q);
  Eigen::VectorXd y_train(x_train.rows()), y_val(x_val.rows());

  Eigen::Index row_tr = 0, row_va = 0;
  for (Eigen::Index center : pool) {
    const Neighborhood resp_nb = neighborhood(sites, center, delta, false);
    const Neighborhood cov_nb = neighborhood(sites, center, delta, true);
    const Eigen::MatrixXd feats = raw_features(response, covariates, resp_nb, cov_nb);
    if (feats.cols() != fit.q)
      throw RegressError("pooled feature layout mismatch at site " +
                         std::to_string(center) +
                         " (boundary-truncated neighborhood in the pool)");
    for (Eigen::Index t : fit.split.train) {
      x_train.row(row_tr) = feats.row(t);
      y_train(row_tr++) = response(t, center);
    }
    for (Eigen::Index t : fit.split.val) {
      x_val.row(row_va) = feats.row(t);
      y_val(row_va++) = response(t, center);
    }
  }

  fit.input_scaler = FeatureScaler::fit(x_train);
  fit.target_scaler = TargetScaler::fit(y_train);
  const Eigen::MatrixXd xs_train = fit.input_scaler.apply(x_train, false);
  const Eigen::MatrixXd xs_val = fit.input_scaler.apply(x_val, true);
  Eigen::VectorXd ys_train(y_train.size()), ys_val(y_val.size());
  for (Eigen::Index i = 0; i < y_train.size(); ++i)
    ys_train(i) = fit.target_scaler.to_unit(y_train(i));
  for (Eigen::Index i = 0; i < y_val.size(); ++i)
    ys_val(i) = fit.target_scaler.to_unit(y_val(i));

  const Eigen::Index r = spec.train.resolve_width(n);
  EpochTrainer trainer(spec.train, fit.q, r, derive_seed(seed, "pooled-fit", 0));
  trainer.run(xs_train, ys_train, xs_val, ys_val);
  fit.params = trainer.best;
  return fit;
}

double predict_pooled(const PooledFit& fit, const SimulatedDataset& data,
                      const SiteSet& sites, Eigen::Index center, Eigen::Index t) {
  const Neighborhood resp_nb = neighborhood(sites, center, fit.delta, false);
  const Neighborhood cov_nb = neighborhood(sites, center, fit.delta, true);
  const auto p = static_cast<Eigen::Index>(data.covariates.size());
  const Eigen::Index q = resp_nb.cardinality() * (1 + p) + p;
  if (q != fit.q)
    throw RegressError("site " + std::to_string(center) +
                       " has a truncated neighborhood; pooled prediction needs an interior site");

  Eigen::MatrixXd row(1, q);
  Eigen::Index col = 0;
  for (Eigen::Index j : resp_nb.member_indices)
    row(0, col++) = data.response.values(t, j);
  for (const FieldRealization& x : data.covariates)
    for (Eigen::Index j : cov_nb.member_indices) row(0, col++) = x.values(t, j);

  const Eigen::VectorXd pred = forward_batch(fit.params, fit.input_scaler.apply(row, true));
  return fit.target_scaler.from_unit(pred(0));
}

namespace {

// One unit of scenario work: every delta at a fixed (design, seed), sharing
// one simulated dataset.
struct ScenarioCell {
  std::size_t design_index;
  std::size_t seed_index;
};

}  // namespace

std::vector<ScenarioRow> run_scenario(const ScenarioConfig& config) {
  config.validate();

  std::vector<ScenarioCell> cells;
  for (std::size_t di = 0; di < config.designs.size(); ++di)
    for (std::size_t si = 0; si < config.seeds.size(); ++si)
      cells.push_back({di, si});

  // cell_mspes[cell][delta] holds the per-target-site MSPEs
  std::vector<std::vector<std::vector<double>>> cell_mspes(cells.size());
  std::vector<std::vector<Eigen::Index>> cell_gamma(cells.size());

  const auto run_cell = [&](std::size_t ci) {
    const ScenarioCell& cell = cells[ci];
    const DesignPoint& dp = config.designs[cell.design_index];
    const std::uint64_t seed = config.seeds[cell.seed_index];

    SamplingDesign design;
    design.prototype = PrototypeRegion::unit_box(config.dimension);
    design.lambda = dp.lambda;
    design.eta = dp.eta;
    design.increments.assign(static_cast<std::size_t>(config.dimension), 1.0);
    const SiteSet sites = build_sites(design);

    const std::vector<Eigen::Index> targets =
        interior_target_sites(sites, config.deltas.back(), config.target_sites);
    const SimulatedDataset data = simulate_dataset(
        sites, config.matern, dp.n,
        derive_seed(seed, "scenario-data", static_cast<std::uint64_t>(cell.design_index)),
        config.response_noise_sd);

    cell_mspes[ci].resize(config.deltas.size());
    cell_gamma[ci].resize(config.deltas.size());
    for (std::size_t ki = 0; ki < config.deltas.size(); ++ki) {
      const double delta = config.deltas[ki];
      const std::uint64_t cell_seed = derive_seed(
          seed, "scenario-cell",
          static_cast<std::uint64_t>(cell.design_index * 1000 + ki));
      cell_gamma[ci][ki] =
          neighborhood(sites, targets.front(), delta, /*include_center=*/true)
              .cardinality();

      if (config.fit_mode == ScenarioConfig::FitMode::Pooled) {
        PooledFitSpec spec{config.train, config.split, config.pooled_site_cap};
        const PooledFit fit = fit_pooled(data, sites, delta, targets, spec, cell_seed);
        for (Eigen::Index target : targets) {
          double sum = 0.0;
          for (Eigen::Index t : fit.split.test) {
            const double resid = predict_pooled(fit, data, sites, target, t) -
                                 data.response.values(t, target);
            sum += resid * resid;
          }
          cell_mspes[ci][ki].push_back(sum /
                                       static_cast<double>(fit.split.test.size()));
        }
      } else {
        SplitSpec split_spec = config.split;
        split_spec.seed = derive_seed(cell_seed, "pooled-split", 0);
        for (Eigen::Index target : targets) {
          const LocalDataset local =
              assemble_local(data, sites, target, delta, split_spec);
          const FitResult fit = fit_local(
              local, config.train,
              derive_seed(cell_seed, "site-fit", static_cast<std::uint64_t>(target)));
          cell_mspes[ci][ki].push_back(fit.mspe);
        }
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t ci = next.fetch_add(1); ci < cells.size();
               ci = next.fetch_add(1))
            run_cell(ci);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
  }

  std::vector<ScenarioRow> rows;
  for (std::size_t di = 0; di < config.designs.size(); ++di) {
    for (std::size_t ki = 0; ki < config.deltas.size(); ++ki) {
      std::vector<double> samples;
      Eigen::Index gamma = 0;
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (cells[ci].design_index != di) continue;
        samples.insert(samples.end(), cell_mspes[ci][ki].begin(),
                       cell_mspes[ci][ki].end());
        gamma = cell_gamma[ci][ki];
      }
      const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
                          static_cast<double>(samples.size());
      double var = 0.0;
      for (double s : samples) var += (s - mean) * (s - mean);
      var = samples.size() > 1 ? var / static_cast<double>(samples.size() - 1) : 0.0;

      ScenarioRow row;
      row.name = config.name;
      row.sigma2 = config.matern.sigma2;
      row.phi = config.matern.phi;
      row.nu = config.matern.nu;
      row.lambda = config.designs[di].lambda;
      row.n = config.designs[di].n;
      row.eta = config.designs[di].eta;
      row.delta = config.deltas[ki];
      row.gamma = gamma;
      row.mspe_mean = mean;
      row.mspe_sd = std::sqrt(var);
      row.seed_count = static_cast<int>(config.seeds.size());
      rows.push_back(row);
    }
  }
  return rows;
}

std::string scenario_table_csv(const std::vector<ScenarioRow>& rows, int precision) {
  std::ostringstream os;
  os << "scenario,sigma2,phi,kappa,lambda_n,n,eta_n,delta_n,gamma_n,mspe_mean,mspe_sd,seed_count\n";
  os << std::setprecision(precision);
  for (const ScenarioRow& r : rows) {
    os << r.name << ',' << r.sigma2 << ',' << r.phi << ',' << r.nu << ','
       << r.lambda << ',' << r.n << ',' << r.eta << ',' << r.delta << ','
       << r.gamma << ',' << r.mspe_mean << ',' << r.mspe_sd << ','
       << r.seed_count << "\n";
  }
  return os.str();
}

}  // namespace latticenn
