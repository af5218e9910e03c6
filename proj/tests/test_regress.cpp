#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "latticenn/regress.hpp"
#include "latticenn/rng.hpp"

using namespace latticenn;

namespace {

SiteSet grid_sites(int d, double lambda, double eta) {
  SamplingDesign design;
  design.prototype = PrototypeRegion::unit_box(d);
  design.lambda = lambda;
  design.eta = eta;
  design.increments.assign(static_cast<std::size_t>(d), 1.0);
  return build_sites(design);
}

SplitSpec seeded_split(std::uint64_t seed) {
  SplitSpec s;
  s.seed = seed;
  return s;
}

SimulatedDataset constant_dataset(Eigen::Index n, Eigen::Index sites, double value) {
  SimulatedDataset data;
  for (int k = 0; k < 10; ++k) {
    FieldRealization x;
    x.values = Eigen::MatrixXd::Constant(n, sites, 0.0);
    data.covariates.push_back(std::move(x));
  }
  data.response.values = Eigen::MatrixXd::Constant(n, sites, value);
  return data;
}

SimulatedDataset random_dataset(Eigen::Index n, Eigen::Index sites, std::uint64_t seed) {
  SimulatedDataset data;
  RandomStream stream(seed);
  for (int k = 0; k < 10; ++k) {
    FieldRealization x;
    x.values.resize(n, sites);
    for (Eigen::Index t = 0; t < n; ++t)
      for (Eigen::Index i = 0; i < sites; ++i) x.values(t, i) = stream.normal();
    data.covariates.push_back(std::move(x));
  }
  data.response.values = Eigen::MatrixXd::Zero(n, sites);
  for (int k = 1; k <= 10; ++k)
    data.response.values +=
        static_cast<double>(k) * data.covariates[static_cast<std::size_t>(k - 1)].values;
  return data;
}

}  // namespace

TEST_CASE("split examples and properties") {
  const ReplicateSplit s20 = split_replicates(20, seeded_split(1));
  CHECK(s20.train.size() == 14);
  CHECK(s20.val.size() == 4);
  CHECK(s20.test.size() == 2);

  const ReplicateSplit s50 = split_replicates(50, seeded_split(1));
  CHECK(s50.train.size() == 35);
  CHECK(s50.val.size() == 10);
  CHECK(s50.test.size() == 5);

  CHECK_THROWS_AS(split_replicates(2, seeded_split(1)), RegressError);

  for (Eigen::Index n = 3; n <= 1000; n += (n < 40 ? 1 : 37)) {
    // the rounding rule decides whether this n admits a valid split
    const auto ntr = static_cast<Eigen::Index>(std::llround(0.7 * static_cast<double>(n)));
    const auto nva = static_cast<Eigen::Index>(std::llround(0.2 * static_cast<double>(n)));
    if (ntr < 1 || nva < 1 || n - ntr - nva < 1) {
      CHECK_THROWS_AS(split_replicates(n, seeded_split(99)), RegressError);
      continue;
    }
    const ReplicateSplit s = split_replicates(n, seeded_split(99));
    std::set<Eigen::Index> all;
    for (const auto* part : {&s.train, &s.val, &s.test})
      for (Eigen::Index i : *part) CHECK(all.insert(i).second);
    CHECK(static_cast<Eigen::Index>(all.size()) == n);
    CHECK(*all.begin() == 0);
    CHECK(*all.rbegin() == n - 1);
  }

  const ReplicateSplit a = split_replicates(20, seeded_split(5));
  const ReplicateSplit b = split_replicates(20, seeded_split(5));
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.train != split_replicates(20, seeded_split(6)).train);

  SplitSpec bad;
  bad.train_fraction = 0.5;
  bad.val_fraction = 0.2;
  bad.test_fraction = 0.2;
  CHECK_THROWS_AS(split_replicates(20, bad), RegressError);
}

TEST_CASE("assemble_local layout and errors") {
  const SiteSet sites = grid_sites(2, 4.0, 0.16);
  const SimulatedDataset data = random_dataset(20, sites.count(), 7);
  const Eigen::Index center = interior_target_sites(sites, 0.3, 1).front();

  const LocalDataset local = assemble_local(data, sites, center, 0.3, seeded_split(3));
  // 0.3-ball on the 0.16 lattice: 9 sites with the center, 8 without
  CHECK(local.covariate_nb.cardinality() == 9);
  CHECK(local.response_nb.cardinality() == 8);
  CHECK(local.q() == 8 + 10 * 9);
  CHECK(local.inputs.rows() == 20);
  CHECK(local.targets.size() == 20);

  const LocalDataset again = assemble_local(data, sites, center, 0.3, seeded_split(3));
  CHECK(local.inputs == again.inputs);
  CHECK(local.targets == again.targets);

  // row content oracle: responses at sorted neighbor indices come first...
  for (std::size_t j = 0; j < local.response_nb.member_indices.size(); ++j)
    CHECK(local.inputs(5, static_cast<Eigen::Index>(j)) ==
          data.response.values(5, local.response_nb.member_indices[j]));
  // ...then covariate 1 over the covariate neighborhood
  const Eigen::Index off = local.response_nb.cardinality();
  for (std::size_t j = 0; j < local.covariate_nb.member_indices.size(); ++j)
    CHECK(local.inputs(5, off + static_cast<Eigen::Index>(j)) ==
          data.covariates[0].values(5, local.covariate_nb.member_indices[j]));

  CHECK_THROWS_AS(assemble_local(data, sites, center, 0.1, seeded_split(3)),
                  RegressError);

  // guard: delta = 0.8 gives q = 890 >= max{625, 20}
  CHECK_THROWS_WITH_AS(assemble_local(data, sites, center, 0.8, seeded_split(3)),
                       doctest::Contains("dimensionality guard"), GuardError);
}

TEST_CASE("scaling round-trips on training rows") {
  const SiteSet sites = grid_sites(2, 4.0, 0.16);
  const SimulatedDataset data = random_dataset(20, sites.count(), 11);
  const Eigen::Index center = interior_target_sites(sites, 0.3, 1).front();
  const LocalDataset local = assemble_local(data, sites, center, 0.3, seeded_split(4));

  Eigen::MatrixXd train_rows(static_cast<Eigen::Index>(local.split.train.size()),
                             local.q());
  for (Eigen::Index i = 0; i < train_rows.rows(); ++i)
    train_rows.row(i) = local.inputs.row(local.split.train[static_cast<std::size_t>(i)]);

  const Eigen::MatrixXd unit = local.input_scaler.apply(train_rows, false);
  CHECK(unit.maxCoeff() <= 1.0 + 1e-12);
  CHECK(unit.minCoeff() >= -1.0 - 1e-12);

  Eigen::MatrixXd back = (unit.array() + 1.0) / 2.0;
  back = (back.array().rowwise() * local.input_scaler.range.transpose().array())
             .rowwise() +
         local.input_scaler.lo.transpose().array();
  CHECK((back - train_rows).cwiseAbs().maxCoeff() < 1e-12);

  for (Eigen::Index t : local.split.train) {
    const double y = local.targets(t);
    CHECK(local.target_scaler.from_unit(local.target_scaler.to_unit(y)) ==
          doctest::Approx(y).epsilon(1e-12));
  }
}

TEST_CASE("fit_local learns a constant target") {
  const SiteSet sites = grid_sites(2, 4.0, 0.4);
  SimulatedDataset data = constant_dataset(20, sites.count(), 3.25);
  // tiny jitter in the inputs keeps min-max scaling well posed
  RandomStream stream(3);
  for (auto& x : data.covariates)
    for (Eigen::Index t = 0; t < 20; ++t)
      for (Eigen::Index i = 0; i < sites.count(); ++i)
        x.values(t, i) = 1e-6 * stream.normal();

  const Eigen::Index center = interior_target_sites(sites, 0.5, 1).front();
  const LocalDataset local = assemble_local(data, sites, center, 0.5, seeded_split(8));
  TrainConfig cfg;
  cfg.hidden_width = 3;
  cfg.epochs = 500;
  const FitResult fit = fit_local(local, cfg, 21);
  CHECK(fit.mspe <= 1e-4);
}

TEST_CASE("fit_local recovers a linear map with enough replicates") {
  const SiteSet sites = grid_sites(2, 4.0, 0.4);
  const Eigen::Index n = 400;
  const SimulatedDataset data = random_dataset(n, sites.count(), 31);

  const Eigen::Index center = interior_target_sites(sites, 0.5, 1).front();
  TrainConfig cfg;
  cfg.hidden_width = 8;
  cfg.epochs = 400;
  cfg.batch_size = 32;
  cfg.adam.alpha = 3e-3;
  cfg.schedule = TrainConfig::Schedule::Cosine;
  const LocalDataset local = assemble_local(data, sites, center, 0.5, seeded_split(9));
  const FitResult fit = fit_local(local, cfg, 77);

  double var = 0.0;
  const double mean = local.targets.mean();
  for (Eigen::Index t = 0; t < n; ++t)
    var += (local.targets(t) - mean) * (local.targets(t) - mean);
  var /= static_cast<double>(n - 1);
  CHECK(fit.mspe <= 0.05 * var);
}

TEST_CASE("fit_local is deterministic and keeps the best-validation snapshot") {
  const SiteSet sites = grid_sites(2, 4.0, 0.4);
  const SimulatedDataset data = random_dataset(30, sites.count(), 17);
  const Eigen::Index center = interior_target_sites(sites, 0.5, 1).front();
  const LocalDataset local = assemble_local(data, sites, center, 0.5, seeded_split(2));

  TrainConfig cfg;
  cfg.hidden_width = 2;
  cfg.epochs = 40;
  const FitResult a = fit_local(local, cfg, 5);
  const FitResult b = fit_local(local, cfg, 5);
  CHECK(a.mspe == b.mspe);
  CHECK(a.params.theta == b.params.theta);
  CHECK(a.curve == b.curve);

  double best_val = std::numeric_limits<double>::infinity();
  for (const auto& [train, val] : a.curve) {
    (void)train;
    best_val = std::min(best_val, val);
  }
  Eigen::MatrixXd val_rows(static_cast<Eigen::Index>(local.split.val.size()), local.q());
  Eigen::VectorXd val_y(val_rows.rows());
  for (Eigen::Index i = 0; i < val_rows.rows(); ++i) {
    val_rows.row(i) = local.inputs.row(local.split.val[static_cast<std::size_t>(i)]);
    val_y(i) = local.target_scaler.to_unit(
        local.targets(local.split.val[static_cast<std::size_t>(i)]));
  }
  const double val_of_best =
      (forward_batch(a.params, local.input_scaler.apply(val_rows, true)) - val_y)
          .squaredNorm() /
      static_cast<double>(val_y.size());
  CHECK(val_of_best == doctest::Approx(best_val).epsilon(1e-12));
}

TEST_CASE("mspe cross-checks against a hand recomputation") {
  const SiteSet sites = grid_sites(2, 4.0, 0.4);
  const SimulatedDataset data = random_dataset(30, sites.count(), 23);
  const Eigen::Index center = interior_target_sites(sites, 0.5, 1).front();
  const LocalDataset local = assemble_local(data, sites, center, 0.5, seeded_split(6));
  TrainConfig cfg;
  cfg.hidden_width = 2;
  cfg.epochs = 10;
  const FitResult fit = fit_local(local, cfg, 1);

  double sum = 0.0;
  for (Eigen::Index t : local.split.test) {
    Eigen::MatrixXd row = local.inputs.row(t);
    const double pred = local.target_scaler.from_unit(
        forward_batch(fit.params, local.input_scaler.apply(row, true))(0));
    sum += (pred - local.targets(t)) * (pred - local.targets(t));
  }
  CHECK(fit.mspe ==
        doctest::Approx(sum / static_cast<double>(local.split.test.size()))
            .epsilon(1e-12));

  CHECK_THROWS_AS(mspe(fit.params, local, {}), RegressError);
  CHECK(mspe(fit.params, local, local.split.test) == doctest::Approx(fit.mspe));
}

TEST_CASE("interior_target_sites picks central full-neighborhood sites") {
  const SiteSet sites = grid_sites(2, 4.0, 0.16);
  const std::vector<Eigen::Index> targets = interior_target_sites(sites, 0.8, 5);
  CHECK(targets.size() == 5);
  for (Eigen::Index t : targets) {
    CHECK(sites.sites.row(t).norm() <= 0.33);
    CHECK(std::abs(sites.sites(t, 0)) + 0.8 <= 2.0 + 1e-9);
  }
  CHECK_THROWS_AS(interior_target_sites(sites, 1.95, 200), RegressError);
}

TEST_CASE("pooled fit predicts and respects the pooled guard") {
  const SiteSet sites = grid_sites(2, 4.0, 0.16);
  const SimulatedDataset data = random_dataset(20, sites.count(), 41);
  const std::vector<Eigen::Index> targets = interior_target_sites(sites, 0.3, 2);

  PooledFitSpec spec;
  spec.train.hidden_width = 3;
  spec.train.epochs = 30;
  spec.site_cap = 40;
  const PooledFit fit = fit_pooled(data, sites, 0.3, targets, spec, 13);
  CHECK(fit.q == 8 + 10 * 9);
  CHECK(std::binary_search(fit.pool.begin(), fit.pool.end(), targets[0]));

  const double pred = predict_pooled(fit, data, sites, targets[0], 0);
  CHECK(std::isfinite(pred));

  const PooledFit fit2 = fit_pooled(data, sites, 0.3, targets, spec, 13);
  CHECK(predict_pooled(fit2, data, sites, targets[0], 0) == pred);

  // boundary sites have truncated neighborhoods
  CHECK_THROWS_AS(predict_pooled(fit, data, sites, 0, 0), RegressError);

  PooledFitSpec tiny = spec;
  tiny.site_cap = 2;
  CHECK_THROWS_AS(fit_pooled(data, sites, 0.8, targets, tiny, 13), GuardError);
}

TEST_CASE("run_scenario shape, ordering, and determinism") {
  ScenarioConfig sc;
  sc.name = "unit";
  sc.matern = MaternParams{1.0, 0.1, 0.5};
  sc.designs = {{3.0, 12, 0.4}};
  sc.deltas = {0.5, 0.7};
  sc.target_sites = 2;
  sc.seeds = {1, 2};
  sc.train.hidden_width = 2;
  sc.train.epochs = 15;
  sc.pooled_site_cap = 0;  // pool every interior site
  sc.jobs = 2;

  const std::vector<ScenarioRow> rows = run_scenario(sc);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].delta == 0.5);
  CHECK(rows[1].delta == 0.7);
  CHECK(rows[0].seed_count == 2);
  CHECK(rows[0].mspe_mean >= 0.0);
  CHECK(rows[0].gamma > 0);

  ScenarioConfig serial = sc;
  serial.jobs = 1;
  const std::vector<ScenarioRow> again = run_scenario(serial);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].mspe_mean == again[i].mspe_mean);
    CHECK(rows[i].mspe_sd == again[i].mspe_sd);
  }

  ScenarioConfig per_site = sc;
  per_site.fit_mode = ScenarioConfig::FitMode::PerSite;
  per_site.designs = {{3.2, 12, 0.4}};  // 64 sites so the per-site guard passes
  per_site.deltas = {0.5};
  per_site.jobs = 1;
  per_site.seeds = {1};
  const std::vector<ScenarioRow> ps = run_scenario(per_site);
  CHECK(ps.size() == 1);
  CHECK(ps[0].mspe_mean >= 0.0);

  ScenarioConfig bad = sc;
  bad.deltas = {0.7, 0.5};
  CHECK_THROWS_AS(run_scenario(bad), RegressError);
}

TEST_CASE("scenario table header") {
  const std::string csv = scenario_table_csv({}, 6);
  CHECK(csv ==
        "scenario,sigma2,phi,kappa,lambda_n,n,eta_n,delta_n,gamma_n,mspe_mean,"
        "mspe_sd,seed_count\n");
}
