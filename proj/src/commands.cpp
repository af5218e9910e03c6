#include "latticenn/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "latticenn/csvio.hpp"
#include "latticenn/geometry.hpp"
#include "latticenn/gridio.hpp"
#include "latticenn/grf.hpp"
#include "latticenn/inference.hpp"
#include "latticenn/regress.hpp"
#include "latticenn/rng.hpp"

namespace latticenn {

namespace {

const std::vector<std::string> kKnownKeys = {
    "run.seed", "run.out", "run.jobs", "run.full_precision",
    "matern.sigma2", "matern.phi", "matern.kappa",
    "design.dimension", "design.lambda", "design.eta", "design.replicates",
    "design.ladder", "design.deltas",
    "network.hidden", "network.v1", "network.v2",
    "train.epochs", "train.batch", "train.learning_rate", "train.beta1",
    "train.beta2", "train.epsilon", "train.schedule",
    "split.train", "split.val", "split.test",
    "scenario.kappas", "scenario.fit_mode", "scenario.target_sites",
    "scenario.site_cap", "scenario.seeds",
    "simulate.response_noise_sd",
    "fit.site", "fit.delta",
    "ci.alpha", "ci.seeds",
    "kl.bins", "kl.epsilon", "kl.seeds",
    "ingest.path", "ingest.lon", "ingest.lat", "ingest.time",
    "ingest.response", "ingest.covariates",
    "fit_real.grids", "fit_real.deltas", "fit_real.targets",
};

struct Effective {
  RunConfig cfg;
  std::uint64_t seed;
  std::string out_dir;
  int jobs;
  bool full_precision;
  std::uint64_t hash;
};

// Fill every known key with its effective value so the dump is a complete,
// reparseable record of the run.
RunConfig with_defaults(const RunConfig& user) {
  RunConfig cfg = user;
  const auto def = [&](const std::string& sec, const std::string& key,
                       const std::string& value) {
    if (!cfg.has(sec, key)) cfg.set(sec, key, value);
  };
  def("run", "seed", "42");
  def("run", "out", ".");
  def("run", "jobs", "1");
  def("run", "full_precision", "false");
  def("matern", "sigma2", "1.0");
  def("matern", "phi", "0.1");
  def("matern", "kappa", "0.5");
  def("design", "dimension", "2");
  def("design", "lambda", "4");
  def("design", "eta", "0.16");
  def("design", "replicates", "20");
  def("design", "ladder", "4:20:0.16, 5:35:0.14, 6:50:0.12");
  def("design", "deltas", "0.3, 0.6, 0.8");
  def("network", "hidden", "8");
  def("network", "v1", "3.0");
  def("network", "v2", "3.0");
  def("train", "epochs", "800");
  def("train", "batch", "64");
  def("train", "learning_rate", "3e-3");
  def("train", "beta1", "0.9");
  def("train", "beta2", "0.999");
  def("train", "epsilon", "1e-8");
  def("train", "schedule", "cosine");
  def("split", "train", "0.70");
  def("split", "val", "0.20");
  def("split", "test", "0.10");
  def("scenario", "kappas", "0.5, 1.0, 1.5, 2.0");
  def("scenario", "fit_mode", "pooled");
  def("scenario", "target_sites", "5");
  def("scenario", "site_cap", "128");
  def("scenario", "seeds", "5");
  def("simulate", "response_noise_sd", "0");
  def("fit", "site", "center");
  def("fit", "delta", "0.6");
  def("ci", "alpha", "0.05");
  def("ci", "seeds", "5");
  def("kl", "bins", "0");
  def("kl", "epsilon", "1e-6");
  def("kl", "seeds", "5");
  def("ingest", "lon", "lon");
  def("ingest", "lat", "lat");
  def("ingest", "time", "time");
  def("ingest", "response", "response");
  return cfg;
}

Effective resolve(const RunConfig& user, const GlobalOptions& opt) {
  user.require_known_keys(kKnownKeys);
  Effective e{with_defaults(user), 0, "", 1, false, 0};
  e.seed = opt.seed_set
               ? opt.seed
               : static_cast<std::uint64_t>(e.cfg.get_int("run", "seed", 42));
  e.out_dir = !opt.out_dir.empty() && opt.out_dir != "."
                  ? opt.out_dir
                  : e.cfg.get_string("run", "out", ".");
  e.jobs = opt.jobs > 0 ? opt.jobs
                        : static_cast<int>(e.cfg.get_int("run", "jobs", 1));
  e.full_precision =
      opt.full_precision || e.cfg.get_bool("run", "full_precision", false);
  // overrides become part of the effective record
  e.cfg.set("run", "seed", std::to_string(e.seed));
  e.cfg.set("run", "out", e.out_dir);
  e.cfg.set("run", "jobs", std::to_string(e.jobs));
  e.cfg.set("run", "full_precision", e.full_precision ? "true" : "false");
  // the hash identifies the scientific parameters; where the files land and
  // how many workers ran must not change the recorded provenance
  RunConfig hashed = e.cfg;
  hashed.set("run", "out", ".");
  hashed.set("run", "jobs", "1");
  e.hash = hashed.hash();
  std::filesystem::create_directories(e.out_dir);
  return e;
}

std::string out_path(const Effective& e, const std::string& name) {
  return (std::filesystem::path(e.out_dir) / name).string();
}

MaternParams matern_from(const RunConfig& cfg) {
  MaternParams m;
  m.sigma2 = cfg.get_double("matern", "sigma2", 1.0);
  m.phi = cfg.get_double("matern", "phi", 0.1);
  m.nu = cfg.get_double("matern", "kappa", 0.5);
  m.validate();
  if (!matern_order_supported(m.nu))
    throw MaternError("unsupported smoothness kappa = " + std::to_string(m.nu) +
                      "; supported values are {0.5, 1, 1.5, 2, 2.5}");
  return m;
}

SamplingDesign design_from(const RunConfig& cfg, double lambda, double eta) {
  SamplingDesign d;
  const int dim = static_cast<int>(cfg.get_int("design", "dimension", 2));
  d.prototype = PrototypeRegion::unit_box(dim);
  d.lambda = lambda;
  d.eta = eta;
  d.increments.assign(static_cast<std::size_t>(dim), 1.0);
  return d;
}

TrainConfig train_from(const RunConfig& cfg) {
  TrainConfig t;
  t.hidden_width = cfg.get_int("network", "hidden", 8);
  t.v1 = cfg.get_double("network", "v1", 3.0);
  t.v2 = cfg.get_double("network", "v2", 3.0);
  t.epochs = static_cast<int>(cfg.get_int("train", "epochs", 800));
  t.batch_size = cfg.get_int("train", "batch", 64);
  t.adam.alpha = cfg.get_double("train", "learning_rate", 3e-3);
  t.adam.beta1 = cfg.get_double("train", "beta1", 0.9);
  t.adam.beta2 = cfg.get_double("train", "beta2", 0.999);
  t.adam.eps = cfg.get_double("train", "epsilon", 1e-8);
  const std::string sched = cfg.get_string("train", "schedule", "cosine");
  if (sched == "cosine") t.schedule = TrainConfig::Schedule::Cosine;
  else if (sched == "constant") t.schedule = TrainConfig::Schedule::Constant;
  else throw ConfigError("train.schedule must be 'constant' or 'cosine'");
  return t;
}

SplitSpec split_from(const RunConfig& cfg) {
  SplitSpec s;
  s.train_fraction = cfg.get_double("split", "train", 0.70);
  s.val_fraction = cfg.get_double("split", "val", 0.20);
  s.test_fraction = cfg.get_double("split", "test", 0.10);
  s.validate();
  return s;
}

std::vector<DesignPoint> ladder_from(const RunConfig& cfg) {
  std::vector<DesignPoint> out;
  for (const std::string& item :
       cfg.get_string_list("design", "ladder", {"4:20:0.16"})) {
    DesignPoint dp;
    if (std::sscanf(item.c_str(), "%lf:%ld:%lf", &dp.lambda, &dp.n, &dp.eta) != 3)
      throw ConfigError("design.ladder entry '" + item +
                        "' is not of the form lambda:n:eta");
    out.push_back(dp);
  }
  return out;
}

std::vector<std::uint64_t> seeds_from(const Effective& e, const std::string& section,
                                      const std::string& label) {
  const auto count = e.cfg.get_int(section, "seeds", 5);
  if (count < 1) throw ConfigError(section + ".seeds must be >= 1");
  std::vector<std::uint64_t> seeds;
  for (std::int64_t i = 0; i < count; ++i)
    seeds.push_back(derive_seed(e.seed, label, static_cast<std::uint64_t>(i)));
  return seeds;
}

std::string fmt(double v, const Effective& e) {
  return format_double(v, e.full_precision);
}

}  // namespace

int cmd_simulate(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const MaternParams matern = matern_from(e.cfg);
  const SamplingDesign design = design_from(
      e.cfg, e.cfg.get_double("design", "lambda", 4.0),
      e.cfg.get_double("design", "eta", 0.16));
  const Eigen::Index n = e.cfg.get_int("design", "replicates", 20);
  const double noise_sd = e.cfg.get_double("simulate", "response_noise_sd", 0.0);

  const SiteSet sites = build_sites(design);
  const SimulatedDataset data =
      simulate_dataset(sites, matern, n, derive_seed(e.seed, "simulate", 0), noise_sd);

  write_text_file(out_path(e, "sites.csv"),
                  provenance_header(e.hash, e.seed, "simulate") + sites_to_csv(sites));

  std::ostringstream ds;
  ds << provenance_header(e.hash, e.seed, "simulate");
  ds << "replicate,site_index,variable,value\n";
  const auto emit = [&](const Eigen::MatrixXd& vals, const std::string& name) {
    for (Eigen::Index t = 0; t < vals.rows(); ++t)
      for (Eigen::Index i = 0; i < vals.cols(); ++i)
        ds << t << ',' << i << ',' << name << ',' << fmt(vals(t, i), e) << "\n";
  };
  for (std::size_t k = 0; k < data.covariates.size(); ++k)
    emit(data.covariates[k].values, "X" + std::to_string(k + 1));
  emit(data.response.values, "Y");
  write_text_file(out_path(e, "dataset.csv"), ds.str());

  std::ostringstream manifest;
  manifest << provenance_header(e.hash, e.seed, "simulate");
  manifest << "sigma2=" << fmt(matern.sigma2, e) << "\n"
           << "phi=" << fmt(matern.phi, e) << "\n"
           << "kappa=" << fmt(matern.nu, e) << "\n"
           << "lambda=" << fmt(design.lambda, e) << "\n"
           << "eta=" << fmt(design.eta, e) << "\n"
           << "dimension=" << design.prototype.dimension << "\n"
           << "replicates=" << n << "\n"
           << "sites=" << sites.count() << "\n"
           << "response_noise_sd=" << fmt(noise_sd, e) << "\n"
           << "rng=bm-mt19937/1 splitmix64-fnv1a/1\n";
  write_text_file(out_path(e, "manifest.txt"), manifest.str());
  std::cout << "simulate: " << sites.count() << " sites, " << n
            << " replicates -> " << e.out_dir << "\n";
  return 0;
}

int cmd_scenario(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const std::vector<double> kappas =
      e.cfg.get_double_list("scenario", "kappas", {0.5, 1.0, 1.5, 2.0});
  const std::vector<std::uint64_t> seeds = seeds_from(e, "scenario", "scenario-seed");
  const std::string mode = e.cfg.get_string("scenario", "fit_mode", "pooled");

  std::vector<ScenarioRow> all_rows;
  for (std::size_t s = 0; s < kappas.size(); ++s) {
    ScenarioConfig sc;
    sc.name = "scenario" + std::to_string(s + 1);
    sc.matern = matern_from(e.cfg);
    sc.matern.nu = kappas[s];
    if (!matern_order_supported(sc.matern.nu))
      throw MaternError("unsupported smoothness kappa = " + std::to_string(sc.matern.nu));
    sc.dimension = static_cast<int>(e.cfg.get_int("design", "dimension", 2));
    sc.designs = ladder_from(e.cfg);
    sc.deltas = e.cfg.get_double_list("design", "deltas", {0.3, 0.6, 0.8});
    sc.target_sites = static_cast<int>(e.cfg.get_int("scenario", "target_sites", 5));
    sc.seeds = seeds;
    sc.train = train_from(e.cfg);
    sc.split = split_from(e.cfg);
    sc.pooled_site_cap = e.cfg.get_int("scenario", "site_cap", 128);
    sc.jobs = e.jobs;
    if (mode == "pooled") sc.fit_mode = ScenarioConfig::FitMode::Pooled;
    else if (mode == "per_site") sc.fit_mode = ScenarioConfig::FitMode::PerSite;
    else throw ConfigError("scenario.fit_mode must be 'pooled' or 'per_site'");

    const std::vector<ScenarioRow> rows = run_scenario(sc);
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
  }

  write_text_file(out_path(e, "scenario_results.csv"),
                  provenance_header(e.hash, e.seed, "scenario") +
                      scenario_table_csv(all_rows, e.full_precision ? 17 : 6));

  std::ostringstream plot;
  plot << provenance_header(e.hash, e.seed, "scenario");
  plot << "scenario,delta,mspe\n";
  for (const ScenarioRow& r : all_rows)
    plot << r.name << ',' << fmt(r.delta, e) << ',' << fmt(r.mspe_mean, e) << "\n";
  write_text_file(out_path(e, "scenario_plot.csv"), plot.str());

  std::cout << "scenario: " << all_rows.size() << " result rows -> " << e.out_dir
            << "\n";
  return 0;
}

int cmd_fit(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const MaternParams matern = matern_from(e.cfg);
  const SamplingDesign design = design_from(
      e.cfg, e.cfg.get_double("design", "lambda", 4.0),
      e.cfg.get_double("design", "eta", 0.16));
  const Eigen::Index n = e.cfg.get_int("design", "replicates", 20);
  const double delta = e.cfg.get_double("fit", "delta", 0.6);

  const SiteSet sites = build_sites(design);
  const std::string site_spec = e.cfg.get_string("fit", "site", "center");
  const Eigen::Index site =
      site_spec == "center" ? interior_target_sites(sites, delta, 1).front()
                            : static_cast<Eigen::Index>(std::stol(site_spec));

  const SimulatedDataset data =
      simulate_dataset(sites, matern, n, derive_seed(e.seed, "fit-data", 0));
  SplitSpec split = split_from(e.cfg);
  split.seed = derive_seed(e.seed, "fit-split", 0);
  const LocalDataset local = assemble_local(data, sites, site, delta, split);
  const FitResult fit = fit_local(local, train_from(e.cfg), derive_seed(e.seed, "fit", 0));

  std::ostringstream params;
  params << provenance_header(e.hash, e.seed, "fit");
  save_params(fit.params, params);
  write_text_file(out_path(e, "fit_params.csv"), params.str());

  std::ostringstream curve;
  curve << provenance_header(e.hash, e.seed, "fit");
  curve << "epoch,train_loss,val_loss\n";
  for (std::size_t ep = 0; ep < fit.curve.size(); ++ep)
    curve << ep << ',' << fmt(fit.curve[ep].first, e) << ','
          << fmt(fit.curve[ep].second, e) << "\n";
  write_text_file(out_path(e, "fit_curve.csv"), curve.str());

  std::cout << "fit: site=" << site << " delta=" << fmt(delta, e)
            << " q=" << local.q() << " mspe=" << fmt(fit.mspe, e) << "\n";
  return 0;
}

namespace {

// Shared driver for the ci and kl commands: pooled rung fits per design point.
struct RungFits {
  SiteSet sites;
  SimulatedDataset data;
  Eigen::Index target;
  std::vector<PooledFit> fits;  // one per delta
};

RungFits fit_rungs(const Effective& e, const DesignPoint& dp,
                   const std::vector<double>& deltas, std::uint64_t seed) {
  RungFits r;
  SamplingDesign design = design_from(e.cfg, dp.lambda, dp.eta);
  r.sites = build_sites(design);
  r.target = interior_target_sites(r.sites, deltas.back(), 1).front();
  r.data = simulate_dataset(r.sites, matern_from(e.cfg), dp.n,
                            derive_seed(seed, "inference-data", 0));
  PooledFitSpec spec{train_from(e.cfg), split_from(e.cfg),
                     e.cfg.get_int("scenario", "site_cap", 128)};
  for (std::size_t j = 0; j < deltas.size(); ++j)
    r.fits.push_back(fit_pooled(r.data, r.sites, deltas[j], {r.target}, spec,
                                derive_seed(seed, "rung", j)));
  return r;
}

}  // namespace

int cmd_ci(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const std::vector<DesignPoint> ladder = ladder_from(e.cfg);
  const std::vector<double> deltas =
      e.cfg.get_double_list("design", "deltas", {0.3, 0.6, 0.8});
  SubsampleLadder sub{deltas};
  const double alpha = e.cfg.get_double("ci", "alpha", 0.05);
  const std::vector<std::uint64_t> seeds = seeds_from(e, "ci", "ci-seed");

  for (const DesignPoint& dp : ladder) {
    sub.validate(dp.eta);
    std::ostringstream os;
    os << provenance_header(e.hash, e.seed, "ci");
    os << "site,alpha,B,mean,lambda,lower,upper\n";
    for (std::uint64_t s : seeds) {
      const RungFits r = fit_rungs(e, dp, deltas, s);
      const Eigen::Index t_ref = r.fits.front().split.test.front();
      const double y_ref = r.data.response.values(t_ref, r.target);
      const CIResult ci = subsample_ci(
          r.target, sub,
          [&](double, std::size_t j) {
            return predict_pooled(r.fits[j], r.data, r.sites, r.target, t_ref);
          },
          y_ref, alpha);
      os << ci.site << ',' << fmt(ci.alpha, e) << ',' << sub.rungs() << ','
         << fmt(ci.mean, e) << ',' << fmt(ci.lambda_spread, e) << ','
         << fmt(ci.lower, e) << ',' << fmt(ci.upper, e) << "\n";
    }
    write_text_file(out_path(e, "ci_n" + std::to_string(dp.n) + ".csv"), os.str());
  }
  std::cout << "ci: " << ladder.size() << " design points -> " << e.out_dir << "\n";
  return 0;
}

int cmd_kl(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const std::vector<DesignPoint> ladder = ladder_from(e.cfg);
  const std::vector<double> deltas =
      e.cfg.get_double_list("design", "deltas", {0.3, 0.6, 0.8});
  const int bins = static_cast<int>(e.cfg.get_int("kl", "bins", 0));
  const double eps = e.cfg.get_double("kl", "epsilon", 1e-6);
  const std::vector<std::uint64_t> seeds = seeds_from(e, "kl", "kl-seed");

  for (const DesignPoint& dp : ladder) {
    std::ostringstream os;
    os << provenance_header(e.hash, e.seed, "kl");
    os << "site,delta,kl,bins,epsilon,seed\n";
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const RungFits r = fit_rungs(e, dp, deltas, seeds[si]);
      const auto series = kl_ladder(
          deltas,
          [&](double delta) {
            const std::size_t j = static_cast<std::size_t>(
                std::find(deltas.begin(), deltas.end(), delta) - deltas.begin());
            std::vector<double> observed, predicted;
            for (Eigen::Index t = 0; t < dp.n; ++t) {
              observed.push_back(r.data.response.values(t, r.target));
              predicted.push_back(
                  predict_pooled(r.fits[j], r.data, r.sites, r.target, t));
            }
            return std::make_pair(observed, predicted);
          },
          bins, eps);
      for (const auto& [delta, kl] : series) {
        const int used_bins =
            bins > 0 ? bins
                     : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dp.n))));
        os << r.target << ',' << fmt(delta, e) << ',' << fmt(kl, e) << ','
           << used_bins << ',' << fmt(eps, e) << ',' << si << "\n";
      }
    }
    write_text_file(out_path(e, "kl_n" + std::to_string(dp.n) + ".csv"), os.str());
  }
  std::cout << "kl: " << ladder.size() << " design points -> " << e.out_dir << "\n";
  return 0;
}

namespace {

GridSchema schema_from(const RunConfig& cfg) {
  GridSchema s;
  s.lon = cfg.get_string("ingest", "lon", "lon");
  s.lat = cfg.get_string("ingest", "lat", "lat");
  s.time = cfg.get_string("ingest", "time", "time");
  s.response = cfg.get_string("ingest", "response", "response");
  s.covariates = cfg.get_string_list("ingest", "covariates", {});
  return s;
}

}  // namespace

int cmd_ingest(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const std::string path = e.cfg.get_string("ingest", "path", "");
  if (path.empty()) throw ConfigError("ingest.path is required");
  const GridSchema schema = schema_from(e.cfg);
  const IngestedGrid grid = ingest_grid(path, schema);

  write_text_file(out_path(e, "grid_sites.csv"),
                  provenance_header(e.hash, e.seed, "ingest") + sites_to_csv(grid.sites));

  std::ostringstream os;
  os << provenance_header(e.hash, e.seed, "ingest");
  os << "replicate,site_index,variable,value\n";
  const auto emit = [&](const Eigen::MatrixXd& vals, const std::string& name) {
    for (Eigen::Index t = 0; t < vals.rows(); ++t)
      for (Eigen::Index i = 0; i < vals.cols(); ++i)
        os << t << ',' << i << ',' << name << ',' << fmt(vals(t, i), e) << "\n";
  };
  emit(grid.response, "response");
  for (std::size_t k = 0; k < grid.covariates.size(); ++k)
    emit(grid.covariates[k], schema.covariates[k]);
  write_text_file(out_path(e, "grid_fields.csv"), os.str());

  std::cout << "ingest: " << grid.sites.count() << " pixels, eta=" << grid.eta
            << ", " << grid.times.size() << " time steps -> " << e.out_dir << "\n";
  return 0;
}

int cmd_fit_real(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  const std::vector<std::string> grids = e.cfg.get_string_list("fit_real", "grids", {});
  if (grids.empty()) throw ConfigError("fit_real.grids is required");
  const std::vector<double> deltas =
      e.cfg.get_double_list("fit_real", "deltas",
                            e.cfg.get_double_list("design", "deltas", {0.3, 0.6, 0.8}));
  const GridSchema schema = schema_from(e.cfg);
  const TrainConfig train = train_from(e.cfg);

  std::ostringstream os;
  os << provenance_header(e.hash, e.seed, "fit-real");
  os << "eta,delta,rmse\n";
  for (const std::string& path : grids) {
    const IngestedGrid grid = ingest_grid(path, schema);

    std::vector<Eigen::Index> targets;
    for (const std::string& spec :
         e.cfg.get_string_list("fit_real", "targets", {})) {
      double lon, lat;
      if (std::sscanf(spec.c_str(), "%lf:%lf", &lon, &lat) != 2)
        throw ConfigError("fit_real.targets entry '" + spec +
                          "' is not of the form lon:lat");
      targets.push_back(grid.nearest_site(lon, lat));
    }
    if (targets.empty())
      targets.push_back(grid.nearest_site(
          grid.sites.sites.col(0).mean(), grid.sites.sites.col(1).mean()));

    for (double delta : deltas) {
      double sum_sq = 0.0;
      int count = 0;
      for (Eigen::Index target : targets) {
        // bounded-domain guard: the input dimension must stay well below the
        // pixel count
        SplitSpec split = split_from(e.cfg);
        split.seed = derive_seed(e.seed, "fit-real-split", 0);
        const LocalDataset local =
            assemble_local(grid.response, grid.covariates, grid.sites, target,
                           delta, split);
        if (local.q() >= grid.sites.count())
          throw GuardError("grid fit guard: q = " + std::to_string(local.q()) +
                           " >= pixel count " + std::to_string(grid.sites.count()));
        const FitResult fit = fit_local(
            local, train,
            derive_seed(e.seed, "fit-real", static_cast<std::uint64_t>(target)));
        sum_sq += fit.mspe;
        ++count;
      }
      os << fmt(grid.eta, e) << ',' << fmt(delta, e) << ','
         << fmt(std::sqrt(sum_sq / count), e) << "\n";
    }
  }
  write_text_file(out_path(e, "fit_real_rmse.csv"), os.str());
  std::cout << "fit-real: " << grids.size() << " grids -> " << e.out_dir << "\n";
  return 0;
}

int cmd_dump_effective_config(const RunConfig& user, const GlobalOptions& opt) {
  const Effective e = resolve(user, opt);
  std::cout << e.cfg.dump();
  return 0;
}

}  // namespace latticenn
