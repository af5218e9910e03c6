#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latticenn/geometry.hpp"
#include "latticenn/grf.hpp"
#include "latticenn/inference.hpp"
#include "latticenn/matern.hpp"
#include "latticenn/net.hpp"
#include "latticenn/regress.hpp"

namespace py = pybind11;
using namespace latticenn;

namespace {

SamplingDesign make_design(int dimension, double lambda, double eta) {
  SamplingDesign d;
  d.prototype = PrototypeRegion::unit_box(dimension);
  d.lambda = lambda;
  d.eta = eta;
  d.increments.assign(static_cast<std::size_t>(dimension), 1.0);
  return d;
}

SiteSet sites_from_matrix(const Eigen::MatrixXd& coords) {
  SiteSet s;
  s.design.prototype = PrototypeRegion::unit_box(static_cast<int>(coords.cols()));
  s.design.lambda = 1.0;
  s.design.eta = 1.0;
  s.design.increments.assign(static_cast<std::size_t>(coords.cols()), 1.0);
  s.sites = coords;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Localized two-hidden-layer network regression for lattice data";

  m.def(
      "build_sites",
      [](double lambda, double eta, int dimension) {
        return build_sites(make_design(dimension, lambda, eta)).sites;
      },
      py::arg("lambda_n"), py::arg("eta_n"), py::arg("dimension") = 2,
      "Lattice sites of the inflated unit box, lexicographically sorted");

  m.def(
      "neighborhood",
      [](const Eigen::MatrixXd& sites, std::int64_t center, double delta,
         bool include_center) {
        const Neighborhood nb =
            neighborhood(sites_from_matrix(sites), center, delta, include_center);
        return nb.member_indices;
      },
      py::arg("sites"), py::arg("center"), py::arg("delta"),
      py::arg("include_center") = true);

  m.def(
      "bessel_k", [](double nu, double x) { return bessel_k(nu, x); },
      py::arg("nu"), py::arg("x"));

  m.def(
      "matern_cov",
      [](double h, double sigma2, double phi, double nu) {
        return matern_cov(h, MaternParams{sigma2, phi, nu});
      },
      py::arg("h"), py::arg("sigma2") = 1.0, py::arg("phi") = 0.1,
      py::arg("nu") = 0.5);

  m.def(
      "sample_grf",
      [](const Eigen::MatrixXd& sites, double sigma2, double phi, double nu,
         std::int64_t n, std::uint64_t seed) {
        return sample_grf(sites_from_matrix(sites), MaternParams{sigma2, phi, nu},
                          n, seed)
            .values;
      },
      py::arg("sites"), py::arg("sigma2"), py::arg("phi"), py::arg("nu"),
      py::arg("n"), py::arg("seed"));

  m.def(
      "simulate_dataset",
      [](double lambda, double eta, int dimension, double sigma2, double phi,
         double nu, std::int64_t n, std::uint64_t seed) {
        const SiteSet sites = build_sites(make_design(dimension, lambda, eta));
        const SimulatedDataset data =
            simulate_dataset(sites, MaternParams{sigma2, phi, nu}, n, seed);
        py::dict out;
        out["sites"] = sites.sites;
        py::list xs;
        for (const FieldRealization& x : data.covariates) xs.append(x.values);
        out["covariates"] = xs;
        out["response"] = data.response.values;
        return out;
      },
      py::arg("lambda_n"), py::arg("eta_n"), py::arg("dimension"),
      py::arg("sigma2"), py::arg("phi"), py::arg("nu"), py::arg("n"),
      py::arg("seed"));

  m.def(
      "fit_site",
      [](double lambda, double eta, int dimension, double sigma2, double phi,
         double nu, std::int64_t n, double delta, std::int64_t hidden,
         double v1, double v2, int epochs, std::int64_t batch, double lr,
         std::uint64_t seed) {
        const SiteSet sites = build_sites(make_design(dimension, lambda, eta));
        const SimulatedDataset data =
            simulate_dataset(sites, MaternParams{sigma2, phi, nu}, n, seed);
        const Eigen::Index target = interior_target_sites(sites, delta, 1).front();
        SplitSpec split;
        split.seed = seed;
        const LocalDataset local = assemble_local(data, sites, target, delta, split);
        TrainConfig cfg;
        cfg.hidden_width = hidden;
        cfg.v1 = v1;
        cfg.v2 = v2;
        cfg.epochs = epochs;
        cfg.batch_size = batch;
        cfg.adam.alpha = lr;
        const FitResult fit = fit_local(local, cfg, seed);
        py::dict out;
        out["site"] = static_cast<std::int64_t>(target);
        out["q"] = static_cast<std::int64_t>(local.q());
        out["mspe"] = fit.mspe;
        out["epochs_run"] = fit.epochs_run;
        return out;
      },
      py::arg("lambda_n"), py::arg("eta_n"), py::arg("dimension"),
      py::arg("sigma2"), py::arg("phi"), py::arg("nu"), py::arg("n"),
      py::arg("delta"), py::arg("hidden") = 4, py::arg("v1") = 3.0,
      py::arg("v2") = 3.0, py::arg("epochs") = 200, py::arg("batch") = 16,
      py::arg("lr") = 1e-3, py::arg("seed") = 0);

  m.def(
      "subsample_ci",
      [](const std::vector<double>& estimates, double y_reference, double alpha) {
        SubsampleLadder ladder;
        for (std::size_t j = 0; j < estimates.size(); ++j)
          ladder.deltas.push_back(static_cast<double>(j + 1));
        const CIResult ci = subsample_ci(
            0, ladder, [&](double, std::size_t j) { return estimates[j]; },
            y_reference, alpha);
        py::dict out;
        out["mean"] = ci.mean;
        out["lambda"] = ci.lambda_spread;
        out["lower"] = ci.lower;
        out["upper"] = ci.upper;
        return out;
      },
      py::arg("estimates"), py::arg("y_reference"), py::arg("alpha") = 0.05,
      "Interval from precomputed ladder estimates");

  m.def(
      "kl_divergence",
      [](const std::vector<double>& observed, const std::vector<double>& predicted,
         int bins, double epsilon) {
        const KLResult r = kl_divergence(ECDF::from(observed), ECDF::from(predicted),
                                         bins, epsilon);
        py::dict out;
        out["value"] = r.value;
        out["bins"] = r.bin_count;
        out["degenerate"] = r.degenerate;
        return out;
      },
      py::arg("observed"), py::arg("predicted"), py::arg("bins") = 0,
      py::arg("epsilon") = 1e-6);

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("lipschitz_bound", &lipschitz_bound, py::arg("r"), py::arg("p"),
        py::arg("gamma"), py::arg("v1"), py::arg("v2"));

  m.def(
      "validate_regime",
      [](std::size_t n, double psi, double beta, double gamma, double r,
         double v1, double v2) {
        return validate_regime(RegimeParams{n, psi, beta, gamma, r, v1, v2});
      },
      py::arg("n"), py::arg("psi"), py::arg("beta"), py::arg("gamma"),
      py::arg("r"), py::arg("v1"), py::arg("v2"));
}
