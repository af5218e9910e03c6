#include "latticenn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace latticenn {

namespace {
constexpr double kBoundaryTol = 1e-9;
}

PrototypeRegion PrototypeRegion::unit_box(int d) {
  PrototypeRegion box;
  box.dimension = d;
  box.lower.assign(static_cast<std::size_t>(d), -0.5);
  box.upper.assign(static_cast<std::size_t>(d), 0.5);
  return box;
}

double PrototypeRegion::volume() const {
  double v = 1.0;
  for (int k = 0; k < dimension; ++k)
    v *= upper[static_cast<std::size_t>(k)] - lower[static_cast<std::size_t>(k)];
  return v;
}

void PrototypeRegion::validate() const {
  if (dimension < 1) throw GeometryError("prototype dimension must be >= 1");
  if (lower.size() != static_cast<std::size_t>(dimension) ||
      upper.size() != static_cast<std::size_t>(dimension))
    throw GeometryError("prototype bounds do not match dimension");
  for (int k = 0; k < dimension; ++k)
    if (!(lower[static_cast<std::size_t>(k)] < upper[static_cast<std::size_t>(k)]))
      throw GeometryError("prototype bounds must satisfy lower < upper");
}

void SamplingDesign::validate() const {
  prototype.validate();
  if (!(lambda > 0.0)) throw GeometryError("lambda must be positive");
  if (!(eta > 0.0)) throw GeometryError("eta must be positive");
  if (!(eta < lambda)) throw GeometryError("eta must be smaller than lambda");
  if (increments.size() != static_cast<std::size_t>(prototype.dimension))
    throw GeometryError("increments must have one entry per axis");
  for (double e : increments)
    if (!(e > 0.0)) throw GeometryError("increments must be positive");
}

SiteSet build_sites(const SamplingDesign& design) {
  design.validate();
  const int d = design.prototype.dimension;

  // Integer multiple ranges per axis; coordinates are reconstructed from the
  // integer index so lattice membership is exact up to one rounding.
  std::vector<double> step(static_cast<std::size_t>(d));
  std::vector<long> kmin(static_cast<std::size_t>(d)), kmax(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    step[ai] = design.eta * design.increments[ai];
    const double lo = design.lambda * design.prototype.lower[ai];
    const double hi = design.lambda * design.prototype.upper[ai];
    // lower-open, upper-closed: lo < k*step <= hi, with 1e-9 tolerance
    kmin[ai] = static_cast<long>(std::floor((lo + kBoundaryTol) / step[ai])) + 1;
    while (static_cast<double>(kmin[ai] - 1) * step[ai] > lo + kBoundaryTol) --kmin[ai];
    while (static_cast<double>(kmin[ai]) * step[ai] <= lo + kBoundaryTol) ++kmin[ai];
    kmax[ai] = static_cast<long>(std::floor((hi + kBoundaryTol) / step[ai]));
    while (static_cast<double>(kmax[ai] + 1) * step[ai] <= hi + kBoundaryTol) ++kmax[ai];
    while (static_cast<double>(kmax[ai]) * step[ai] > hi + kBoundaryTol) --kmax[ai];
    if (kmax[ai] < kmin[ai])
      throw GeometryError("empty site set: no lattice point falls inside the region");
  }

  Eigen::Index total = 1;
  for (int a = 0; a < d; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    total *= static_cast<Eigen::Index>(kmax[ai] - kmin[ai] + 1);
  }

  Eigen::MatrixXd pts(total, d);
  std::vector<long> idx(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) idx[static_cast<std::size_t>(a)] = kmin[static_cast<std::size_t>(a)];
  for (Eigen::Index row = 0; row < total; ++row) {
    for (int a = 0; a < d; ++a) {
      const auto ai = static_cast<std::size_t>(a);
      pts(row, a) = static_cast<double>(idx[ai]) * step[ai];
    }
    // odometer increment over the last axis fastest -> rows come out in
    // lexicographic order already
    for (int a = d - 1; a >= 0; --a) {
      const auto ai = static_cast<std::size_t>(a);
      if (++idx[ai] <= kmax[ai]) break;
      idx[ai] = kmin[ai];
    }
  }

  SiteSet out;
  out.design = design;
  out.sites = std::move(pts);
  return out;
}

Neighborhood neighborhood(const SiteSet& sites, Eigen::Index center,
                          double delta, bool include_center) {
  if (center < 0 || center >= sites.count())
    throw GeometryError("neighborhood center index out of range");
  if (!(delta > 0.0)) throw GeometryError("neighborhood radius must be positive");

  Neighborhood nb;
  nb.center_index = center;
  nb.delta = delta;
  nb.include_center = include_center;
  const Eigen::RowVectorXd c = sites.sites.row(center);
  for (Eigen::Index i = 0; i < sites.count(); ++i) {
    if (!include_center && i == center) continue;
    const double dist = (sites.sites.row(i) - c).norm();
    if (dist <= delta + kBoundaryTol) nb.member_indices.push_back(i);
  }
  return nb;
}

SamplingDesign refine(const SamplingDesign& design, int level) {
  if (level < 0) throw GeometryError("refinement level must be >= 0");
  SamplingDesign out = design;
  out.eta = design.eta / std::pow(2.0, level);
  return out;
}

double growth_ratio(const SamplingDesign& design, Eigen::Index site_count) {
  if (site_count < 1) throw GeometryError("site count must be >= 1");
  double inc_vol = 1.0;
  for (double e : design.increments) inc_vol *= e;
  const double scaled_vol = design.prototype.volume() / inc_vol;
  const double d = static_cast<double>(design.prototype.dimension);
  return scaled_vol * std::pow(design.lambda / design.eta, d) /
         static_cast<double>(site_count);
}

std::vector<std::string> validate_regime(const RegimeParams& p) {
  std::vector<std::string> violations;
  const double n = static_cast<double>(p.n);
  if (!(p.psi + p.beta < 1.0)) violations.push_back("psi+beta<1");
  if (!(p.gamma_n <= std::pow(n, p.psi))) violations.push_back("gamma_n<=n^psi");
  if (!(p.r <= std::pow(n, p.beta))) violations.push_back("r<=n^beta");
  if (!(p.v1 * p.v2 <= std::sqrt(std::log(n)))) violations.push_back("v1*v2<=sqrt(log n)");
  if (!(std::min(p.v1, p.v2) > 1.0)) violations.push_back("min{v1,v2}>1");
  return violations;
}

std::string sites_to_csv(const SiteSet& sites) {
  std::ostringstream os;
  os << "site_index";
  for (int a = 0; a < sites.design.prototype.dimension; ++a) os << ",x" << (a + 1);
  os << "\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < sites.count(); ++i) {
    os << i;
    for (int a = 0; a < sites.design.prototype.dimension; ++a)
      os << "," << sites.sites(i, a);
    os << "\n";
  }
  return os.str();
}

std::string neighborhood_to_csv(const Neighborhood& nb) {
  std::ostringstream os;
  os << "center,member\n";
  for (Eigen::Index m : nb.member_indices)
    os << nb.center_index << "," << m << "\n";
  return os.str();
}

}  // namespace latticenn
