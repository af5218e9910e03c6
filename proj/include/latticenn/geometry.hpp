#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latticenn {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Axis-aligned box with lower-open / upper-closed bounds per axis.
// The default prototype is the unit box (-1/2, 1/2]^d.
struct PrototypeRegion {
  int dimension = 2;
  std::vector<double> lower;  // open bounds
  std::vector<double> upper;  // closed bounds

  static PrototypeRegion unit_box(int d);

  double volume() const;
  void validate() const;
};

// Lattice sampling design: the prototype inflated by `lambda`, intersected
// with the scaled lattice eta * diag(increments) * Z^d.
struct SamplingDesign {
  PrototypeRegion prototype;
  double lambda = 1.0;      // region inflation factor
  double eta = 1.0;         // grid spacing
  std::vector<double> increments;  // per-axis increments e_1..e_d

  void validate() const;
};

struct SiteSet {
  SamplingDesign design;
  Eigen::MatrixXd sites;  // N x d, lexicographically sorted rows

  Eigen::Index count() const { return sites.rows(); }
};

struct Neighborhood {
  Eigen::Index center_index = 0;
  double delta = 0.0;
  bool include_center = true;
  std::vector<Eigen::Index> member_indices;  // ascending

  Eigen::Index cardinality() const {
    return static_cast<Eigen::Index>(member_indices.size());
  }
};

// Finite-sample surrogate of the asymptotic regime conditions: the o(.)
// statements are checked as inequalities at the given n.
struct RegimeParams {
  std::size_t n = 0;       // replicate count
  double psi = 0.5;
  double beta = 0.3;
  double gamma_n = 0.0;    // neighborhood cardinality
  double r = 0.0;          // hidden width
  double v1 = 0.0;
  double v2 = 0.0;
};

// All lattice points of the design inside the inflated region, sorted
// lexicographically. Throws GeometryError when no lattice point falls inside.
SiteSet build_sites(const SamplingDesign& design);

// Sites within Euclidean distance `delta` (inclusive) of the center site.
Neighborhood neighborhood(const SiteSet& sites, Eigen::Index center,
                          double delta, bool include_center);

// Same design with eta halved `level` times.
SamplingDesign refine(const SamplingDesign& design, int level);

// |Delta^-1 R0| (lambda/eta)^d / N_n; ~1 for box prototypes.
double growth_ratio(const SamplingDesign& design, Eigen::Index site_count);

// Names of the violated regime conditions (empty when all hold).
std::vector<std::string> validate_regime(const RegimeParams& params);

// CSV serialization consumed by the command-line front end.
std::string sites_to_csv(const SiteSet& sites);
std::string neighborhood_to_csv(const Neighborhood& nb);

}  // namespace latticenn
