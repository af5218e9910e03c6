#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "latticenn/csvio.hpp"
#include "latticenn/geometry.hpp"

namespace latticenn {

// Column mapping for gridded CSV ingestion. Required: lon, lat, time,
// response; covariate columns optional.
struct GridSchema {
  std::string lon = "lon";
  std::string lat = "lat";
  std::string time = "time";
  std::string response = "response";
  std::vector<std::string> covariates;
};

// A regular lon/lat grid with the time index as the replicate axis.
struct IngestedGrid {
  SiteSet sites;              // lattice positions (lon, lat), sorted
  double eta = 0.0;           // detected pixel spacing, degrees
  Eigen::MatrixXd response;   // n_time x N
  std::vector<Eigen::MatrixXd> covariates;
  std::vector<double> times;  // sorted distinct time indices

  // Nearest lattice pixel to an arbitrary (lon, lat) position.
  Eigen::Index nearest_site(double lon, double lat) const;
};

IngestedGrid ingest_grid(const std::string& path, const GridSchema& schema);

}  // namespace latticenn
