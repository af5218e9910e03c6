#include "latticenn/gridio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace latticenn {

namespace {

constexpr double kDegreeTol = 1e-6;

// Detects the spacing of a sorted distinct coordinate list and checks every
// value sits on the implied lattice.
double detect_spacing(const std::vector<double>& coords, const std::string& axis) {
  if (coords.size() < 2)
    throw IOError("grid has fewer than two distinct " + axis + " values");
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < coords.size(); ++i)
    spacing = std::min(spacing, coords[i] - coords[i - 1]);
  if (!(spacing > kDegreeTol))
    throw IOError("degenerate " + axis + " spacing in grid");
  const double origin = coords.front();
  for (double c : coords) {
    const double k = std::round((c - origin) / spacing);
    if (std::abs(c - (origin + k * spacing)) > kDegreeTol)
      throw IOError("irregular grid: " + axis + " value " + std::to_string(c) +
                    " is off the detected " + std::to_string(spacing) + " lattice");
  }
  return spacing;
}

}  // namespace

Eigen::Index IngestedGrid::nearest_site(double lon, double lat) const {
  Eigen::Index best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sites.count(); ++i) {
    const double dx = sites.sites(i, 0) - lon;
    const double dy = sites.sites(i, 1) - lat;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

IngestedGrid ingest_grid(const std::string& path, const GridSchema& schema) {
  const CsvTable table = read_csv(path);

  const auto need = [&](const std::string& name) {
    const int c = table.column(name);
    if (c < 0) throw IOError("grid file is missing required column '" + name + "'");
    return c;
  };
  const int c_lon = need(schema.lon);
  const int c_lat = need(schema.lat);
  const int c_time = need(schema.time);
  const int c_resp = need(schema.response);
  std::vector<int> c_cov;
  for (const std::string& name : schema.covariates) c_cov.push_back(need(name));

  struct Cell {
    double response;
    std::vector<double> covariates;
  };
  std::map<std::pair<double, double>, std::map<double, Cell>> grid;
  std::set<double> lons, lats, times;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto parse = [&](int c) {
      try {
        return std::stod(row[static_cast<std::size_t>(c)]);
      } catch (const std::exception&) {
        throw IOError("non-numeric value '" + row[static_cast<std::size_t>(c)] +
                      "' in data row " + std::to_string(r + 1));
      }
    };
    const double lon = parse(c_lon), lat = parse(c_lat), time = parse(c_time);
    if (!std::isfinite(lon) || !std::isfinite(lat))
      throw IOError("non-finite coordinate in data row " + std::to_string(r + 1));
    Cell cell;
    cell.response = parse(c_resp);
    for (int c : c_cov) cell.covariates.push_back(parse(c));

    auto& site_series = grid[{lon, lat}];
    if (!site_series.emplace(time, std::move(cell)).second)
      throw IOError("duplicate (lon, lat, time) key at row " + std::to_string(r + 1));
    lons.insert(lon);
    lats.insert(lat);
    times.insert(time);
  }
  if (grid.empty()) throw IOError("grid file '" + path + "' has no data rows");

  const std::vector<double> lon_list(lons.begin(), lons.end());
  const std::vector<double> lat_list(lats.begin(), lats.end());
  const double eta_lon = detect_spacing(lon_list, "longitude");
  const double eta_lat = detect_spacing(lat_list, "latitude");
  if (std::abs(eta_lon - eta_lat) > kDegreeTol)
    throw IOError("longitude and latitude spacings differ (" +
                  std::to_string(eta_lon) + " vs " + std::to_string(eta_lat) + ")");

  IngestedGrid out;
  out.eta = eta_lon;
  out.times.assign(times.begin(), times.end());

  // Snap each observed position to the detected lattice (anchor = grid min).
  const double lon0 = lon_list.front();
  const double lat0 = lat_list.front();
  const auto n_sites = static_cast<Eigen::Index>(grid.size());
  const auto n_time = static_cast<Eigen::Index>(out.times.size());

  out.sites.sites.resize(n_sites, 2);
  out.sites.design.prototype.dimension = 2;
  out.sites.design.prototype.lower = {lon_list.front() - 0.5 * out.eta,
                                      lat_list.front() - 0.5 * out.eta};
  out.sites.design.prototype.upper = {lon_list.back() + 0.5 * out.eta,
                                      lat_list.back() + 0.5 * out.eta};
  out.sites.design.lambda = 1.0;
  out.sites.design.eta = out.eta;
  out.sites.design.increments = {1.0, 1.0};

  out.response.resize(n_time, n_sites);
  for (const std::string& name : schema.covariates) {
    (void)name;
    out.covariates.emplace_back(n_time, n_sites);
  }

  Eigen::Index site_idx = 0;
  for (const auto& [pos, series] : grid) {
    const double lon = lon0 + std::round((pos.first - lon0) / out.eta) * out.eta;
    const double lat = lat0 + std::round((pos.second - lat0) / out.eta) * out.eta;
    out.sites.sites(site_idx, 0) = lon;
    out.sites.sites(site_idx, 1) = lat;
    if (series.size() != static_cast<std::size_t>(n_time))
      throw IOError("site (" + std::to_string(pos.first) + ", " +
                    std::to_string(pos.second) + ") is missing " +
                    std::to_string(n_time - static_cast<Eigen::Index>(series.size())) +
                    " time steps");
    Eigen::Index t = 0;
    for (const auto& [time, cell] : series) {
      (void)time;
      out.response(t, site_idx) = cell.response;
      for (std::size_t k = 0; k < out.covariates.size(); ++k)
        out.covariates[k](t, site_idx) = cell.covariates[k];
      ++t;
    }
    ++site_idx;
  }
  return out;
}

}  // namespace latticenn
