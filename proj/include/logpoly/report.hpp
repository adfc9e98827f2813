#ifndef LOGPOLY_REPORT_HPP
#define LOGPOLY_REPORT_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "logpoly/geometry.hpp"

namespace logpoly {

/// Shortest round-trip decimal form ("nan" for NaN).
std::string format_double(double v);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// CSV with header `r,t,value,flag`; one row per grid point in radius-major
/// order.  Skipped points carry value "nan" and flag 1.
std::string scan_csv(const ScanReport& rep);

struct GridParams {
  double r_min = ScanGrid::kDefaultRMin;
  double r_max = 0.99;
  double r_step = ScanGrid::kDefaultRStep;
  int angles = ScanGrid::kDefaultAngles;
};

nlohmann::json grid_json(const GridParams& g, const ScanGrid& grid);

/// Summary with fields command, verdict, min, argmin_r, argmin_t, tol, grid,
/// skipped, version.
nlohmann::json scan_summary_json(const std::string& command, const ScanReport& rep,
                                 const GridParams& params, const std::string& version);

/// Closed polyline of the curve inside an axis box with a radius label.
/// Deterministic apart from the version comment line.
std::string curve_svg(const BoundaryCurve& curve, const std::string& label,
                      const std::string& version);

}  // namespace logpoly

#endif  // LOGPOLY_REPORT_HPP
