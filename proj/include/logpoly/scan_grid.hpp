#ifndef LOGPOLY_SCAN_GRID_HPP
#define LOGPOLY_SCAN_GRID_HPP

#include <vector>

#include "logpoly/wirtinger.hpp"

namespace logpoly {

/// Polar sampling of the punctured disk: circles of radius r_values[i], each
/// carrying t_samples equally spaced angles starting at t = 0.
class ScanGrid {
 public:
  static constexpr int kMinAngles = 64;
  static constexpr int kDefaultAngles = 1024;
  static constexpr double kDefaultRMin = 1e-3;
  static constexpr double kDefaultRStep = 0.01;

  /// PreconditionError unless radii are strictly increasing inside (0,1) and
  /// t_samples >= 64.
  ScanGrid(std::vector<double> r_values, int t_samples = kDefaultAngles);

  /// r_min, r_min + step, ... up to r_max (inclusive within 1e-12).  Radii are
  /// computed as r_min + i*step, never accumulated.
  static ScanGrid uniform(double r_min, double r_max, double r_step,
                          int t_samples = kDefaultAngles);

  const std::vector<double>& r_values() const { return r_values_; }
  int t_samples() const { return t_samples_; }
  std::size_t size() const { return r_values_.size() * static_cast<std::size_t>(t_samples_); }

  double t(int j) const;
  ComplexPoint point(std::size_t ri, int j) const;

  /// Same angles, only the radii <= r_cap.  May be empty of radii.
  std::vector<double> radii_up_to(double r_cap) const;

 private:
  std::vector<double> r_values_;
  int t_samples_;
};

}  // namespace logpoly

#endif  // LOGPOLY_SCAN_GRID_HPP
