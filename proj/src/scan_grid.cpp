#include "logpoly/scan_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace logpoly {

ScanGrid::ScanGrid(std::vector<double> r_values, int t_samples)
    : r_values_(std::move(r_values)), t_samples_(t_samples) {
  if (r_values_.empty()) throw PreconditionError("scan grid needs at least one radius");
  if (t_samples_ < kMinAngles) {
    throw PreconditionError("scan grid needs at least " + std::to_string(kMinAngles) +
                            " angles per circle");
  }
  for (std::size_t i = 0; i < r_values_.size(); ++i) {
    const double r = r_values_[i];
    if (!(r > 0.0 && r < 1.0)) throw PreconditionError("scan radius outside (0, 1)");
    if (i > 0 && !(r > r_values_[i - 1])) {
      throw PreconditionError("scan radii must be strictly increasing");
    }
  }
}

ScanGrid ScanGrid::uniform(double r_min, double r_max, double r_step, int t_samples) {
  if (!(r_step > 0.0)) throw PreconditionError("radius step must be positive");
  if (!(r_max >= r_min)) throw PreconditionError("r_max must be >= r_min");
  std::vector<double> radii;
  for (std::size_t i = 0;; ++i) {
    const double r = r_min + static_cast<double>(i) * r_step;
    if (r > r_max + 1e-12) break;
    radii.push_back(r);
  }
  return ScanGrid(std::move(radii), t_samples);
}

double ScanGrid::t(int j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(t_samples_);
}

ComplexPoint ScanGrid::point(std::size_t ri, int j) const {
  return ComplexPoint::from_polar(r_values_[ri], t(j));
}

std::vector<double> ScanGrid::radii_up_to(double r_cap) const {
  std::vector<double> out;
  for (double r : r_values_) {
    if (r <= r_cap) out.push_back(r);
  }
  return out;
}

}  // namespace logpoly
