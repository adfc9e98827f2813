#include "logpoly/random_specs.hpp"

#include <cmath>
#include <numbers>

namespace logpoly {

double RandomSpecs::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int RandomSpecs::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex RandomSpecs::complex_unit() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

AnalyticSeries RandomSpecs::analytic(int degree, int cap, double decay) {
  std::vector<Complex> c;
  double scale = 1.0;
  for (int n = 0; n <= degree; ++n, scale *= decay) c.push_back(complex_unit() * scale);
  return AnalyticSeries(std::move(c), cap);
}

HarmonicLogMap RandomSpecs::harmonic(int degree, int cap, double decay) {
  AnalyticSeries a = analytic(degree, cap, decay);
  AnalyticSeries b = analytic(degree, cap, decay);
  return HarmonicLogMap(std::move(a), std::move(b));
}

PolyharmonicSpec RandomSpecs::polyharmonic(int p, int degree, int cap) {
  std::vector<HarmonicLogMap> parts;
  for (int k = 0; k < p; ++k) parts.push_back(harmonic(degree, cap));
  return PolyharmonicSpec(std::move(parts));
}

BiSeries RandomSpecs::gaussian_integer_series(int max_degree, int cap, int bound) {
  const std::size_t w = static_cast<std::size_t>(cap + 1);
  std::vector<Complex> grid(w * w);
  for (int m = 0; m <= max_degree; ++m) {
    for (int n = 0; n <= max_degree; ++n) {
      const double re = uniform_int(-bound, bound);
      const double im = uniform_int(-bound, bound);
      grid[static_cast<std::size_t>(m) * w + static_cast<std::size_t>(n)] = {re, im};
    }
  }
  return BiSeries(cap, std::move(grid));
}

Complex RandomSpecs::dyadic() {
  const double re = uniform_int(-8, 8) / 8.0;
  const double im = uniform_int(-8, 8) / 8.0;
  return {re, im};
}

std::vector<Complex> RandomSpecs::lambdas(int p) {
  std::vector<Complex> out;
  for (int k = 0; k < p; ++k) out.push_back(complex_unit());
  if (std::abs(out.back()) < 0.1) out.back() += 0.5;
  return out;
}

std::vector<Complex> RandomSpecs::nonnegative_lambdas(int p) {
  std::vector<Complex> out;
  for (int k = 0; k < p; ++k) out.emplace_back(uniform(0.0, 1.0), 0.0);
  out.front() += 0.1;
  return out;
}

LPHGSpec RandomSpecs::lphg(int p, int degree, int cap, bool with_f_h) {
  AnalyticSeries log_f = with_f_h ? analytic(degree, cap) : AnalyticSeries(cap);
  AnalyticSeries log_h = with_f_h ? analytic(degree, cap) : AnalyticSeries(cap);
  HarmonicLogMap log_G = harmonic(degree, cap);
  return LPHGSpec(std::move(log_f), std::move(log_h), std::move(log_G), lambdas(p));
}

ComplexPoint RandomSpecs::point(double r_lo, double r_hi) {
  const double r = uniform(r_lo, r_hi);
  const double t = uniform(0.0, 2.0 * std::numbers::pi);
  return ComplexPoint::from_polar(r, t);
}

}  // namespace logpoly
