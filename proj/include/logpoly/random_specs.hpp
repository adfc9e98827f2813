#ifndef LOGPOLY_RANDOM_SPECS_HPP
#define LOGPOLY_RANDOM_SPECS_HPP

#include <cstdint>
#include <random>

#include "logpoly/mappings.hpp"

namespace logpoly {

/// Seeded generator of random series, mappings and sample points.
///
/// Two coefficient families are offered.  Floating coefficients decay
/// geometrically so evaluations stay O(1) inside the disk.  Gaussian-integer
/// coefficients (and dyadic scalars) keep every ring operation exact in
/// double precision, which is what coefficient-exact identity checks need.
class RandomSpecs {
 public:
  explicit RandomSpecs(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);
  Complex complex_unit();

  /// c_n = complex_unit() * decay^n for n <= degree.
  AnalyticSeries analytic(int degree, int cap, double decay = 0.7);
  HarmonicLogMap harmonic(int degree, int cap, double decay = 0.7);
  PolyharmonicSpec polyharmonic(int p, int degree, int cap);

  /// Entries with m, n <= max_degree drawn from {-bound..bound} + i{-bound..bound}.
  BiSeries gaussian_integer_series(int max_degree, int cap, int bound = 4);
  /// (a + ib)/8 with a, b in {-8..8}.
  Complex dyadic();

  /// Random complex lambdas (length p), nonzero last entry.
  std::vector<Complex> lambdas(int p);
  /// Random real lambdas in [0, 1] with a positive sum.
  std::vector<Complex> nonnegative_lambdas(int p);

  /// Random L_pH(G) member; zero log f / log h unless requested.
  LPHGSpec lphg(int p, int degree, int cap, bool with_f_h);

  /// Uniform angle, radius uniform in [r_lo, r_hi].
  ComplexPoint point(double r_lo, double r_hi);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace logpoly

#endif  // LOGPOLY_RANDOM_SPECS_HPP
