#ifndef LOGPOLY_GEOMETRY_HPP
#define LOGPOLY_GEOMETRY_HPP

// Starlikeness and convexity indicators on circles |z| = r, boundary curve
// sampling, curve simplicity, winding-number univalence screening,
// directional convexity and subdisk-convexity scans.
//
// With z = r e^{it} the tangential derivative is d/dt = i L, so
//   starlike:  d/dt arg u          = Re(L[u] / u)
//   convex:    d/dt arg (d/dt u)   = Re(L^2[u] / L[u])
// and L^2[u] = frakL[u] - 2|z|^2 u_{z zbar} + z^2 u_{zz} + zbar^2 u_{zbar zbar}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logpoly/mappings.hpp"
#include "logpoly/scan_grid.hpp"
#include "logpoly/wirtinger.hpp"

namespace logpoly {

/// Tolerance under which an indicator value still counts as ">= 0".
inline constexpr double kIndicatorTol = 1e-9;
/// sqrt(2) - 1 to 11 decimals.
inline constexpr double kGoodmanSaffRadius = 0.41421356237;

/// Series needed by the pointwise indicators, derived once from u.
class IndicatorJet {
 public:
  explicit IndicatorJet(BiSeries u);

  const BiSeries& u() const { return u_; }

  Complex value(const ComplexPoint& z) const { return u_.eval(z); }
  Complex L(const ComplexPoint& z) const { return Lu_.eval(z); }
  Complex tangential(const ComplexPoint& z) const;
  Complex tangential_second(const ComplexPoint& z) const;
  double jacobian(const ComplexPoint& z) const;

  /// nullopt at a singular point (|u| or |L u| <= 1e-13).
  std::optional<double> starlike(const ComplexPoint& z) const;
  std::optional<double> convex(const ComplexPoint& z) const;

 private:
  BiSeries u_;
  BiSeries Lu_;
  BiSeries frakLu_;
  BiSeries u_z_;
  BiSeries u_zbar_;
  BiSeries u_zzbar_;
  BiSeries u_zz_;
  BiSeries u_zbarzbar_;
};

/// Re(L[u](z) / u(z)).  SingularityError when u vanishes at z, DomainError
/// at z = 0.
double starlike_indicator(const BiSeries& u, const ComplexPoint& z);

/// d/dt u(r e^{it}) = i L[u](z).
Complex tangential_derivative(const BiSeries& u, const ComplexPoint& z);

/// -d^2/dt^2 u(r e^{it}) = frakL[u] - 2|z|^2 u_{z zbar} + z^2 u_{zz} + zbar^2 u_{zbar zbar}.
Complex tangential_second_derivative(const BiSeries& u, const ComplexPoint& z);

/// Re(tangential_second_derivative / L[u]) = d/dt arg d/dt u(r e^{it}).
/// SingularityError when L[u] vanishes at z, DomainError at z = 0.
double convex_indicator(const BiSeries& u, const ComplexPoint& z);

enum class IndicatorKind { starlike, convex };

/// |indicator(log F) - indicator(log G)| at z.  Starlike needs log f = log h = 0;
/// convex needs constant log f and log h (PreconditionError otherwise).
/// SingularityError when B(z), log G(z) or L[log G](z) is below 1e-13.
double indicator_equality_gap(const LPHGSpec& spec, IndicatorKind kind, const ComplexPoint& z);

struct BoundaryCurve {
  double r = 0.0;
  std::vector<Complex> points;
  bool closed = true;

  double diameter() const;
  bool degenerate() const { return diameter() <= 1e-12; }
};

/// Samples u(r e^{2 pi i j / M}), j = 0..M-1.  PreconditionError unless
/// 0 < r < 1 and M >= 64.
BoundaryCurve boundary_curve(const BiSeries& u, double r, int M);

struct SimplicityResult {
  bool simple = true;
  /// Indices of the first pair of crossing segments (segment j joins point j
  /// to point j+1 mod M).
  std::optional<std::pair<int, int>> crossing;
};

/// Pairwise segment intersection over the closed polyline, adjacent segments
/// excluded.  Touching and collinear overlap count as crossings.
/// DegeneracyError for a curve of diameter <= 1e-12.
SimplicityResult is_simple(const BoundaryCurve& curve);

/// Winding number of the closed polyline about w.
int winding_number(const BoundaryCurve& curve, Complex w);

inline constexpr int kUnivalenceProbes = 16;

/// The interior probe points used on the circle of radius r.
std::vector<ComplexPoint> univalence_probes(double r);

struct UnivalenceRadius {
  double r = 0.0;
  bool simple = true;
  std::optional<std::pair<int, int>> crossing;
  bool degenerate = false;
  int max_winding = 0;
  int min_winding = 0;
  std::optional<ComplexPoint> witness_probe;
  bool falsified = false;
};

struct UnivalenceReport {
  std::vector<UnivalenceRadius> radii;
  bool not_falsified = true;
  std::optional<double> first_failure_r;

  std::string verdict() const;
};

/// For every grid radius: curve simplicity plus the winding number of the
/// boundary curve about the images of 16 interior probes, which must lie in
/// {0, 1}.
UnivalenceReport univalence_scan(const BiSeries& u, const ScanGrid& grid, unsigned threads = 1);

struct DirectionalConvexityResult {
  bool convex = true;
  std::optional<double> witness_level;
  int witness_crossings = 0;
};

/// Convexity in the direction e^{i phi}: after rotating by e^{-i phi}, every
/// tested horizontal level must be crossed 0 or 2 times.  PreconditionError
/// for a non-simple curve.
DirectionalConvexityResult directional_convexity(const BoundaryCurve& curve, double phi,
                                                 int levels = 512);

struct SkippedPoint {
  double r = 0.0;
  double t = 0.0;
};

enum class Quantity { starlike, convex, jacobian };

std::string to_string(Quantity q);

enum class Verdict { positive, nonpositive };

/// Indicator values over a grid.  values[i*M + j] belongs to radius i and
/// angle j; skipped points hold NaN and are listed in `skipped`.
struct ScanReport {
  ScanReport(std::string quantity_name, ScanGrid scan_grid)
      : quantity(std::move(quantity_name)), grid(std::move(scan_grid)) {}

  std::string quantity;
  ScanGrid grid;
  double tol = kIndicatorTol;
  std::vector<double> values;
  double min_value = 0.0;
  double argmin_r = 0.0;
  double argmin_t = 0.0;
  Verdict verdict = Verdict::positive;
  std::vector<SkippedPoint> nonpositive_at;
  std::vector<SkippedPoint> skipped;

  bool skipped_at(std::size_t ri, int j) const;
  std::string verdict_string() const;
};

/// Evaluates `q` for u at every grid point.  Verdict "positive" iff the
/// minimum over non-skipped points is >= -tol.  DegeneracyError when every
/// point is singular.
ScanReport scan_indicator(const BiSeries& u, Quantity q, const ScanGrid& grid,
                          double tol = kIndicatorTol, unsigned threads = 1);

/// Largest grid radius r* such that every circle rho <= r* has
/// min_t convex_indicator >= -1e-9 (0 if the first circle fails).  Fully
/// singular circles are skipped; DegeneracyError if all are.
double convexity_radius(const BiSeries& u, const ScanGrid& grid, unsigned threads = 1);

struct RadiusMinimum {
  double r = 0.0;
  double min_value = 0.0;
  double argmin_t = 0.0;
  int skipped = 0;
};

enum class GoodmanSaffVerdict { pass, fail, hypotheses_unmet };

std::string to_string(GoodmanSaffVerdict v);

struct GoodmanSaffReport {
  bool f_h_constant = false;
  bool logG_convex_on_grid = false;
  double logG_convex_min = 0.0;
  bool logG_univalence_not_falsified = false;
  bool nonvanishing = false;  ///< L[log G] and B(z) nonzero on the scanned circles
  bool hypotheses_met = false;
  bool logF_univalence_not_falsified = false;  ///< informational
  std::vector<RadiusMinimum> per_radius;       ///< log F, radii <= sqrt(2)-1
  bool convex_up_to_cap = false;
  GoodmanSaffVerdict verdict = GoodmanSaffVerdict::hypotheses_unmet;
  std::vector<SkippedPoint> skipped;
};

/// Checks the subdisk-convexity statement for L_pH(G): the hypotheses on the
/// full grid, then the convex indicator of log F on every grid radius up to
/// sqrt(2) - 1.  The scan always runs; unmet hypotheses only change the
/// verdict.
GoodmanSaffReport goodman_saff_scan(const LPHGSpec& spec, const ScanGrid& grid,
                                    unsigned threads = 1);

}  // namespace logpoly

#endif  // LOGPOLY_GEOMETRY_HPP
