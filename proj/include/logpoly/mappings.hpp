#ifndef LOGPOLY_MAPPINGS_HPP
#define LOGPOLY_MAPPINGS_HPP

// Log-polyharmonic mappings of the unit disk.
//
// Nonvanishing factors are never stored directly: f, h and G are carried by
// their logarithms, so F = f(z) h(zbar) prod_k G^{lambda_k |z|^{2(k-1)}} is
// known exactly through
//
//   log F = log f(z) + (log h)(zbar) + sum_k lambda_k |z|^{2(k-1)} log G,
//
// and F itself is only ever materialised as exp(log F).

#include <optional>
#include <string>
#include <vector>

#include "logpoly/scan_grid.hpp"
#include "logpoly/wirtinger.hpp"

namespace logpoly {

/// Harmonic function a(z) + conj(b(z)).
class HarmonicLogMap {
 public:
  explicit HarmonicLogMap(int degree_cap = kDefaultDegreeCap);
  HarmonicLogMap(AnalyticSeries a, AnalyticSeries b);

  const AnalyticSeries& a() const { return a_; }
  const AnalyticSeries& b() const { return b_; }
  int degree_cap() const { return a_.degree_cap(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  BiSeries embed() const;
  Complex eval(const ComplexPoint& z) const;
  /// u_z = a'(z).
  Complex d_z(const ComplexPoint& z) const;
  /// u_zbar = conj(b'(z)).
  Complex d_zbar(const ComplexPoint& z) const;

  friend bool operator==(const HarmonicLogMap&, const HarmonicLogMap&) = default;

 private:
  AnalyticSeries a_;
  AnalyticSeries b_;
};

/// Harmonic parts G_1..G_p of F = sum_k |z|^{2(k-1)} G_k.
class PolyharmonicSpec {
 public:
  /// PreconditionError if empty, DimensionError on mixed caps or p > N/2.
  explicit PolyharmonicSpec(std::vector<HarmonicLogMap> parts);

  const std::vector<HarmonicLogMap>& parts() const { return parts_; }
  int p() const { return static_cast<int>(parts_.size()); }
  int degree_cap() const { return parts_.front().degree_cap(); }

 private:
  std::vector<HarmonicLogMap> parts_;
};

/// Data of one member of the class L_pH(G).  log_h is stored by the
/// coefficients of its own argument and is applied to zbar unconjugated.
class LPHGSpec {
 public:
  LPHGSpec(AnalyticSeries log_f, AnalyticSeries log_h, HarmonicLogMap log_G,
           std::vector<Complex> lambdas);

  const AnalyticSeries& log_f() const { return log_f_; }
  const AnalyticSeries& log_h() const { return log_h_; }
  const HarmonicLogMap& log_G() const { return log_G_; }
  const std::vector<Complex>& lambdas() const { return lambdas_; }
  int p() const { return static_cast<int>(lambdas_.size()); }
  int degree_cap() const { return log_G_.degree_cap(); }

  /// A(z) = sum_{k>=2} lambda_k (k-1) |z|^{2(k-2)}.
  Complex weight_A(double abs_sq) const;
  /// B(z) = sum_k lambda_k |z|^{2(k-1)}.
  Complex weight_B(double abs_sq) const;

  friend bool operator==(const LPHGSpec&, const LPHGSpec&) = default;

 private:
  AnalyticSeries log_f_;
  AnalyticSeries log_h_;
  HarmonicLogMap log_G_;
  std::vector<Complex> lambdas_;
};

struct LemmaCoefficients {
  Complex A;
  Complex B;
  Complex C;
  ComplexPoint at;
};

/// sum_k |z|^{2(k-1)} G_k.  DimensionError if a term does not fit the cap.
BiSeries assemble_polyharmonic(const PolyharmonicSpec& spec);

/// The series of log F.  DimensionError if a term does not fit the cap.
BiSeries assemble_logF(const LPHGSpec& spec);

/// exp(log F(z)); never zero.  DomainError for |z| >= 1.
Complex eval_F(const LPHGSpec& spec, const ComplexPoint& z);

/// A, B and C(f,h,G;z) = (log f)'(z) conj((log G)_z) - (log h)'(zbar) conj((log G)_zbar).
LemmaCoefficients lemma_coefficients(const LPHGSpec& spec, const ComplexPoint& z);

/// |u_z|^2 - |u_zbar|^2 of an arbitrary series.
double jacobian(const BiSeries& u, const ComplexPoint& z);

/// J_{log F} from the assembled series.  DomainError at z = 0 or |z| >= 1.
double jacobian_logF_direct(const LPHGSpec& spec, const ComplexPoint& z);

/// J_{log F} from the six-term closed form in A, B, C and log G.  The nested
/// logarithm L[log(log G)] is evaluated as L[log G]/log G.
/// SingularityError when |log G(z)| <= 1e-13.
double jacobian_logF_closed(const LPHGSpec& spec, const ComplexPoint& z);

/// Closed form for F = G^{|z|^{2(p-1)}}, p >= 2:
/// |z|^{4(p-1)} J_{log G} + 2(p-1) |log G|^2 |z|^{2(2p-3)} Re(L[log G]/log G).
double jacobian_power_case(const HarmonicLogMap& log_G, int p, const ComplexPoint& z);

/// |L^n[log F]/L[log F] - L^n[log G]/L[log G]| at z, for the pure product class
/// (log f = log h = 0).  SingularityError when a denominator or B(z) is below
/// 1e-13; PreconditionError when log f or log h is nonzero; ArgumentError
/// for n < 2.
double ratio_identity_gap(const LPHGSpec& spec, int n, const ComplexPoint& z);

/// Tri-state outcome of a pointwise hypothesis evaluated over a grid.
enum class FlagState { holds, fails, degenerate, not_applicable };

std::string to_string(FlagState s);

struct HypothesisFlag {
  std::string name;
  FlagState state = FlagState::not_applicable;
  /// Worst observed value (minimum for positivity flags, maximum residual
  /// for the symmetry flag).
  double worst = 0.0;
  std::optional<ComplexPoint> witness;
};

enum class HypothesisStatus { met, met_with_degenerate, unmet };

std::string to_string(HypothesisStatus s);

/// Evaluation of the local-univalence theorem for L_pH(G) on a grid: each
/// hypothesis is reported independently, the conclusion min J_{log F} is
/// reported always but only claimed when no hypothesis fails.
struct LocalUnivalenceReport {
  HypothesisFlag lambdas_nonnegative;     ///< real, >= 0, nonzero sum
  HypothesisFlag logG_orientation;        ///< J_{log G} > 0
  HypothesisFlag logG_starlike;           ///< Re(L[log G]/log G) > 0
  HypothesisFlag f_coupling;              ///< Re(zbar (log f)'(zbar) L[log G]) > 0
  HypothesisFlag f_h_symmetry;            ///< zbar (log f)'(zbar) = z (log h)'(z)
  HypothesisStatus status = HypothesisStatus::unmet;
  double min_jacobian = 0.0;
  ComplexPoint min_jacobian_at{0.0, 0.0};
  bool conclusion_claimed = false;
  bool conclusion_positive = false;
  std::vector<ComplexPoint> skipped;

  std::vector<const HypothesisFlag*> flags() const;
};

/// PreconditionError if the grid has no radii.
LocalUnivalenceReport thm24_check(const LPHGSpec& spec, const ScanGrid& grid);

/// Threshold below which a pointwise denominator is treated as zero.
inline constexpr double kSingularTol = 1e-13;

}  // namespace logpoly

#endif  // LOGPOLY_MAPPINGS_HPP
