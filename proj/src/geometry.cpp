#include "logpoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace logpoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_punctured(const ComplexPoint& z) {
  if (!(z.r() < 1.0)) throw DomainError("point outside the unit disk");
  if (z.r() == 0.0) throw DomainError("indicators are defined on the punctured disk");
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

int sign_with_tol(double v, double tol) {
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

bool within_box(Complex a, Complex b, Complex p, double tol) {
  return p.real() >= std::min(a.real(), b.real()) - tol &&
         p.real() <= std::max(a.real(), b.real()) + tol &&
         p.imag() >= std::min(a.imag(), b.imag()) - tol &&
         p.imag() <= std::max(a.imag(), b.imag()) + tol;
}

// Closed-segment intersection with orientation tolerance `area_tol` and
// coordinate tolerance `len_tol`.
bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2, double area_tol,
                        double len_tol) {
  const int o1 = sign_with_tol(cross(p2 - p1, q1 - p1), area_tol);
  const int o2 = sign_with_tol(cross(p2 - p1, q2 - p1), area_tol);
  const int o3 = sign_with_tol(cross(q2 - q1, p1 - q1), area_tol);
  const int o4 = sign_with_tol(cross(q2 - q1, p2 - q1), area_tol);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within_box(p1, p2, q1, len_tol)) return true;
  if (o2 == 0 && within_box(p1, p2, q2, len_tol)) return true;
  if (o3 == 0 && within_box(q1, q2, p1, len_tol)) return true;
  if (o4 == 0 && within_box(q1, q2, p2, len_tol)) return true;
  return false;
}

struct CircleMinimum {
  double min = kInf;
  double argmin_t = 0.0;
  int skipped = 0;
};

template <class Indicator>
CircleMinimum circle_minimum(const ScanGrid& grid, double r, Indicator indicator) {
  CircleMinimum out;
  for (int j = 0; j < grid.t_samples(); ++j) {
    const double t = grid.t(j);
    const std::optional<double> v = indicator(ComplexPoint::from_polar(r, t));
    if (!v) {
      ++out.skipped;
      continue;
    }
    if (*v < out.min) {
      out.min = *v;
      out.argmin_t = t;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// IndicatorJet

IndicatorJet::IndicatorJet(BiSeries u)
    : u_(std::move(u)),
      Lu_(op_L(u_)),
      frakLu_(op_frakL(u_)),
      u_z_(partial_z(u_)),
      u_zbar_(partial_zbar(u_)),
      u_zzbar_(partial_zbar(u_z_)),
      u_zz_(partial_z(u_z_)),
      u_zbarzbar_(partial_zbar(u_zbar_)) {}

Complex IndicatorJet::tangential(const ComplexPoint& z) const {
  return Complex(0.0, 1.0) * Lu_.eval(z);
}

Complex IndicatorJet::tangential_second(const ComplexPoint& z) const {
  const Complex zv = z.value();
  const Complex zb = std::conj(zv);
  return frakLu_.eval(z) - 2.0 * std::norm(zv) * u_zzbar_.eval(z) + zv * zv * u_zz_.eval(z) +
         zb * zb * u_zbarzbar_.eval(z);
}

double IndicatorJet::jacobian(const ComplexPoint& z) const {
  return std::norm(u_z_.eval(z)) - std::norm(u_zbar_.eval(z));
}

std::optional<double> IndicatorJet::starlike(const ComplexPoint& z) const {
  const Complex v = u_.eval(z);
  if (std::abs(v) <= kSingularTol) return std::nullopt;
  return (Lu_.eval(z) / v).real();
}

std::optional<double> IndicatorJet::convex(const ComplexPoint& z) const {
  const Complex d = Lu_.eval(z);
  if (std::abs(d) <= kSingularTol) return std::nullopt;
  return (tangential_second(z) / d).real();
}

// ---------------------------------------------------------------------------
// Pointwise indicators

double starlike_indicator(const BiSeries& u, const ComplexPoint& z) {
  require_punctured(z);
  const Complex v = u.eval(z);
  if (std::abs(v) <= kSingularTol) {
    throw SingularityError("mapping vanishes; starlike indicator undefined", z.re(), z.im());
  }
  return (op_L(u).eval(z) / v).real();
}

Complex tangential_derivative(const BiSeries& u, const ComplexPoint& z) {
  return Complex(0.0, 1.0) * op_L(u).eval(z);
}

Complex tangential_second_derivative(const BiSeries& u, const ComplexPoint& z) {
  return IndicatorJet(u).tangential_second(z);
}

double convex_indicator(const BiSeries& u, const ComplexPoint& z) {
  require_punctured(z);
  const IndicatorJet jet(u);
  const Complex d = jet.L(z);
  if (std::abs(d) <= kSingularTol) {
    throw SingularityError("L[u] vanishes; convex indicator undefined", z.re(), z.im());
  }
  return (jet.tangential_second(z) / d).real();
}

double indicator_equality_gap(const LPHGSpec& spec, IndicatorKind kind, const ComplexPoint& z) {
  require_punctured(z);
  const Complex B = spec.weight_B(std::norm(z.value()));
  if (std::abs(B) <= kSingularTol) {
    throw SingularityError("sum of lambda_k |z|^{2(k-1)} vanishes", z.re(), z.im());
  }
  const BiSeries logF = assemble_logF(spec);
  const BiSeries logG = spec.log_G().embed();
  if (kind == IndicatorKind::starlike) {
    if (!spec.log_f().is_zero() || !spec.log_h().is_zero()) {
      throw PreconditionError("starlike equality needs log f = log h = 0");
    }
    return std::abs(starlike_indicator(logF, z) - starlike_indicator(logG, z));
  }
  if (!spec.log_f().is_constant() || !spec.log_h().is_constant()) {
    throw PreconditionError("convex equality needs constant f and h");
  }
  return std::abs(convex_indicator(logF, z) - convex_indicator(logG, z));
}

// ---------------------------------------------------------------------------
// Curves

double BoundaryCurve::diameter() const {
  // Exact pairwise diameter is O(M^2); the bounding-box diagonal is within a
  // factor sqrt(2) and is all the degeneracy test needs.
  if (points.empty()) return 0.0;
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const Complex& p : points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  return std::hypot(x1 - x0, y1 - y0);
}

BoundaryCurve boundary_curve(const BiSeries& u, double r, int M) {
  if (!(r > 0.0 && r < 1.0)) throw PreconditionError("curve radius outside (0, 1)");
  if (M < ScanGrid::kMinAngles) throw PreconditionError("curve needs at least 64 samples");
  BoundaryCurve c;
  c.r = r;
  c.points.reserve(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
    c.points.push_back(u.eval(ComplexPoint::from_polar(r, t)));
  }
  return c;
}

SimplicityResult is_simple(const BoundaryCurve& curve) {
  const double diam = curve.diameter();
  if (diam <= 1e-12) throw DegeneracyError("degenerate curve (diameter <= 1e-12)");
  const auto& p = curve.points;
  const int M = static_cast<int>(p.size());
  const double area_tol = 1e-12 * diam * diam;
  const double len_tol = 1e-12 * diam;

  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    const Complex a = p[static_cast<std::size_t>(i)];
    const Complex b = p[static_cast<std::size_t>((i + 1) % M)];
    boxes[static_cast<std::size_t>(i)] = {std::min(a.real(), b.real()) - len_tol,
                                          std::max(a.real(), b.real()) + len_tol,
                                          std::min(a.imag(), b.imag()) - len_tol,
                                          std::max(a.imag(), b.imag()) + len_tol};
  }

  for (int i = 0; i < M; ++i) {
    const Box& bi = boxes[static_cast<std::size_t>(i)];
    for (int j = i + 2; j < M; ++j) {
      if (i == 0 && j == M - 1) continue;  // adjacent through the closing segment
      const Box& bj = boxes[static_cast<std::size_t>(j)];
      if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
      if (segments_intersect(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>((i + 1) % M)],
                             p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>((j + 1) % M)],
                             area_tol, len_tol)) {
        return {false, std::make_pair(i, j)};
      }
    }
  }
  return {true, std::nullopt};
}

int winding_number(const BoundaryCurve& curve, Complex w) {
  const auto& p = curve.points;
  const std::size_t M = p.size();
  double total = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    total += std::arg((p[(j + 1) % M] - w) / (p[j] - w));
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::vector<ComplexPoint> univalence_probes(double r) {
  std::vector<ComplexPoint> probes;
  probes.reserve(kUnivalenceProbes);
  probes.emplace_back(0.0, 0.0);
  constexpr double kRings[] = {0.35, 0.6, 0.85};
  for (int ring = 0; ring < 3; ++ring) {
    for (int k = 0; k < 5; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.3 * ring + 0.1) / 5.0;
      probes.push_back(ComplexPoint::from_polar(kRings[ring] * r, t));
    }
  }
  return probes;
}

std::string UnivalenceReport::verdict() const {
  if (not_falsified) return "univalence not falsified";
  return "non-univalent at r=" + std::to_string(first_failure_r.value_or(0.0));
}

UnivalenceReport univalence_scan(const BiSeries& u, const ScanGrid& grid, unsigned threads) {
  UnivalenceReport rep;
  rep.radii.resize(grid.r_values().size());
  detail::parallel_for(grid.r_values().size(), threads, [&](std::size_t ri) {
    UnivalenceRadius& out = rep.radii[ri];
    out.r = grid.r_values()[ri];
    const BoundaryCurve curve = boundary_curve(u, out.r, grid.t_samples());
    const double diam = curve.diameter();
    if (diam <= 1e-12) {
      out.degenerate = true;
      out.simple = false;
      out.falsified = true;
      return;
    }
    const SimplicityResult s = is_simple(curve);
    out.simple = s.simple;
    out.crossing = s.crossing;

    bool have_probe = false;
    for (const ComplexPoint& probe : univalence_probes(out.r)) {
      const Complex w = u.eval(probe);
      double dist = kInf;
      for (const Complex& p : curve.points) dist = std::min(dist, std::abs(p - w));
      if (dist <= 1e-9 * diam) continue;
      const int wn = winding_number(curve, w);
      out.max_winding = have_probe ? std::max(out.max_winding, wn) : wn;
      out.min_winding = have_probe ? std::min(out.min_winding, wn) : wn;
      have_probe = true;
      if ((wn < 0 || wn > 1) && !out.witness_probe) out.witness_probe = probe;
    }
    out.falsified = !out.simple || out.witness_probe.has_value();
  });
  for (const UnivalenceRadius& r : rep.radii) {
    if (r.falsified) {
      rep.not_falsified = false;
      rep.first_failure_r = r.r;
      break;
    }
  }
  return rep;
}

DirectionalConvexityResult directional_convexity(const BoundaryCurve& curve, double phi,
                                                 int levels) {
  if (!is_simple(curve).simple) {
    throw PreconditionError("directional convexity needs a simple curve");
  }
  const Complex rot = std::polar(1.0, -phi);
  std::vector<double> y;
  y.reserve(curve.points.size());
  for (const Complex& p : curve.points) y.push_back((p * rot).imag());
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const std::size_t M = y.size();

  DirectionalConvexityResult out;
  for (int k = 0; k < levels; ++k) {
    const double level = lo + (k + 0.5) / levels * (hi - lo);
    bool near_sample = false;
    for (double v : y) {
      if (std::abs(v - level) <= 1e-9) {
        near_sample = true;
        break;
      }
    }
    if (near_sample) continue;
    int crossings = 0;
    for (std::size_t j = 0; j < M; ++j) {
      const bool above0 = y[j] > level;
      const bool above1 = y[(j + 1) % M] > level;
      if (above0 != above1) ++crossings;
    }
    if (crossings != 0 && crossings != 2) {
      out.convex = false;
      out.witness_level = level;
      out.witness_crossings = crossings;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scans

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::starlike: return "starlike";
    case Quantity::convex: return "convex";
    case Quantity::jacobian: return "jacobian";
  }
  return "?";
}

bool ScanReport::skipped_at(std::size_t ri, int j) const {
  return std::isnan(values[ri * static_cast<std::size_t>(grid.t_samples()) + static_cast<std::size_t>(j)]);
}

std::string ScanReport::verdict_string() const {
  return verdict == Verdict::positive ? "positive" : "nonpositive-at";
}

ScanReport scan_indicator(const BiSeries& u, Quantity q, const ScanGrid& grid, double tol,
                          unsigned threads) {
  const IndicatorJet jet(u);
  const std::size_t M = static_cast<std::size_t>(grid.t_samples());
  ScanReport rep{to_string(q), grid};
  rep.tol = tol;
  rep.values.assign(grid.size(), kNaN);

  detail::parallel_for(grid.r_values().size(), threads, [&](std::size_t ri) {
    for (int j = 0; j < grid.t_samples(); ++j) {
      const ComplexPoint z = grid.point(ri, j);
      std::optional<double> v;
      switch (q) {
        case Quantity::starlike: v = jet.starlike(z); break;
        case Quantity::convex: v = jet.convex(z); break;
        case Quantity::jacobian: v = jet.jacobian(z); break;
      }
      rep.values[ri * M + static_cast<std::size_t>(j)] = v.value_or(kNaN);
    }
  });

  double best = kInf;
  for (std::size_t ri = 0; ri < grid.r_values().size(); ++ri) {
    for (int j = 0; j < grid.t_samples(); ++j) {
      const double v = rep.values[ri * M + static_cast<std::size_t>(j)];
      const double r = grid.r_values()[ri];
      if (std::isnan(v)) {
        rep.skipped.push_back({r, grid.t(j)});
        continue;
      }
      if (v < best) {
        best = v;
        rep.argmin_r = r;
        rep.argmin_t = grid.t(j);
      }
      if (v < -tol) rep.nonpositive_at.push_back({r, grid.t(j)});
    }
  }
  if (best == kInf) throw DegeneracyError("every scanned point is singular");
  rep.min_value = best;
  rep.verdict = best >= -tol ? Verdict::positive : Verdict::nonpositive;
  return rep;
}

double convexity_radius(const BiSeries& u, const ScanGrid& grid, unsigned threads) {
  const IndicatorJet jet(u);
  const auto& radii = grid.r_values();
  std::vector<CircleMinimum> minima(radii.size());
  detail::parallel_for(radii.size(), threads, [&](std::size_t ri) {
    minima[ri] = circle_minimum(grid, radii[ri], [&](const ComplexPoint& z) { return jet.convex(z); });
  });

  bool any_evaluated = false;
  double r_star = 0.0;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    if (minima[ri].skipped == grid.t_samples()) continue;
    any_evaluated = true;
    if (minima[ri].min < -kIndicatorTol) break;
    r_star = radii[ri];
  }
  if (!any_evaluated) throw DegeneracyError("L[u] vanishes on every scanned circle");
  return r_star;
}

std::string to_string(GoodmanSaffVerdict v) {
  switch (v) {
    case GoodmanSaffVerdict::pass: return "pass";
    case GoodmanSaffVerdict::fail: return "fail";
    case GoodmanSaffVerdict::hypotheses_unmet: return "hypotheses-unmet";
  }
  return "?";
}

GoodmanSaffReport goodman_saff_scan(const LPHGSpec& spec, const ScanGrid& grid, unsigned threads) {
  const std::vector<double> capped = grid.radii_up_to(kGoodmanSaffRadius);
  if (capped.empty()) {
    throw PreconditionError("scan grid has no radius <= sqrt(2)-1");
  }

  GoodmanSaffReport rep;
  rep.f_h_constant = spec.log_f().is_constant() && spec.log_h().is_constant();

  // Hypotheses on log G over the full grid.
  const IndicatorJet jet_G(spec.log_G().embed());
  const auto& radii = grid.r_values();
  std::vector<CircleMinimum> g_minima(radii.size());
  detail::parallel_for(radii.size(), threads, [&](std::size_t ri) {
    g_minima[ri] = circle_minimum(grid, radii[ri], [&](const ComplexPoint& z) { return jet_G.convex(z); });
  });
  double g_min = kInf;
  bool g_singular = false;
  for (const CircleMinimum& c : g_minima) {
    g_min = std::min(g_min, c.min);
    g_singular = g_singular || c.skipped > 0;
  }
  rep.logG_convex_min = g_min;
  rep.logG_convex_on_grid = g_min >= -kIndicatorTol && g_min != kInf;
  rep.logG_univalence_not_falsified = univalence_scan(jet_G.u(), grid, threads).not_falsified;

  bool B_vanishes = false;
  for (double r : radii) {
    B_vanishes = B_vanishes || std::abs(spec.weight_B(r * r)) <= kSingularTol;
  }
  rep.nonvanishing = !g_singular && !B_vanishes;
  rep.hypotheses_met = rep.f_h_constant && rep.logG_convex_on_grid &&
                       rep.logG_univalence_not_falsified && rep.nonvanishing;

  // Conclusion on log F up to the radius cap.
  const IndicatorJet jet_F(assemble_logF(spec));
  rep.per_radius.resize(capped.size());
  detail::parallel_for(capped.size(), threads, [&](std::size_t ri) {
    const CircleMinimum c =
        circle_minimum(grid, capped[ri], [&](const ComplexPoint& z) { return jet_F.convex(z); });
    rep.per_radius[ri] = {capped[ri], c.min, c.argmin_t, c.skipped};
  });
  rep.convex_up_to_cap = true;
  for (const RadiusMinimum& m : rep.per_radius) {
    if (m.skipped > 0) {
      for (int j = 0; j < grid.t_samples(); ++j) {
        if (!jet_F.convex(ComplexPoint::from_polar(m.r, grid.t(j)))) {
          rep.skipped.push_back({m.r, grid.t(j)});
        }
      }
    }
    if (m.skipped == grid.t_samples() || m.min_value < -kIndicatorTol) rep.convex_up_to_cap = false;
  }
  const ScanGrid capped_grid(capped, grid.t_samples());
  rep.logF_univalence_not_falsified =
      univalence_scan(jet_F.u(), capped_grid, threads).not_falsified;

  if (!rep.hypotheses_met) {
    rep.verdict = GoodmanSaffVerdict::hypotheses_unmet;
  } else {
    rep.verdict = rep.convex_up_to_cap ? GoodmanSaffVerdict::pass : GoodmanSaffVerdict::fail;
  }
  return rep;
}

}  // namespace logpoly
