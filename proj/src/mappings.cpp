#include "logpoly/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace logpoly {

namespace {

double abs_sq(Complex c) { return std::norm(c); }

void require_interior_nonzero(const ComplexPoint& z) {
  const double r = z.r();
  if (!(r < 1.0)) throw DomainError("point outside the unit disk");
  if (r == 0.0) throw DomainError("the origin is excluded (punctured disk)");
}

void require_same_cap(int expected, int got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + " degree cap " + std::to_string(got) +
                         " differs from " + std::to_string(expected));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// HarmonicLogMap

HarmonicLogMap::HarmonicLogMap(int degree_cap) : a_(degree_cap), b_(degree_cap) {}

HarmonicLogMap::HarmonicLogMap(AnalyticSeries a, AnalyticSeries b)
    : a_(std::move(a)), b_(std::move(b)) {
  require_same_cap(a_.degree_cap(), b_.degree_cap(), "co-analytic part");
}

BiSeries HarmonicLogMap::embed() const {
  return BiSeries::embed(a_) + BiSeries::embed_conj(b_);
}

Complex HarmonicLogMap::eval(const ComplexPoint& z) const {
  return a_.eval(z.value()) + std::conj(b_.eval(z.value()));
}

Complex HarmonicLogMap::d_z(const ComplexPoint& z) const {
  return a_.derivative().eval(z.value());
}

Complex HarmonicLogMap::d_zbar(const ComplexPoint& z) const {
  return std::conj(b_.derivative().eval(z.value()));
}

// ---------------------------------------------------------------------------
// PolyharmonicSpec / LPHGSpec

PolyharmonicSpec::PolyharmonicSpec(std::vector<HarmonicLogMap> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw PreconditionError("polyharmonic spec needs at least one part");
  const int cap = parts_.front().degree_cap();
  for (const auto& g : parts_) require_same_cap(cap, g.degree_cap(), "harmonic part");
  if (p() > cap / 2) {
    throw DimensionError("p = " + std::to_string(p()) + " exceeds degree cap / 2");
  }
}

LPHGSpec::LPHGSpec(AnalyticSeries log_f, AnalyticSeries log_h, HarmonicLogMap log_G,
                   std::vector<Complex> lambdas)
    : log_f_(std::move(log_f)),
      log_h_(std::move(log_h)),
      log_G_(std::move(log_G)),
      lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw PreconditionError("lambda vector must be nonempty");
  for (Complex l : lambdas_) {
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
      throw DomainError("non-finite lambda");
    }
  }
  const int cap = log_G_.degree_cap();
  require_same_cap(cap, log_f_.degree_cap(), "log f");
  require_same_cap(cap, log_h_.degree_cap(), "log h");
}

Complex LPHGSpec::weight_A(double s) const {
  Complex acc{};
  // Horner in s over k = p..2 of lambda_k (k-1) s^{k-2}.
  for (int k = p(); k >= 2; --k) {
    acc = acc * s + lambdas_[static_cast<std::size_t>(k - 1)] * static_cast<double>(k - 1);
  }
  return acc;
}

Complex LPHGSpec::weight_B(double s) const {
  Complex acc{};
  for (int k = p(); k >= 1; --k) acc = acc * s + lambdas_[static_cast<std::size_t>(k - 1)];
  return acc;
}

// ---------------------------------------------------------------------------
// Assembly

BiSeries assemble_polyharmonic(const PolyharmonicSpec& spec) {
  const int cap = spec.degree_cap();
  BiSeries out(cap);
  for (int k = 1; k <= spec.p(); ++k) {
    const BiSeries weight = BiSeries::abs_sq_power(k - 1, cap);
    out = out + multiply_exact(weight, spec.parts()[static_cast<std::size_t>(k - 1)].embed());
  }
  return out;
}

BiSeries assemble_logF(const LPHGSpec& spec) {
  const int cap = spec.degree_cap();
  BiSeries out = BiSeries::embed(spec.log_f()) + BiSeries::embed_anti(spec.log_h());
  const BiSeries g = spec.log_G().embed();
  for (int k = 1; k <= spec.p(); ++k) {
    const Complex lambda = spec.lambdas()[static_cast<std::size_t>(k - 1)];
    if (lambda == Complex{}) continue;
    if (k - 1 > cap) throw DimensionError("|z|^{2(p-1)} exceeds the degree cap");
    out = out + multiply_exact(BiSeries::abs_sq_power(k - 1, cap), lambda * g);
  }
  return out;
}

Complex eval_F(const LPHGSpec& spec, const ComplexPoint& z) {
  return std::exp(assemble_logF(spec).eval(z));
}

LemmaCoefficients lemma_coefficients(const LPHGSpec& spec, const ComplexPoint& z) {
  if (!(z.r() < 1.0)) throw DomainError("point outside the unit disk");
  const double s = abs_sq(z.value());
  const Complex dlog_f = spec.log_f().derivative().eval(z.value());
  const Complex dlog_h = spec.log_h().derivative().eval(std::conj(z.value()));
  const Complex g_z = spec.log_G().d_z(z);
  const Complex g_zbar = spec.log_G().d_zbar(z);
  const Complex C = dlog_f * std::conj(g_z) - dlog_h * std::conj(g_zbar);
  return {spec.weight_A(s), spec.weight_B(s), C, z};
}

double jacobian(const BiSeries& u, const ComplexPoint& z) {
  return abs_sq(partial_z(u).eval(z)) - abs_sq(partial_zbar(u).eval(z));
}

double jacobian_logF_direct(const LPHGSpec& spec, const ComplexPoint& z) {
  require_interior_nonzero(z);
  return jacobian(assemble_logF(spec), z);
}

double jacobian_logF_closed(const LPHGSpec& spec, const ComplexPoint& z) {
  require_interior_nonzero(z);
  const Complex zv = z.value();
  const Complex g = spec.log_G().eval(z);
  if (std::abs(g) <= kSingularTol) {
    throw SingularityError("log G vanishes; nested-log quotient undefined", z.re(), z.im());
  }
  const auto [A, B, C, at] = lemma_coefficients(spec, z);
  const Complex dlog_f = spec.log_f().derivative().eval(zv);
  const Complex dlog_h = spec.log_h().derivative().eval(std::conj(zv));
  const Complex g_z = spec.log_G().d_z(z);
  const Complex g_zbar = spec.log_G().d_zbar(z);

  const double jac_G = abs_sq(g_z) - abs_sq(g_zbar);
  const Complex L_log_log_G = (zv * g_z - std::conj(zv) * g_zbar) / g;
  const Complex L_log_fh = zv * dlog_f - std::conj(zv) * dlog_h;

  return abs_sq(dlog_f) - abs_sq(dlog_h) + abs_sq(B) * jac_G +
         2.0 * abs_sq(g) * (std::conj(A) * B * L_log_log_G).real() +
         2.0 * (std::conj(A) * std::conj(g) * L_log_fh).real() +
         2.0 * (std::conj(B) * C).real();
}

double jacobian_power_case(const HarmonicLogMap& log_G, int p, const ComplexPoint& z) {
  if (p < 2) throw ArgumentError("power case needs p >= 2");
  require_interior_nonzero(z);
  const Complex zv = z.value();
  const Complex g = log_G.eval(z);
  if (std::abs(g) <= kSingularTol) {
    throw SingularityError("log G vanishes; nested-log quotient undefined", z.re(), z.im());
  }
  const Complex g_z = log_G.d_z(z);
  const Complex g_zbar = log_G.d_zbar(z);
  const double s = abs_sq(zv);
  const double jac_G = abs_sq(g_z) - abs_sq(g_zbar);
  const Complex L_log_log_G = (zv * g_z - std::conj(zv) * g_zbar) / g;
  return std::pow(s, 2 * (p - 1)) * jac_G +
         2.0 * (p - 1) * abs_sq(g) * std::pow(s, 2 * p - 3) * L_log_log_G.real();
}

double ratio_identity_gap(const LPHGSpec& spec, int n, const ComplexPoint& z) {
  if (n < 2) throw ArgumentError("ratio identity needs n >= 2");
  if (!spec.log_f().is_zero() || !spec.log_h().is_zero()) {
    throw PreconditionError("ratio identity applies to the pure product class (log f = log h = 0)");
  }
  if (!(z.r() < 1.0)) throw DomainError("point outside the unit disk");
  const Complex B = spec.weight_B(abs_sq(z.value()));
  if (std::abs(B) <= kSingularTol) {
    throw SingularityError("sum of lambda_k |z|^{2(k-1)} vanishes", z.re(), z.im());
  }
  const BiSeries logF = assemble_logF(spec);
  const BiSeries logG = spec.log_G().embed();
  const Complex LF = op_L(logF).eval(z);
  const Complex LG = op_L(logG).eval(z);
  if (std::abs(LG) <= kSingularTol || std::abs(LF) <= kSingularTol) {
    throw SingularityError("L[log G] vanishes", z.re(), z.im());
  }
  const Complex ratio_F = op_L_power(logF, n).eval(z) / LF;
  const Complex ratio_G = op_L_power(logG, n).eval(z) / LG;
  return std::abs(ratio_F - ratio_G);
}

// ---------------------------------------------------------------------------
// Local univalence report

std::string to_string(FlagState s) {
  switch (s) {
    case FlagState::holds: return "holds";
    case FlagState::fails: return "fails";
    case FlagState::degenerate: return "degenerate (=0)";
    case FlagState::not_applicable: return "not applicable";
  }
  return "?";
}

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::met: return "met";
    case HypothesisStatus::met_with_degenerate: return "met-with-degenerate";
    case HypothesisStatus::unmet: return "unmet";
  }
  return "?";
}

std::vector<const HypothesisFlag*> LocalUnivalenceReport::flags() const {
  return {&lambdas_nonnegative, &logG_orientation, &logG_starlike, &f_coupling, &f_h_symmetry};
}

namespace {

// Tracks "value > 0 everywhere" with the minimum and where it occurred.
struct PositivityTracker {
  double min = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  std::optional<ComplexPoint> at;

  void add(double v, const ComplexPoint& z) {
    max_abs = std::max(max_abs, std::abs(v));
    if (v < min) {
      min = v;
      at = z;
    }
  }

  HypothesisFlag finish(std::string name, bool allow_degenerate) const {
    HypothesisFlag flag{std::move(name), FlagState::not_applicable, min, at};
    if (!at) return flag;
    if (allow_degenerate && max_abs <= kSingularTol) {
      flag.state = FlagState::degenerate;
    } else {
      flag.state = min > 0.0 ? FlagState::holds : FlagState::fails;
    }
    return flag;
  }
};

}  // namespace

LocalUnivalenceReport thm24_check(const LPHGSpec& spec, const ScanGrid& grid) {
  LocalUnivalenceReport rep;

  {
    bool ok = true;
    Complex sum{};
    for (Complex l : spec.lambdas()) {
      ok = ok && l.imag() == 0.0 && l.real() >= 0.0;
      sum += l;
    }
    ok = ok && sum != Complex{};
    rep.lambdas_nonnegative = {"lambda_k real, nonnegative, nonzero sum",
                               ok ? FlagState::holds : FlagState::fails, std::abs(sum),
                               std::nullopt};
  }

  const BiSeries logF = assemble_logF(spec);
  const BiSeries F_z = partial_z(logF);
  const BiSeries F_zbar = partial_zbar(logF);
  const AnalyticSeries dlog_f = spec.log_f().derivative();
  const AnalyticSeries dlog_h = spec.log_h().derivative();
  const AnalyticSeries dg_a = spec.log_G().a().derivative();
  const AnalyticSeries dg_b = spec.log_G().b().derivative();

  PositivityTracker jac_G;
  PositivityTracker starlike;
  PositivityTracker coupling;
  double sym_residual = 0.0;
  std::optional<ComplexPoint> sym_at;
  double min_J = std::numeric_limits<double>::infinity();
  std::optional<ComplexPoint> min_J_at;

  for (std::size_t ri = 0; ri < grid.r_values().size(); ++ri) {
    for (int j = 0; j < grid.t_samples(); ++j) {
      const ComplexPoint z = grid.point(ri, j);
      const Complex zv = z.value();
      const Complex zb = std::conj(zv);

      const Complex g = spec.log_G().eval(z);
      const Complex g_z = dg_a.eval(zv);
      const Complex g_zbar = std::conj(dg_b.eval(zv));
      const Complex L_g = zv * g_z - zb * g_zbar;

      jac_G.add(abs_sq(g_z) - abs_sq(g_zbar), z);
      if (std::abs(g) <= kSingularTol) {
        rep.skipped.push_back(z);
      } else {
        starlike.add((L_g / g).real(), z);
      }
      coupling.add((zb * dlog_f.eval(zb) * L_g).real(), z);

      const double residual = std::abs(zb * dlog_f.eval(zb) - zv * dlog_h.eval(zv));
      if (!sym_at || residual > sym_residual) {
        sym_residual = residual;
        sym_at = z;
      }

      const double J = abs_sq(F_z.eval(z)) - abs_sq(F_zbar.eval(z));
      if (J < min_J) {
        min_J = J;
        min_J_at = z;
      }
    }
  }
  if (!min_J_at) throw PreconditionError("scan grid has no points");

  rep.logG_orientation = jac_G.finish("J_{log G} > 0", false);
  rep.logG_starlike = starlike.finish("Re(L[log G]/log G) > 0", false);
  rep.f_coupling = coupling.finish("Re(zbar f'(zbar)/f(zbar) L[log G]) > 0", true);
  rep.f_h_symmetry = {"zbar f'(zbar)/f(zbar) = z h'(z)/h(z)",
                      sym_residual <= 1e-10 ? FlagState::holds : FlagState::fails,
                      sym_residual, sym_at};

  bool any_fail = false;
  bool any_degenerate = false;
  for (const HypothesisFlag* f : rep.flags()) {
    any_fail = any_fail || f->state == FlagState::fails || f->state == FlagState::not_applicable;
    any_degenerate = any_degenerate || f->state == FlagState::degenerate;
  }
  rep.status = any_fail ? HypothesisStatus::unmet
               : any_degenerate ? HypothesisStatus::met_with_degenerate
                                : HypothesisStatus::met;
  rep.min_jacobian = min_J;
  rep.min_jacobian_at = *min_J_at;
  rep.conclusion_claimed = rep.status != HypothesisStatus::unmet;
  rep.conclusion_positive = min_J > 0.0;
  return rep;
}

}  // namespace logpoly
