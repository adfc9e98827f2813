#include "logpoly/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "logpoly/geometry.hpp"
#include "logpoly/random_specs.hpp"

namespace logpoly {

namespace {

constexpr int kCap = 32;
constexpr double kPointRMin = 0.05;
constexpr double kPointRMax = 0.85;

std::string point_label(int trial, const ComplexPoint& z) {
  std::ostringstream os;
  os.precision(17);
  os << "trial " << trial << " at z=(" << z.re() << ", " << z.im() << ")";
  return os.str();
}

class Accumulator {
 public:
  Accumulator(std::string name, double tol) { r_.name = std::move(name), r_.tolerance = tol; }

  void add(double err, const std::string& label) {
    ++r_.cases;
    if (r_.cases == 1 || err > r_.max_error || std::isnan(err)) {
      r_.max_error = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
      r_.worst_case = label;
    }
  }
  void skip() { ++r_.skipped; }

  IdentityResult finish() {
    r_.pass = r_.max_error <= r_.tolerance;
    return r_;
  }

 private:
  IdentityResult r_;
};

// Central differences of t -> u(r e^{it}); the oracle for the tangential
// derivatives.
Complex fd_t_first(const BiSeries& u, const ComplexPoint& z, double h) {
  const double r = z.r();
  const double t = z.t();
  return (u.eval(ComplexPoint::from_polar(r, t + h)) - u.eval(ComplexPoint::from_polar(r, t - h))) /
         (2.0 * h);
}

Complex fd_t_second(const BiSeries& u, const ComplexPoint& z, double h) {
  const double r = z.r();
  const double t = z.t();
  return (u.eval(ComplexPoint::from_polar(r, t + h)) - 2.0 * u.eval(z) +
          u.eval(ComplexPoint::from_polar(r, t - h))) /
         (h * h);
}

}  // namespace

double unit_floor_relative_error(Complex a, Complex b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

bool IdentitySuiteResult::all_pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const auto& r) { return r.pass; });
}

const IdentityResult* IdentitySuiteResult::worst_failure() const {
  const IdentityResult* worst = nullptr;
  for (const auto& r : identities) {
    if (r.pass) continue;
    const double excess = r.max_error / std::max(r.tolerance, 1e-300);
    if (!worst || excess > worst->max_error / std::max(worst->tolerance, 1e-300)) worst = &r;
  }
  return worst;
}

nlohmann::json IdentitySuiteResult::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : identities) {
    arr.push_back({{"name", r.name},
                   {"max_error", r.max_error},
                   {"tolerance", r.tolerance},
                   {"cases", r.cases},
                   {"skipped", r.skipped},
                   {"pass", r.pass},
                   {"worst_case", r.worst_case}});
  }
  return arr;
}

IdentitySuiteResult run_identity_suite(const IdentitySuiteOptions& opts) {
  RandomSpecs rng(opts.seed);
  const int trials = std::max(1, opts.trials);
  IdentitySuiteResult out;

  // -- Operator algebra on exact (Gaussian-integer) series --------------------
  {
    Accumulator lin_L("L_linearity", 0.0);
    Accumulator lin_frakL("frakL_linearity", 0.0);
    Accumulator product("L_product_rule", 0.0);
    Accumulator commute("laplacian_L_commute", 0.0);
    for (int k = 0; k < trials; ++k) {
      const BiSeries u = rng.gaussian_integer_series(kCap, kCap);
      const BiSeries v = rng.gaussian_integer_series(kCap, kCap);
      const Complex alpha = rng.dyadic();
      const Complex beta = rng.dyadic();
      const std::string label = "trial " + std::to_string(k);
      lin_L.add((op_L(alpha * u + beta * v) - (alpha * op_L(u) + beta * op_L(v))).max_abs_coeff(),
                label);
      lin_frakL.add(
          (op_frakL(alpha * u + beta * v) - (alpha * op_frakL(u) + beta * op_frakL(v))).max_abs_coeff(),
          label);
      commute.add((laplacian(op_L(u)) - op_L(laplacian(u))).max_abs_coeff(), label);

      const BiSeries a = rng.gaussian_integer_series(kCap / 4, kCap);
      const BiSeries b = rng.gaussian_integer_series(kCap / 4, kCap);
      product.add((op_L(a * b) - (op_L(a) * b + a * op_L(b))).max_abs_coeff(), label);
    }
    out.identities.push_back(lin_L.finish());
    out.identities.push_back(lin_frakL.finish());
    out.identities.push_back(product.finish());
    out.identities.push_back(commute.finish());
  }

  // -- Distribution law of L^n over polyharmonic parts -------------------------
  {
    Accumulator dist[3] = {{"distribution_law_n1", 0.0},
                           {"distribution_law_n2", 0.0},
                           {"distribution_law_n3", 0.0}};
    for (int k = 0; k < trials; ++k) {
      const PolyharmonicSpec spec = rng.polyharmonic(rng.uniform_int(1, 4), rng.uniform_int(1, 16), kCap);
      const BiSeries F = assemble_polyharmonic(spec);
      for (int n = 1; n <= 3; ++n) {
        BiSeries rhs(kCap);
        for (int j = 1; j <= spec.p(); ++j) {
          rhs = rhs + BiSeries::abs_sq_power(j - 1, kCap) *
                          op_L_power(spec.parts()[static_cast<std::size_t>(j - 1)].embed(), n);
        }
        dist[n - 1].add((op_L_power(F, n) - rhs).max_abs_coeff(), "trial " + std::to_string(k));
      }
    }
    for (auto& d : dist) out.identities.push_back(d.finish());
  }

  // -- Mapping-level identities ----------------------------------------------
  const bool use_spec = opts.spec.has_value();
  const bool spec_lphg = use_spec && opts.spec->has_lphg();

  // Random LPHG member, or the supplied spec with a possibly forced shape.
  auto draw = [&](bool with_f_h) { return rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 8), kCap, with_f_h); };

  {
    Accumulator poly("polyharmonicity", 1e-14);
    if (use_spec) {
      const int p = opts.spec->parts() ? opts.spec->parts()->p() : opts.spec->lphg().p();
      poly.add(laplacian_power(opts.spec->logF(), p).max_abs_coeff(), "spec");
    } else {
      for (int k = 0; k < trials; ++k) {
        const LPHGSpec s = draw(true);
        poly.add(laplacian_power(assemble_logF(s), s.p()).max_abs_coeff(), "trial " + std::to_string(k));
      }
    }
    out.identities.push_back(poly.finish());
  }

  {
    Accumulator closed("jacobian_closed_vs_direct", 1e-9);
    Accumulator power("jacobian_power_case", 1e-9);
    for (int k = 0; k < trials; ++k) {
      if (use_spec && !spec_lphg) {
        closed.skip();
        power.skip();
        continue;
      }
      const LPHGSpec spec = spec_lphg ? opts.spec->lphg() : draw(true);
      const ComplexPoint z = rng.point(kPointRMin, kPointRMax);
      const BiSeries logF = assemble_logF(spec);
      const double scale = std::norm(partial_z(logF).eval(z)) + std::norm(partial_zbar(logF).eval(z));
      try {
        const double direct = jacobian(logF, z);
        const double c = jacobian_logF_closed(spec, z);
        closed.add(std::abs(c - direct) / std::max(scale, 1e-300), point_label(k, z));
      } catch (const SingularityError&) {
        closed.skip();
      }

      const int p = rng.uniform_int(2, 4);
      std::vector<Complex> lambdas(static_cast<std::size_t>(p));
      lambdas.back() = 1.0;
      const int cap = spec.degree_cap();
      const LPHGSpec pure{AnalyticSeries(cap), AnalyticSeries(cap), spec.log_G(), lambdas};
      BiSeries logP(cap);
      try {
        logP = assemble_logF(pure);
      } catch (const DimensionError&) {
        power.skip();
        continue;
      }
      const double pscale = std::norm(partial_z(logP).eval(z)) + std::norm(partial_zbar(logP).eval(z));
      try {
        const double direct = jacobian(logP, z);
        const double c = jacobian_power_case(spec.log_G(), p, z);
        power.add(std::abs(c - direct) / std::max(pscale, 1e-300), point_label(k, z));
      } catch (const SingularityError&) {
        power.skip();
      }
    }
    out.identities.push_back(closed.finish());
    out.identities.push_back(power.finish());
  }

  {
    Accumulator ratio("ratio_identity", 1e-10);
    for (int k = 0; k < trials; ++k) {
      if (use_spec && (!spec_lphg || !opts.spec->log_f().is_zero() || !opts.spec->log_h().is_zero())) {
        ratio.skip();
        continue;
      }
      const LPHGSpec spec = spec_lphg ? opts.spec->lphg() : draw(false);
      const ComplexPoint z = rng.point(kPointRMin, kPointRMax);
      for (int n = 2; n <= 3; ++n) {
        try {
          const BiSeries G = spec.log_G().embed();
          const double ref = std::abs(op_L_power(G, n).eval(z) / op_L(G).eval(z));
          const double gap = ratio_identity_gap(spec, n, z);
          ratio.add(gap / std::max(1.0, ref), point_label(k, z) + " n=" + std::to_string(n));
        } catch (const SingularityError&) {
          ratio.skip();
        }
      }
    }
    out.identities.push_back(ratio.finish());
  }

  {
    Accumulator star("starlike_indicator_equality", 1e-10);
    Accumulator conv("convex_indicator_equality", 1e-10);
    for (int k = 0; k < trials; ++k) {
      const ComplexPoint z = rng.point(kPointRMin, kPointRMax);
      if (use_spec) {
        if (!spec_lphg) {
          star.skip();
          conv.skip();
          continue;
        }
        const LPHGSpec spec = opts.spec->lphg();
        if (spec.log_f().is_zero() && spec.log_h().is_zero()) {
          try {
            star.add(indicator_equality_gap(spec, IndicatorKind::starlike, z), point_label(k, z));
          } catch (const SingularityError&) {
            star.skip();
          }
        } else {
          star.skip();
        }
        if (spec.log_f().is_constant() && spec.log_h().is_constant()) {
          try {
            conv.add(indicator_equality_gap(spec, IndicatorKind::convex, z), point_label(k, z));
          } catch (const SingularityError&) {
            conv.skip();
          }
        } else {
          conv.skip();
        }
        continue;
      }
      const int p = rng.uniform_int(1, 4);
      const HarmonicLogMap G = rng.harmonic(rng.uniform_int(1, 8), kCap);
      const LPHGSpec pure{AnalyticSeries(kCap), AnalyticSeries(kCap), G, rng.nonnegative_lambdas(p)};
      const LPHGSpec constants(AnalyticSeries({rng.complex_unit()}, kCap),
                               AnalyticSeries({rng.complex_unit()}, kCap), G, rng.nonnegative_lambdas(p));
      try {
        star.add(indicator_equality_gap(pure, IndicatorKind::starlike, z), point_label(k, z));
      } catch (const SingularityError&) {
        star.skip();
      }
      try {
        conv.add(indicator_equality_gap(constants, IndicatorKind::convex, z), point_label(k, z));
      } catch (const SingularityError&) {
        conv.skip();
      }
    }
    out.identities.push_back(star.finish());
    out.identities.push_back(conv.finish());
  }

  {
    Accumulator first("tangential_first_vs_fd", 1e-7);
    Accumulator second("tangential_second_vs_fd", 1e-5);
    Accumulator wirt("wirtinger_vs_fd", 1e-7);
    for (int k = 0; k < trials; ++k) {
      const BiSeries u = use_spec ? opts.spec->logF() : assemble_logF(draw(true));
      const ComplexPoint z = rng.point(0.1, 0.8);
      const IndicatorJet jet(u);
      first.add(unit_floor_relative_error(jet.tangential(z), fd_t_first(u, z, 1e-5)), point_label(k, z));
      second.add(unit_floor_relative_error(-jet.tangential_second(z), fd_t_second(u, z, 1e-4)),
                 point_label(k, z));
      const WirtingerPair fd =
          fd_wirtinger([&u](const ComplexPoint& w) { return u.eval(w); }, z, FDConfig{});
      wirt.add(std::max(unit_floor_relative_error(partial_z(u).eval(z), fd.d_z),
                        unit_floor_relative_error(partial_zbar(u).eval(z), fd.d_zbar)),
               point_label(k, z));
    }
    out.identities.push_back(first.finish());
    out.identities.push_back(second.finish());
    out.identities.push_back(wirt.finish());
  }

  return out;
}

}  // namespace logpoly
