#include <doctest.h>

#include <cmath>

#include "logpoly/errors.hpp"
#include "logpoly/mappings.hpp"
#include "logpoly/random_specs.hpp"
#include "logpoly/scan_grid.hpp"

using namespace logpoly;

namespace {

constexpr int kCap = 16;

HarmonicLogMap identity_G(int cap = kCap) {
  return HarmonicLogMap(AnalyticSeries({0.0, 1.0}, cap), AnalyticSeries(cap));
}

LPHGSpec pure(HarmonicLogMap G, std::vector<Complex> lambdas) {
  const int cap = G.degree_cap();
  return LPHGSpec(AnalyticSeries(cap), AnalyticSeries(cap), std::move(G), std::move(lambdas));
}

// log F straight from its definition, without the series assembly.
Complex logF_pointwise(const LPHGSpec& s, const ComplexPoint& z) {
  const Complex w = z.value();
  const double rho = std::norm(w);
  Complex acc = s.log_f().eval(w) + s.log_h().eval(std::conj(w));
  const Complex g = s.log_G().a().eval(w) + std::conj(s.log_G().b().eval(w));
  for (int k = 1; k <= s.p(); ++k) acc += s.lambdas()[static_cast<std::size_t>(k - 1)] * std::pow(rho, k - 1) * g;
  return acc;
}

double fd_jacobian(const LPHGSpec& s, const ComplexPoint& z) {
  const WirtingerPair d = fd_wirtinger([&](const ComplexPoint& p) { return logF_pointwise(s, p); }, z);
  return std::norm(d.d_z) - std::norm(d.d_zbar);
}

}  // namespace

TEST_CASE("hand value: log F = z^2 zbar at z = 0.5") {
  const LPHGSpec s = pure(identity_G(), {0.0, 1.0});
  const ComplexPoint z(0.5, 0.0);
  CHECK(assemble_logF(s) == BiSeries::monomial(2, 1, 1.0, kCap));
  CHECK(std::abs(jacobian_logF_direct(s, z) - 0.1875) < 1e-12);
  CHECK(std::abs(jacobian_logF_closed(s, z) - 0.1875) < 1e-12);
  CHECK(std::abs(jacobian_power_case(s.log_G(), 2, z) - 0.1875) < 1e-12);
  CHECK(std::abs(fd_jacobian(s, z) - 0.1875) < 1e-9);
}

TEST_CASE("hand value: p = 3 power case is 5 |z|^8") {
  const LPHGSpec s = pure(identity_G(), {0.0, 0.0, 1.0});
  RandomSpecs rng(2);
  for (int k = 0; k < 20; ++k) {
    const ComplexPoint z = rng.point(0.1, 0.9);
    const double want = 5.0 * std::pow(z.r(), 8);
    CHECK(std::abs(jacobian_logF_direct(s, z) - want) < 1e-14);
    CHECK(std::abs(jacobian_power_case(s.log_G(), 3, z) - want) < 1e-14);
  }
}

TEST_CASE("weights A and B") {
  const LPHGSpec s = pure(identity_G(), {1.0, 2.0, 3.0});
  CHECK(s.weight_B(0.5) == Complex(1.0 + 2.0 * 0.5 + 3.0 * 0.25));
  CHECK(s.weight_A(0.5) == Complex(2.0 + 3.0 * 2.0 * 0.5));
  CHECK(pure(identity_G(), {4.0}).weight_A(0.3) == Complex(0.0));
}

TEST_CASE("constructor preconditions") {
  CHECK_THROWS_AS(PolyharmonicSpec({}), PreconditionError);
  CHECK_THROWS_AS(pure(identity_G(), {}), PreconditionError);
  CHECK_THROWS_AS(pure(identity_G(), {NAN}), DomainError);
  CHECK_THROWS_AS(PolyharmonicSpec(std::vector<HarmonicLogMap>(3, identity_G(4))), DimensionError);
  CHECK_THROWS_AS(LPHGSpec(AnalyticSeries(8), AnalyticSeries(kCap), identity_G(), {1.0}), DimensionError);
}

TEST_CASE("assembly matches the pointwise definition and F never vanishes") {
  RandomSpecs rng(21);
  for (int k = 0; k < 50; ++k) {
    const LPHGSpec s = rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 6), kCap, true);
    const BiSeries u = assemble_logF(s);
    const ComplexPoint z = rng.point(0.05, 0.9);
    CHECK(std::abs(u.eval(z) - logF_pointwise(s, z)) < 1e-12);
    CHECK(std::abs(eval_F(s, z) - std::exp(logF_pointwise(s, z))) < 1e-10 * std::abs(eval_F(s, z)));
    CHECK(std::abs(eval_F(s, z)) > 0.0);
  }
}

TEST_CASE("log h is applied at zbar without conjugation") {
  const LPHGSpec s(AnalyticSeries(kCap), AnalyticSeries({0.0, Complex(0.0, 1.0)}, kCap), identity_G(), {1.0});
  const ComplexPoint z(0.2, 0.3);
  CHECK(std::abs(assemble_logF(s).eval(z) - (z.value() + Complex(0.0, 1.0) * std::conj(z.value()))) < 1e-15);
}

TEST_CASE("property: closed-form Jacobian equals direct and finite-difference Jacobians") {
  RandomSpecs rng(33);
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    const LPHGSpec s = rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 6), kCap, true);
    const ComplexPoint z = rng.point(0.05, 0.85);
    const BiSeries u = assemble_logF(s);
    const double scale = std::norm(partial_z(u).eval(z)) + std::norm(partial_zbar(u).eval(z));
    double closed = 0.0;
    try {
      closed = jacobian_logF_closed(s, z);
    } catch (const SingularityError&) {
      continue;
    }
    const double direct = jacobian_logF_direct(s, z);
    CHECK(std::abs(closed - direct) <= 1e-9 * scale);
    CHECK(std::abs(direct - fd_jacobian(s, z)) <= 1e-7 * std::max(1.0, scale));
    ++checked;
  }
  CHECK(checked > 90);
}

TEST_CASE("A, B, C coefficients for the pure product class") {
  const LPHGSpec s = pure(identity_G(), {1.0, 0.5});
  const ComplexPoint z(0.3, 0.1);
  const LemmaCoefficients c = lemma_coefficients(s, z);
  CHECK(c.C == Complex(0.0));
  CHECK(std::abs(c.B - (1.0 + 0.5 * 0.1)) < 1e-15);
  CHECK(std::abs(c.A - 0.5) < 1e-15);
}

TEST_CASE("singular and domain cases") {
  const LPHGSpec s = pure(identity_G(), {0.0, 1.0});
  CHECK_THROWS_AS(jacobian_logF_direct(s, ComplexPoint(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(jacobian_logF_direct(s, ComplexPoint(1.0, 0.0)), DomainError);
  const HarmonicLogMap shifted(AnalyticSeries({-0.5, 1.0}, kCap), AnalyticSeries(kCap));
  try {
    (void)jacobian_logF_closed(pure(shifted, {1.0}), ComplexPoint(0.5, 0.0));
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.re() == 0.5);
    CHECK(e.im() == 0.0);
  }
  CHECK_THROWS_AS(jacobian_power_case(identity_G(), 1, ComplexPoint(0.5, 0.0)), ArgumentError);
}

TEST_CASE("ratio identity gap") {
  const ComplexPoint z(0.4, -0.2);
  const HarmonicLogMap G(AnalyticSeries({0.0, 1.0, 0.25}, kCap), AnalyticSeries({0.0, 0.2}, kCap));
  // p = 1 with lambda = 2 and lambda = 1: log F is an exact multiple of log G.
  CHECK(ratio_identity_gap(pure(G, {2.0}), 2, z) == 0.0);
  CHECK(ratio_identity_gap(pure(G, {1.0}), 3, z) == 0.0);
  CHECK(ratio_identity_gap(pure(G, {0.3, 0.7, 0.1}), 3, z) < 1e-12);
  CHECK_THROWS_AS(ratio_identity_gap(pure(G, {1.0}), 1, z), ArgumentError);
  const LPHGSpec with_f(AnalyticSeries({0.0, 1.0}, kCap), AnalyticSeries(kCap), G, {1.0});
  CHECK_THROWS_AS(ratio_identity_gap(with_f, 2, z), PreconditionError);
  CHECK_THROWS_AS(ratio_identity_gap(pure(G, {1.0, -1.0 / 0.2}), 2, z), SingularityError);
}

TEST_CASE("local univalence check: identity with lambda = (0, 1)") {
  const ScanGrid grid = ScanGrid::uniform(0.05, 0.95, 0.05, 64);
  const LocalUnivalenceReport rep = thm24_check(pure(identity_G(), {0.0, 1.0}), grid);
  CHECK(rep.lambdas_nonnegative.state == FlagState::holds);
  CHECK(rep.logG_orientation.state == FlagState::holds);
  CHECK(rep.logG_starlike.state == FlagState::holds);
  CHECK(rep.f_coupling.state == FlagState::degenerate);
  CHECK(rep.f_h_symmetry.state == FlagState::holds);
  CHECK(rep.status == HypothesisStatus::met_with_degenerate);
  CHECK(rep.conclusion_claimed);
  CHECK(rep.conclusion_positive);
  CHECK(rep.min_jacobian == doctest::Approx(3.0 * std::pow(0.05, 4)).epsilon(1e-9));
}

TEST_CASE("local univalence check: failing hypotheses are reported independently") {
  const ScanGrid grid = ScanGrid::uniform(0.1, 0.9, 0.1, 64);
  const LocalUnivalenceReport neg = thm24_check(pure(identity_G(), {1.0, -0.5}), grid);
  CHECK(neg.lambdas_nonnegative.state == FlagState::fails);
  CHECK(neg.status == HypothesisStatus::unmet);
  CHECK_FALSE(neg.conclusion_claimed);

  const LPHGSpec asym(AnalyticSeries({0.0, 0.5}, kCap), AnalyticSeries(kCap), identity_G(), {1.0});
  const LocalUnivalenceReport a = thm24_check(asym, grid);
  CHECK(a.f_h_symmetry.state == FlagState::fails);
  CHECK(a.f_h_symmetry.witness.has_value());
  CHECK(a.status == HypothesisStatus::unmet);

  const HarmonicLogMap rev(AnalyticSeries(kCap), AnalyticSeries({0.0, 1.0}, kCap));
  const LocalUnivalenceReport r = thm24_check(pure(rev, {1.0}), grid);
  CHECK(r.logG_orientation.state == FlagState::fails);
  CHECK(r.min_jacobian < 0.0);
}
