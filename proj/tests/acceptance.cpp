// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "logpoly/errors.hpp"
#include "logpoly/geometry.hpp"
#include "logpoly/random_specs.hpp"
#include "logpoly/spec_io.hpp"

using namespace logpoly;
namespace fs = std::filesystem;

namespace {

constexpr int kCap = kDefaultDegreeCap;
const std::string kCli = LOGPOLY_CLI;
const std::string kFix = LOGPOLY_FIXTURES;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt >= budget_s) {
    o.pass = false;
    o.detail += " over budget";
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.precision(3);
  line << (o.pass ? "PASS " : "FAIL ") << name << "  " << o.detail << "  time=" << std::fixed << dt << "s";
  if (budget_s > 0) line << " (budget " << budget_s << "s)";
  std::cout << line.str() << std::endl;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

LPHGSpec pure(HarmonicLogMap G, std::vector<Complex> lambdas) {
  const int cap = G.degree_cap();
  return LPHGSpec(AnalyticSeries(cap), AnalyticSeries(cap), std::move(G), std::move(lambdas));
}

// Central difference in x and y of a pointwise map; oracle for hand values.
std::pair<Complex, Complex> fd_dz_dzbar(const std::function<Complex(Complex)>& f, Complex z, double h) {
  const Complex ux = (f(z + h) - f(z - h)) / (2 * h);
  const Complex uy = (f(z + Complex(0, h)) - f(z - Complex(0, h))) / (2 * h);
  const Complex i(0, 1);
  return {(ux - i * uy) / 2.0, (ux + i * uy) / 2.0};
}

Complex at_polar(const BiSeries& u, double r, double t) { return u.eval(ComplexPoint::from_polar(r, t)); }

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = kCli + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::cout << "logpoly acceptance suite" << std::endl;

  criterion("operator_algebra", 5.0, [] {
    RandomSpecs rng(101);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const BiSeries u = rng.gaussian_integer_series(kCap / 2, kCap);
      const BiSeries v = rng.gaussian_integer_series(kCap / 2, kCap);
      const Complex a = rng.dyadic(), b = rng.dyadic();
      worst = std::max({worst, (op_L(a * u + b * v) - (a * op_L(u) + b * op_L(v))).max_abs_coeff(),
                        (op_frakL(a * u + b * v) - (a * op_frakL(u) + b * op_frakL(v))).max_abs_coeff(),
                        (op_L(multiply_exact(u, v)) -
                         (multiply_exact(op_L(u), v) + multiply_exact(u, op_L(v))))
                            .max_abs_coeff()});
    }
    return Outcome{worst == 0.0, "pairs=1000 degree<=16 max_coeff_diff=" + sci(worst)};
  });

  criterion("distribution_law", 10.0, [] {
    RandomSpecs rng(102);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const PolyharmonicSpec s = rng.polyharmonic(rng.uniform_int(1, 4), rng.uniform_int(1, 16), kCap);
      const BiSeries F = assemble_polyharmonic(s);
      for (int n = 1; n <= 3; ++n) {
        BiSeries rhs(kCap);
        for (int j = 0; j < s.p(); ++j) {
          rhs = rhs + BiSeries::abs_sq_power(j, kCap) * op_L_power(s.parts()[static_cast<std::size_t>(j)].embed(), n);
        }
        worst = std::max(worst, (op_L_power(F, n) - rhs).max_abs_coeff());
      }
    }
    return Outcome{worst == 0.0, "specs=200 n=1,2,3 max_coeff_diff=" + sci(worst)};
  });

  criterion("jacobian_closed_form", 0, [] {
    RandomSpecs rng(103);
    double worst = 0.0;
    int n = 0, singular = 0;
    while (n < 200) {
      const LPHGSpec s = rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 8), kCap, true);
      const ComplexPoint z = rng.point(0.05, 0.9);
      const BiSeries u = assemble_logF(s);
      const double scale = std::norm(partial_z(u).eval(z)) + std::norm(partial_zbar(u).eval(z));
      double closed;
      try {
        closed = jacobian_logF_closed(s, z);
      } catch (const SingularityError&) {
        ++singular;
        continue;
      }
      worst = std::max(worst, std::abs(closed - jacobian(u, z)) / scale);
      ++n;
    }
    // hand value: log F = z^2 zbar at z = 1/2, u_z = 2 z zbar, u_zbar = z^2
    const HarmonicLogMap G(AnalyticSeries({0.0, 1.0}, kCap), AnalyticSeries(kCap));
    const LPHGSpec hand = pure(G, {0.0, 1.0});
    const ComplexPoint half(0.5, 0.0);
    const double want = std::norm(2.0 * 0.5 * 0.5) - std::norm(0.5 * 0.5);
    const auto [dz, dzb] =
        fd_dz_dzbar([](Complex w) { return w * w * std::conj(w); }, Complex(0.5, 0.0), 1e-4);
    const double fd = std::norm(dz) - std::norm(dzb);
    const double e_direct = std::abs(jacobian_logF_direct(hand, half) - 0.1875);
    const double e_closed = std::abs(jacobian_logF_closed(hand, half) - 0.1875);
    const bool ok = worst <= 1e-9 && want == 0.1875 && std::abs(fd - 0.1875) < 1e-7 && e_direct <= 1e-12 &&
                    e_closed <= 1e-12;
    return Outcome{ok, "pairs=200 singular_skipped=" + std::to_string(singular) + " max_rel=" + sci(worst) +
                           " hand_err=" + sci(std::max(e_direct, e_closed)) + " fd_hand=" + sci(fd)};
  });

  criterion("power_case_jacobian", 0, [] {
    RandomSpecs rng(104);
    double worst = 0.0;
    for (int p = 2; p <= 4; ++p) {
      int n = 0;
      while (n < 100) {
        const HarmonicLogMap G = rng.harmonic(rng.uniform_int(1, 8), kCap);
        std::vector<Complex> lambdas(static_cast<std::size_t>(p));
        lambdas.back() = 1.0;
        const LPHGSpec s = pure(G, lambdas);
        const ComplexPoint z = rng.point(0.05, 0.9);
        const BiSeries u = assemble_logF(s);
        const double scale = std::norm(partial_z(u).eval(z)) + std::norm(partial_zbar(u).eval(z));
        try {
          worst = std::max(worst, std::abs(jacobian_power_case(G, p, z) - jacobian(u, z)) / scale);
          ++n;
        } catch (const SingularityError&) {
        }
      }
    }
    return Outcome{worst <= 1e-9, "p=2,3,4 points=100 each max_rel=" + sci(worst)};
  });

  criterion("ratio_identity", 0, [] {
    RandomSpecs rng(105);
    double worst = 0.0;
    int n = 0;
    while (n < 50) {
      const LPHGSpec s = rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 8), kCap, false);
      const ComplexPoint z = rng.point(0.05, 0.85);
      try {
        const double g2 = ratio_identity_gap(s, 2, z);
        const double g3 = ratio_identity_gap(s, 3, z);
        worst = std::max({worst, g2, g3});
        ++n;
      } catch (const SingularityError&) {
      }
    }
    return Outcome{worst <= 1e-10, "instances=50 n=2,3 max_gap=" + sci(worst)};
  });

  criterion("tangential_derivatives", 0, [] {
    RandomSpecs rng(106);
    double w1 = 0.0, w2 = 0.0;
    for (int k = 0; k < 30; ++k) {
      const BiSeries u = assemble_logF(rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 8), kCap, true));
      for (int j = 0; j < 30; ++j) {
        const ComplexPoint z = rng.point(0.1, 0.85);
        const double r = z.r(), t = z.t();
        const double h1 = 1e-5, h2 = 1e-4;
        const Complex fd1 = (at_polar(u, r, t + h1) - at_polar(u, r, t - h1)) / (2 * h1);
        const Complex fd2 = (at_polar(u, r, t + h2) - 2.0 * at_polar(u, r, t) + at_polar(u, r, t - h2)) / (h2 * h2);
        w1 = std::max(w1, rel(tangential_derivative(u, z), fd1));
        w2 = std::max(w2, rel(-tangential_second_derivative(u, z), fd2));
      }
    }
    return Outcome{w1 <= 1e-7 && w2 <= 1e-5,
                   "mappings=30 points=30 first_rel=" + sci(w1) + " second_rel=" + sci(w2)};
  });

  criterion("indicator_equalities", 0, [] {
    RandomSpecs rng(107);
    double ws = 0.0, wc = 0.0;
    int ns = 0, nc = 0;
    while (ns < 50 || nc < 50) {
      const int p = rng.uniform_int(1, 4);
      const HarmonicLogMap G = rng.harmonic(rng.uniform_int(1, 8), kCap);
      const ComplexPoint z = rng.point(0.05, 0.85);
      if (ns < 50) {
        try {
          ws = std::max(ws, indicator_equality_gap(pure(G, rng.nonnegative_lambdas(p)), IndicatorKind::starlike, z));
          ++ns;
        } catch (const SingularityError&) {
        }
      }
      if (nc < 50) {
        const LPHGSpec s(AnalyticSeries(std::vector<Complex>{rng.complex_unit()}, kCap),
                         AnalyticSeries(std::vector<Complex>{rng.complex_unit()}, kCap), G,
                         rng.nonnegative_lambdas(p));
        try {
          wc = std::max(wc, indicator_equality_gap(s, IndicatorKind::convex, z));
          ++nc;
        } catch (const SingularityError&) {
        }
      }
    }
    return Outcome{ws <= 1e-10 && wc <= 1e-10,
                   "instances=50 each starlike_gap=" + sci(ws) + " convex_gap=" + sci(wc)};
  });

  criterion("koebe_convexity_radius", 30.0, [] {
    const MappingSpecFile k = load_spec_file(kFix + "/koebe.json");
    const ScanGrid grid = ScanGrid::uniform(0.005, 0.99, 0.005, 1024);
    const double r = convexity_radius(k.logF(), grid, threads());
    const double oracle = 2.0 - std::sqrt(3.0);
    std::ostringstream d;
    d.precision(6);
    d << "r*=" << r << " oracle=2-sqrt(3)=" << oracle << " step=0.005";
    return Outcome{std::abs(r - oracle) <= 0.005 + 1e-12, d.str()};
  });

  criterion("goodman_saff", 60.0, [] {
    // log G hypotheses are checked on the same radii; the degree-32 half-plane
    // truncation stops being convex well before r = 0.99.
    const ScanGrid grid = ScanGrid::uniform(ScanGrid::kDefaultRMin, kGoodmanSaffRadius, 0.01, 1024);
    bool ok = true;
    std::ostringstream d;
    for (const char* name : {"power_p2", "ellipse", "halfplane"}) {
      const LPHGSpec s = load_spec_file(kFix + "/" + name + ".json").lphg();
      const GoodmanSaffReport rep = goodman_saff_scan(s, grid, threads());
      double mn = INFINITY;
      double r_last = 0.0;
      for (const auto& m : rep.per_radius) {
        mn = std::min(mn, m.min_value);
        r_last = m.r;
      }
      const bool this_ok = rep.hypotheses_met && rep.skipped.empty() && mn >= -1e-9 &&
                           r_last <= 0.41421356 && rep.per_radius.size() == 42 &&
                           rep.verdict == GoodmanSaffVerdict::pass;
      ok = ok && this_ok;
      d << name << ":min=" << sci(mn) << (this_ok ? "" : "(fail)") << " ";
    }
    d << "rho<=0.41421356 radii=42 M=1024";
    return Outcome{ok, d.str()};
  });

  criterion("polyharmonicity", 0, [] {
    RandomSpecs rng(110);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const LPHGSpec s = rng.lphg(rng.uniform_int(1, 4), rng.uniform_int(1, 12), kCap, true);
      worst = std::max(worst, laplacian_power(assemble_logF(s), s.p()).max_abs_coeff());
    }
    return Outcome{worst < 1e-14, "specs=100 max_coeff=" + sci(worst)};
  });

  criterion("univalence_scanner", 0, [] {
    const ScanGrid grid = ScanGrid::uniform(ScanGrid::kDefaultRMin, 0.99, 0.01, 1024);
    const BiSeries id = BiSeries::monomial(1, 0, 1.0, kCap);
    const BiSeries sq = BiSeries::monomial(2, 0, 1.0, kCap);
    const UnivalenceReport a = univalence_scan(id, grid, threads());
    const UnivalenceReport b = univalence_scan(sq, grid, threads());
    const UnivalenceReport b2 = univalence_scan(sq, grid, 1);
    bool ok = a.not_falsified && !b.not_falsified && b.radii.size() == grid.r_values().size();
    for (const auto& r : a.radii) ok = ok && !r.falsified && r.max_winding == 1;
    for (const auto& r : b.radii) ok = ok && r.falsified && r.max_winding == 2;
    bool same = b.radii.size() == b2.radii.size();
    for (std::size_t i = 0; same && i < b.radii.size(); ++i) {
      same = b.radii[i].crossing == b2.radii[i].crossing && b.radii[i].max_winding == b2.radii[i].max_winding &&
             b.radii[i].min_winding == b2.radii[i].min_winding;
    }
    return Outcome{ok && same, "radii=" + std::to_string(grid.r_values().size()) +
                                   " identity=" + a.verdict() + " z^2=" + b.verdict() + " winding=2" +
                                   (same ? " deterministic" : " NONDETERMINISTIC")};
  });

  criterion("cli_determinism", 0, [] {
    const std::vector<std::string> specs = {"identity", "z2",   "power_p2",   "ellipse", "halfplane",
                                            "koebe",    "p1",   "nonconst_f", "parts"};
    std::vector<std::string> cmds = {"check-identities --random --seed 7 --trials 100"};
    for (const auto& s : specs) {
      const std::string f = "--spec " + kFix + "/" + s + ".json";
      cmds.push_back("check-identities " + f + " --trials 20");
      cmds.push_back("scan " + f + " --quantity convex");
      cmds.push_back("scan " + f + " --quantity jacobian");
      cmds.push_back("render " + f + " --radii 0.25,0.5");
      if (s != "parts") {
        cmds.push_back("scan " + f + " --quantity starlike --target logG");
        cmds.push_back("goodman-saff " + f);
        cmds.push_back("univalence " + f + " --target logG --r-step 0.1");
      }
    }
    const fs::path root = fs::temp_directory_path() / "logpoly_acceptance_det";
    int files = 0;
    std::string bad;
    for (std::size_t i = 0; i < cmds.size() && bad.empty(); ++i) {
      std::vector<std::vector<std::pair<std::string, std::string>>> runs;
      std::vector<int> codes;
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path d = root / ("run" + std::to_string(rep));
        fs::remove_all(d);
        fs::create_directories(d);
        codes.push_back(run_cli(cmds[i] + " --out " + d.string(), d / "stdout.txt"));
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& e : fs::directory_iterator(d)) out.emplace_back(e.path().filename(), slurp(e.path()));
        std::sort(out.begin(), out.end());
        runs.push_back(std::move(out));
      }
      if (codes[0] == 2 || codes[0] != codes[1] || runs[0] != runs[1] || runs[0].size() < 2) bad = cmds[i];
      files += static_cast<int>(runs[0].size());
    }
    fs::remove_all(root);
    return Outcome{bad.empty(), "commands=" + std::to_string(cmds.size()) + " files_compared=" + std::to_string(files) +
                                    (bad.empty() ? "" : " mismatch: " + bad)};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
