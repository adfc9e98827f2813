// logpoly: command-line front end for scans, identity checks and figures.
//
// Exit codes: 0 all verdicts pass, 1 a quantitative verdict failed,
// 2 input or schema error.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logpoly/geometry.hpp"
#include "logpoly/identity_suite.hpp"
#include "logpoly/report.hpp"
#include "logpoly/spec_io.hpp"

#ifndef LOGPOLY_VERSION
#define LOGPOLY_VERSION "0.0.0"
#endif

namespace {

using logpoly::GridParams;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

const std::string kVersion = std::string("logpoly ") + LOGPOLY_VERSION;

bool use_color() {
  return std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) != 0;
}

void diagnostic(const std::string& level, const std::string& msg) {
  if (use_color()) {
    const char* color = level == "error" ? "\033[31m" : "\033[33m";
    std::cerr << color << level << ":\033[0m " << msg << '\n';
  } else {
    std::cerr << level << ": " << msg << '\n';
  }
}

unsigned thread_hint() {
  const char* env = std::getenv("LOGPOLY_THREADS");
  if (!env) return 1;
  try {
    const long n = std::stol(env);
    return n > 0 ? static_cast<unsigned>(n) : 1u;
  } catch (...) {
    return 1;
  }
}

struct Options {
  std::string spec_path;
  std::string out_dir;
  GridParams grid;
  bool r_max_set = false;
  double tol = logpoly::kIndicatorTol;
  std::uint64_t seed = 7;
  int trials = 100;
  bool random = false;
  std::string quantity = "convex";
  std::string target = "logF";
  std::vector<double> radii;
};

logpoly::MappingSpecFile load_spec(const Options& o) {
  if (o.spec_path.empty()) throw logpoly::SchemaError("--spec FILE is required");
  return logpoly::load_spec_file(o.spec_path);
}

logpoly::BiSeries target_series(const logpoly::MappingSpecFile& spec, const std::string& target) {
  if (target == "logF") return spec.logF();
  if (target == "logG") return spec.logG();
  throw logpoly::SchemaError("unknown target '" + target + "' (expected logF or logG)");
}

logpoly::ScanGrid make_grid(const GridParams& g) {
  try {
    return logpoly::ScanGrid::uniform(g.r_min, g.r_max, g.r_step, g.angles);
  } catch (const logpoly::PreconditionError& e) {
    throw logpoly::SchemaError(std::string("grid: ") + e.what());
  }
}

std::filesystem::path prepare_out(const Options& o) {
  std::filesystem::path dir = o.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void emit(const json& summary, const Options& o, const std::string& file) {
  const std::string text = summary.dump(2) + "\n";
  std::cout << text;
  if (!o.out_dir.empty()) logpoly::write_atomic(prepare_out(o) / file, text);
}

// ---------------------------------------------------------------------------

int cmd_check_identities(const Options& o) {
  logpoly::IdentitySuiteOptions opts;
  opts.seed = o.seed;
  opts.trials = o.trials;
  if (!o.random) {
    if (o.spec_path.empty()) throw logpoly::SchemaError("pass --spec FILE or --random");
    opts.spec = load_spec(o);
  }
  const logpoly::IdentitySuiteResult res = logpoly::run_identity_suite(opts);
  json summary = {{"command", "check-identities"},
                  {"verdict", res.all_pass() ? "pass" : "fail"},
                  {"seed", o.seed},
                  {"trials", o.trials},
                  {"mode", o.random ? "random" : "spec"},
                  {"identities", res.to_json()},
                  {"version", kVersion}};
  emit(summary, o, "identities.json");
  if (const auto* worst = res.worst_failure()) {
    diagnostic("error", worst->name + " exceeded tolerance: max error " +
                            logpoly::format_double(worst->max_error) + " > " +
                            logpoly::format_double(worst->tolerance) + " (" + worst->worst_case + ")");
    return kExitFail;
  }
  return kExitPass;
}

int cmd_scan(const Options& o) {
  const auto spec = load_spec(o);
  logpoly::Quantity q;
  if (o.quantity == "starlike") {
    q = logpoly::Quantity::starlike;
  } else if (o.quantity == "convex") {
    q = logpoly::Quantity::convex;
  } else if (o.quantity == "jacobian") {
    q = logpoly::Quantity::jacobian;
  } else {
    throw logpoly::SchemaError("unknown quantity '" + o.quantity + "'");
  }
  const logpoly::ScanGrid grid = make_grid(o.grid);
  const logpoly::ScanReport rep =
      logpoly::scan_indicator(target_series(spec, o.target), q, grid, o.tol, thread_hint());
  json summary = logpoly::scan_summary_json("scan", rep, o.grid, kVersion);
  summary["target"] = o.target;
  if (!o.out_dir.empty()) {
    logpoly::write_atomic(prepare_out(o) / ("scan_" + o.quantity + ".csv"), logpoly::scan_csv(rep));
  }
  emit(summary, o, "scan_" + o.quantity + ".json");
  if (!rep.skipped.empty()) {
    diagnostic("warning", std::to_string(rep.skipped.size()) + " singular grid points skipped");
  }
  return rep.verdict == logpoly::Verdict::positive ? kExitPass : kExitFail;
}

int cmd_goodman_saff(const Options& o) {
  const auto spec = load_spec(o);
  const logpoly::LPHGSpec lphg = spec.lphg();
  GridParams params = o.grid;
  if (!o.r_max_set) params.r_max = logpoly::kGoodmanSaffRadius;
  const logpoly::ScanGrid grid = make_grid(params);
  const auto capped = grid.radii_up_to(logpoly::kGoodmanSaffRadius);
  if (capped.empty()) throw logpoly::SchemaError("grid has no radius <= sqrt(2)-1");

  const unsigned threads = thread_hint();
  const logpoly::GoodmanSaffReport rep = logpoly::goodman_saff_scan(lphg, grid, threads);
  const logpoly::ScanGrid capped_grid(capped, grid.t_samples());
  const logpoly::ScanReport scan = logpoly::scan_indicator(
      logpoly::assemble_logF(lphg), logpoly::Quantity::convex, capped_grid, logpoly::kIndicatorTol, threads);

  json per_radius = json::array();
  for (const auto& m : rep.per_radius) {
    per_radius.push_back({{"r", m.r}, {"min", m.min_value}, {"argmin_t", m.argmin_t}, {"skipped", m.skipped}});
  }
  json skipped = json::array();
  for (const auto& s : rep.skipped) skipped.push_back({s.r, s.t});
  GridParams capped_params = params;
  capped_params.r_max = std::min(params.r_max, logpoly::kGoodmanSaffRadius);
  json summary = {
      {"command", "goodman-saff"},
      {"verdict", logpoly::to_string(rep.verdict)},
      {"min", scan.min_value},
      {"argmin_r", scan.argmin_r},
      {"argmin_t", scan.argmin_t},
      {"tol", logpoly::kIndicatorTol},
      {"grid", logpoly::grid_json(capped_params, capped_grid)},
      {"radius_cap", logpoly::kGoodmanSaffRadius},
      {"hypotheses",
       {{"f_h_constant", rep.f_h_constant},
        {"logG_convex_on_grid", rep.logG_convex_on_grid},
        {"logG_convex_min", rep.logG_convex_min},
        {"logG_univalence_not_falsified", rep.logG_univalence_not_falsified},
        {"nonvanishing", rep.nonvanishing},
        {"met", rep.hypotheses_met},
        {"hypothesis_grid", logpoly::grid_json(params, grid)}}},
      {"logF_univalence_not_falsified", rep.logF_univalence_not_falsified},
      {"per_radius", per_radius},
      {"skipped", skipped},
      {"version", kVersion}};
  if (!o.out_dir.empty()) {
    logpoly::write_atomic(prepare_out(o) / "goodman_saff.csv", logpoly::scan_csv(scan));
  }
  emit(summary, o, "goodman_saff.json");
  if (rep.verdict == logpoly::GoodmanSaffVerdict::hypotheses_unmet) {
    diagnostic("warning", "hypotheses unmet; scan emitted for inspection");
  }
  return rep.verdict == logpoly::GoodmanSaffVerdict::pass ? kExitPass : kExitFail;
}

int cmd_render(const Options& o) {
  const auto spec = load_spec(o);
  const logpoly::BiSeries u = target_series(spec, o.target);
  const std::vector<double> radii = o.radii.empty() ? std::vector<double>{0.25, 0.5, 0.75} : o.radii;
  const auto dir = prepare_out(o);
  json files = json::array();
  for (double r : radii) {
    logpoly::BoundaryCurve curve;
    try {
      curve = logpoly::boundary_curve(u, r, o.grid.angles);
    } catch (const logpoly::PreconditionError& e) {
      throw logpoly::SchemaError(std::string("render: ") + e.what());
    }
    if (curve.degenerate()) {
      diagnostic("warning", "degenerate curve at r=" + logpoly::format_double(r) + " skipped");
      continue;
    }
    const std::string name = "render_" + o.target + "_r" + logpoly::format_double(r) + ".svg";
    logpoly::write_atomic(dir / name,
                          logpoly::curve_svg(curve, o.target + "  r = " + logpoly::format_double(r), kVersion));
    files.push_back(name);
  }
  json summary = {{"command", "render"},
                  {"target", o.target},
                  {"angles", o.grid.angles},
                  {"files", files},
                  {"version", kVersion}};
  std::cout << summary.dump(2) << '\n';
  return kExitPass;
}

int cmd_univalence(const Options& o) {
  const auto spec = load_spec(o);
  const logpoly::ScanGrid grid = make_grid(o.grid);
  const logpoly::UnivalenceReport rep =
      logpoly::univalence_scan(target_series(spec, o.target), grid, thread_hint());
  json radii = json::array();
  std::optional<json> witness;
  for (const auto& r : rep.radii) {
    json row = {{"r", r.r},
                {"simple", r.simple},
                {"degenerate", r.degenerate},
                {"min_winding", r.min_winding},
                {"max_winding", r.max_winding},
                {"falsified", r.falsified}};
    if (r.crossing) row["crossing"] = {r.crossing->first, r.crossing->second};
    if (r.witness_probe) row["witness_probe"] = {r.witness_probe->re(), r.witness_probe->im()};
    if (r.falsified && !witness) witness = row;
    radii.push_back(row);
  }
  json summary = {{"command", "univalence"},
                  {"target", o.target},
                  {"verdict", rep.not_falsified ? "not-falsified" : "falsified"},
                  {"grid", logpoly::grid_json(o.grid, grid)},
                  {"first_witness", witness.value_or(json(nullptr))},
                  {"radii", radii},
                  {"version", kVersion}};
  emit(summary, o, "univalence.json");
  return rep.not_falsified ? kExitPass : kExitFail;
}

void add_grid_flags(CLI::App* sub, Options& o) {
  sub->add_option("--r-min", o.grid.r_min, "smallest radius")->capture_default_str();
  sub->add_option_function<double>(
         "--r-max", [&o](double v) { o.grid.r_max = v; o.r_max_set = true; }, "largest radius");
  sub->add_option("--r-step", o.grid.r_step, "radius step")->capture_default_str();
  sub->add_option("--angles", o.grid.angles, "angles per circle (>= 64)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-polyharmonic mappings: identity checks, indicator scans, figures"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* identities = app.add_subcommand("check-identities", "run the identity suite");
  identities->add_option("--spec", o.spec_path, "mapping spec JSON");
  identities->add_flag("--random", o.random, "use seeded random instances");
  identities->add_option("--seed", o.seed, "random seed")->capture_default_str();
  identities->add_option("--trials", o.trials, "trials per identity")->capture_default_str();
  identities->add_option("--out", o.out_dir, "output directory");

  auto* scan = app.add_subcommand("scan", "scan an indicator over a polar grid");
  scan->add_option("--spec", o.spec_path, "mapping spec JSON")->required();
  scan->add_option("--quantity", o.quantity, "starlike | convex | jacobian")
      ->check(CLI::IsMember({"starlike", "convex", "jacobian"}))
      ->capture_default_str();
  scan->add_option("--target", o.target, "logF | logG")->capture_default_str();
  scan->add_option("--tol", o.tol, "verdict tolerance")->capture_default_str();
  scan->add_option("--out", o.out_dir, "output directory");
  add_grid_flags(scan, o);

  auto* gs = app.add_subcommand("goodman-saff", "subdisk convexity up to sqrt(2)-1");
  gs->add_option("--spec", o.spec_path, "mapping spec JSON")->required();
  gs->add_option("--out", o.out_dir, "output directory");
  add_grid_flags(gs, o);

  auto* render = app.add_subcommand("render", "SVG boundary curves");
  render->add_option("--spec", o.spec_path, "mapping spec JSON")->required();
  render->add_option("--target", o.target, "logF | logG")->capture_default_str();
  render->add_option("--radii", o.radii, "radii to draw")->delimiter(',');
  render->add_option("--angles", o.grid.angles, "samples per curve")->capture_default_str();
  render->add_option("--out", o.out_dir, "output directory");

  auto* univ = app.add_subcommand("univalence", "simplicity and winding screening");
  univ->add_option("--spec", o.spec_path, "mapping spec JSON")->required();
  univ->add_option("--target", o.target, "logF | logG")->capture_default_str();
  univ->add_option("--out", o.out_dir, "output directory");
  add_grid_flags(univ, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*identities) return cmd_check_identities(o);
    if (*scan) return cmd_scan(o);
    if (*gs) return cmd_goodman_saff(o);
    if (*render) return cmd_render(o);
    if (*univ) return cmd_univalence(o);
  } catch (const logpoly::SchemaError& e) {
    diagnostic("error", e.what());
    return kExitInput;
  } catch (const logpoly::DegeneracyError& e) {
    diagnostic("error", e.what());
    return kExitFail;
  } catch (const logpoly::Error& e) {
    diagnostic("error", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    diagnostic("error", e.what());
    return kExitInput;
  }
  return kExitInput;
}
