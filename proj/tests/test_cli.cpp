#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = LOGPOLY_CLI;
const std::string kFix = LOGPOLY_FIXTURES;

int run(const std::string& args, const fs::path& out_dir = {}) {
  std::string cmd = kCli + " " + args;
  if (!out_dir.empty()) cmd += " --out " + out_dir.string();
  cmd += " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("logpoly_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string fixture(const std::string& name) { return kFix + "/" + name; }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check-identities --random --trials 5") == 0);
  CHECK(run("goodman-saff --spec " + fixture("ellipse.json") + " --angles 128") == 0);
  CHECK(run("goodman-saff --spec " + fixture("nonconst_f.json") + " --angles 128") == 1);
  CHECK(run("scan --spec " + fixture("koebe.json") + " --quantity convex --angles 128") == 1);
  CHECK(run("scan --spec " + fixture("koebe.json") + " --quantity convex --r-max 0.25 --angles 128") == 0);
  CHECK(run("univalence --spec " + fixture("identity.json") + " --target logG --r-step 0.1 --angles 128") == 0);
  CHECK(run("univalence --spec " + fixture("z2.json") + " --target logG --r-step 0.1 --angles 128") == 1);
  CHECK(run("scan --spec " + fixture("malformed.json")) == 2);
  CHECK(run("scan --spec " + fixture("unknown_key.json")) == 2);
  CHECK(run("scan --spec " + fixture("does_not_exist.json")) == 2);
  CHECK(run("scan --spec " + fixture("ellipse.json") + " --angles 16") == 2);
  CHECK(run("scan --spec " + fixture("parts.json") + " --target logG") == 2);
}

TEST_CASE("scan writes a CSV row per grid point and a summary") {
  const fs::path d = fresh_dir("scan");
  REQUIRE(run("scan --spec " + fixture("ellipse.json") + " --quantity convex --r-step 0.1 --angles 64", d) == 0);
  std::ifstream csv(d / "scan_convex.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "r,t,value,flag");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 10 * 64);
  const auto summary = nlohmann::json::parse(slurp(d / "scan_convex.json"));
  CHECK(summary["verdict"] == "positive");
  CHECK(summary["quantity"] == "convex");
  CHECK(summary["grid"]["angles"] == 64);
  CHECK(std::abs(summary["min"].get<double>() - 0.6 / 1.4) < 1e-12);
  fs::remove_all(d);
}

TEST_CASE("render writes one SVG per radius") {
  const fs::path d = fresh_dir("render");
  REQUIRE(run("render --spec " + fixture("ellipse.json") + " --radii 0.2,0.4", d) == 0);
  CHECK(fs::exists(d / "render_logF_r0.2.svg"));
  CHECK(fs::exists(d / "render_logF_r0.4.svg"));
  CHECK(slurp(d / "render_logF_r0.2.svg").find("<polygon") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cmds = {
      {"scan --spec " + fixture("halfplane.json") + " --quantity starlike --r-step 0.05 --angles 128",
       {"scan_starlike.csv", "scan_starlike.json"}},
      {"goodman-saff --spec " + fixture("power_p2.json") + " --angles 128",
       {"goodman_saff.csv", "goodman_saff.json"}},
      {"check-identities --random --seed 3 --trials 5", {"identities.json"}},
  };
  for (const auto& [args, files] : cmds) {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const int first = run(args, a);
    CHECK(first != 2);
    CHECK(run(args, b) == first);
    for (const auto& f : files) {
      INFO(args << " " << f);
      CHECK(slurp(a / f) == slurp(b / f));
      CHECK_FALSE(slurp(a / f).empty());
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}
