#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nls/io.hpp"
#include "nls/rng.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = NLSPHERE_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nlsphere_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args, const fs::path& cwd) {
  const std::string cmd = "cd " + cwd.string() + " && " + cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("registry lists every command") {
  TempDir dir;
  const std::string cmd = "cd " + dir.path.string() + " && " + cli + " list > registry.txt 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string reg = slurp(dir.path / "registry.txt");
  for (const char* name : {"evolve", "homsub", "picard", "verify-estimates", "resonance-audit",
                           "instability", "from-manifest"})
    CHECK(reg.find(name) != std::string::npos);
}

TEST_CASE("seeded runs are byte-identical") {
  TempDir dir;
  REQUIRE(run("evolve --K 10 --dt 1e-3 --T 0.1 --seed 7 --out a", dir.path) == 0);
  REQUIRE(run("evolve --K 10 --dt 1e-3 --T 0.1 --seed 7 --out b", dir.path) == 0);
  CHECK(slurp(dir.path / "a.results.json") == slurp(dir.path / "b.results.json"));
  CHECK(slurp(dir.path / "a.series.csv") == slurp(dir.path / "b.series.csv"));
  // a different seed must change the results
  REQUIRE(run("evolve --K 10 --dt 1e-3 --T 0.1 --seed 8 --out c", dir.path) == 0);
  CHECK(slurp(dir.path / "a.results.json") != slurp(dir.path / "c.results.json"));

  // same discipline across the other seeded commands
  for (const std::string cmd : {std::string("picard --K 6 --r 0.05 --T 0.1 --seed 3"),
                                std::string("homsub --K 6 --K-keep 6 --T 0.1 --seed 3")}) {
    REQUIRE(run(cmd + " --out r1", dir.path) == 0);
    REQUIRE(run(cmd + " --out r2", dir.path) == 0);
    CHECK(slurp(dir.path / "r1.results.json") == slurp(dir.path / "r2.results.json"));
  }
}

TEST_CASE("manifest replay reproduces results") {
  TempDir dir;
  REQUIRE(run("resonance-audit --K 12 --delta 0.5 --out orig", dir.path) == 0);
  REQUIRE(run("from-manifest orig.manifest.json --out replay", dir.path) == 0);
  CHECK(slurp(dir.path / "orig.results.json") == slurp(dir.path / "replay.results.json"));

  // the manifest echoes the parameters it ran with
  nls::Json manifest;
  std::ifstream(dir.path / "orig.manifest.json") >> manifest;
  CHECK(manifest.at("command") == "resonance-audit");
  CHECK(manifest.at("parameters").at("K") == 12);
  CHECK(manifest.contains("wall_time_s"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  SUBCASE("config errors exit with 2") {
    CHECK(run("evolve --no-such-flag", dir.path) == 2);
    CHECK(run("frobnicate", dir.path) == 2);
  }
  SUBCASE("numerical guard exits with 3") {
    // data far above the contraction threshold: the iteration must report
    // non-contraction
    CHECK(run("picard --K 6 --r 3.0 --T 1.0 --seed 2 --out diverged", dir.path) == 3);
  }
  SUBCASE("success exits with 0") {
    CHECK(run("picard --K 6 --r 0.05 --T 0.1 --seed 2 --out ok", dir.path) == 0);
  }
}

TEST_CASE("evolve writes the documented artifact set") {
  TempDir dir;
  REQUIRE(run("evolve --K 8 --dt 1e-3 --T 0.05 --seed 3 --out art", dir.path) == 0);
  for (const char* suffix : {".manifest.json", ".results.json", ".series.csv"})
    CHECK(fs::exists(dir.path / ("art" + std::string(suffix))));

  nls::Json results;
  std::ifstream(dir.path / "art.results.json") >> results;
  CHECK(results.at("run").at("K") == 8);
  CHECK(results.at("run").at("mass").size() == results.at("run").at("times").size());
  CHECK(results.contains("apriori"));

  const std::string csv = slurp(dir.path / "art.series.csv");
  CHECK(csv.rfind("t,mass,energy,band_0", 0) == 0);
}

TEST_CASE("instability command emits growing separation curves") {
  TempDir dir;
  REQUIRE(run("instability --k 4,8 --s 0.15 --T 0.05 --dt 1e-3 --out inst", dir.path) == 0);
  nls::Json results;
  std::ifstream(dir.path / "inst.results.json") >> results;
  const auto& per_k = results.at("per_k");
  REQUIRE(per_k.size() == 2);
  for (const auto& entry : per_k) {
    CHECK(entry.at("initial_separation").get<double>() > 0.0);
    CHECK(entry.at("final_amplification").get<double>() > 0.0);
  }
}

TEST_CASE("run record serialization round trips through JSON") {
  nls::EvolutionConfig cfg;
  cfg.K = 6;
  cfg.T = 0.02;
  cfg.dt = 1e-3;
  nls::Rng rng(5);
  nls::SpectralField u0(6);
  for (Eigen::Index i = 0; i < u0.size(); ++i) u0.coeffs()[i] = 0.1 * rng.cnormal();
  const nls::RunRecord rec = nls::evolve(u0, cfg);
  const nls::Json j = nls::to_json(rec);
  CHECK(j.at("K") == 6);
  CHECK(j.at("times").size() == rec.times.size());
  CHECK(j.at("band_norms").size() == 7);
  std::ostringstream csv;
  nls::write_run_csv(csv, rec);
  int lines = 0;
  for (const char ch : csv.str())
    if (ch == '\n') ++lines;
  CHECK(lines == static_cast<int>(rec.times.size()) + 1);
}
