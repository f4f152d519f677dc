#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgap/cli.hpp"
#include "qgap/csvio.hpp"

using namespace qgap;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qgap_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// rows of a CSV body, skipping the schema tag and header
std::vector<std::vector<std::string>> csv_rows(const std::string& body) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(body);
  std::string line;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

} // namespace

TEST_SUITE("cli") {
  TEST_CASE("spectrum: odd chain ground degeneracy at Gamma=0") {
    const fs::path dir = fresh_dir("spectrum_chain");
    const int rc = cli::run({"spectrum", "--model", "chain", "--L", "5", "--J", "1", "--gamma",
                             "0", "--m", "12", "--out", dir.string()});
    REQUIRE(rc == 0);
    const auto rows = csv_rows(slurp(dir / "qgap_spectrum.csv"));
    REQUIRE(rows.size() == 12);
    for (int i = 0; i < 10; ++i) CHECK(std::stod(rows[static_cast<std::size_t>(i)][4]) ==
                                       doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(std::stod(rows[10][4]) > -3.0 + 1e-9);
  }

  TEST_CASE("spectrum: staggered dimer sector is a single zero level") {
    const fs::path dir = fresh_dir("spectrum_dimer");
    const int rc = cli::run({"spectrum", "--model", "dimer", "--L", "8", "--U", "1", "--gamma",
                             "0", "--sector", "w=1", "--out", dir.string()});
    REQUIRE(rc == 0);
    const auto rows = csv_rows(slurp(dir / "qgap_spectrum.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][4]) == doctest::Approx(0.0));
  }

  TEST_CASE("missing required flag: nonzero exit, no partial output") {
    const fs::path dir = fresh_dir("missing_flag");
    const int rc = cli::run({"spectrum", "--model", "chain", "--L", "5", "--out", dir.string()});
    CHECK(rc == 2);
    CHECK_FALSE(fs::exists(dir / "qgap_spectrum.csv"));
    CHECK_FALSE(fs::exists(dir / "qgap_manifest.json"));
  }

  TEST_CASE("invalid combination: momentum basis with staggered field") {
    const fs::path dir = fresh_dir("bad_combo");
    const int rc = cli::run({"spectrum", "--model", "chain", "--L", "6", "--J", "1", "--h", "0.2",
                             "--gamma", "0.5", "--basis", "momentum", "--out", dir.string()});
    CHECK(rc == 2);
    CHECK_FALSE(fs::exists(dir / "qgap_spectrum.csv"));
  }

  TEST_CASE("gapscaling rejects fewer than 4 sizes") {
    const fs::path dir = fresh_dir("gapscaling_short");
    const int rc = cli::run({"gapscaling", "--K", "3.0", "--L", "8", "--out", dir.string()});
    CHECK(rc == 2);
  }

  TEST_CASE("reruns are byte-identical apart from the manifest timestamp") {
    const fs::path d1 = fresh_dir("determinism_1");
    const fs::path d2 = fresh_dir("determinism_2");
    for (const auto& dir : {d1, d2}) {
      const int rc = cli::run({"fermion", "--L", "6", "8", "10", "--J", "-1", "--gamma", "0.4",
                               "--out", dir.string()});
      REQUIRE(rc == 0);
    }
    CHECK(slurp(d1 / "fermion_fermion.csv") == slurp(d2 / "fermion_fermion.csv"));

    RunManifest m1 = RunManifest::from_json(slurp(d1 / "fermion_manifest.json"));
    RunManifest m2 = RunManifest::from_json(slurp(d2 / "fermion_manifest.json"));
    CHECK(m1.config_hash == m2.config_hash);
    CHECK(m1.parameters == m2.parameters);
    CHECK(m1.outputs == m2.outputs);
  }

  TEST_CASE("manifest round-trips losslessly") {
    const fs::path dir = fresh_dir("manifest_roundtrip");
    REQUIRE(cli::run({"dimer", "--L", "4", "6", "--out", dir.string()}) == 0);
    const std::string text = slurp(dir / "dimer_manifest.json");
    const RunManifest m = RunManifest::from_json(text);
    const RunManifest again = RunManifest::from_json(m.to_json());
    CHECK(m.command == again.command);
    CHECK(m.version == again.version);
    CHECK(m.config_hash == again.config_hash);
    CHECK(m.parameters == again.parameters);
    CHECK(m.wall_times_seconds == again.wall_times_seconds);
    CHECK(m.outputs == again.outputs);
    CHECK(m.config_hash == m.compute_config_hash());
  }

  TEST_CASE("config file supplies defaults, flags override") {
    const fs::path dir = fresh_dir("config");
    const fs::path cfg = dir / "run.ini";
    {
      std::ofstream f(cfg);
      f << "[fermion]\nL=4 6\nJ=-1\ngamma=0.7\n";
    }
    REQUIRE(cli::run({"--config", cfg.string(), "fermion", "--gamma", "0.5", "--out",
                      dir.string()}) == 0);
    const auto rows = csv_rows(slurp(dir / "fermion_fermion.csv"));
    REQUIRE(rows.size() == 2); // L list from config
    CHECK(std::stod(rows[0][2]) == doctest::Approx(0.5)); // flag wins over config
  }

  TEST_CASE("dimer command emits counts and crossing data") {
    const fs::path dir = fresh_dir("dimer_cmd");
    REQUIRE(cli::run({"dimer", "--L", "4", "5", "8", "--out", dir.string()}) == 0);
    const auto rows = csv_rows(slurp(dir / "dimer_dimer.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == "7");  // w=0 count at L=4
    CHECK(rows[0][2] == "1");  // staggered sectors
    CHECK(rows[0][3] == "1");
    CHECK(rows[1][2] == "0");  // odd L: no staggered states
    const double gamma_c = std::stod(rows[2][5]);
    CHECK(gamma_c > 1.5);
    CHECK(gamma_c < 1.8);
  }

  TEST_CASE("anneal command writes replica rows and summary") {
    const fs::path dir = fresh_dir("anneal_cmd");
    REQUIRE(cli::run({"anneal", "--L", "8", "10", "12", "16", "--K", "5", "--sweeps", "2000",
                      "--seeds", "10", "--out", dir.string()}) == 0);
    const auto reps = csv_rows(slurp(dir / "anneal_replicas.csv"));
    CHECK(reps.size() == 40);
    const auto summary = csv_rows(slurp(dir / "anneal_summary.csv"));
    CHECK(summary.size() == 4);
  }

  TEST_CASE("unknown model is a usage error") {
    CHECK(cli::run({"spectrum", "--model", "cube", "--L", "4", "--gamma", "1"}) == 2);
  }
}
