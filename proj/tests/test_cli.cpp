#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rotorbell/cli.hpp"
#include "rotorbell/errors.hpp"
#include "rotorbell/io.hpp"

using namespace rotorbell;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rotorbell_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("j_max list parsing") {
  CHECK(cli::parse_j_max_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(cli::parse_j_max_list("2,5,7") == std::vector<int>{2, 5, 7});
  CHECK(cli::parse_j_max_list("3") == std::vector<int>{3});
  CHECK_THROWS_AS(cli::parse_j_max_list("4..1"), UsageError);
  CHECK_THROWS_AS(cli::parse_j_max_list("a..b"), UsageError);
  CHECK_THROWS_AS(cli::parse_j_max_list("1,x"), UsageError);
}

TEST_CASE("orient") {
  const auto dir = fresh_dir("orient");
  auto r = run({"orient", "--jmax", "1", "--m", "0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda_max = 0.57735026919") != std::string::npos);
  CHECK(fs::exists(dir / "orient_j1_m0.csv"));
  const auto manifest = read_json(dir / "orient_j1_m0.manifest.json");
  CHECK(manifest["outputs"].size() == 1);
  CHECK(manifest["command"] == "orient");

  r = run({"orient", "--jmax", "0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("eigenvalues: 0\n") != std::string::npos);

  r = run({"orient", "--jmax", "5", "--out", dir.string()});
  CHECK(r.out.find("lambda_max = 0.932469514203") != std::string::npos);

  CHECK(run({"orient", "--jmax", "2", "--m", "3", "--out", dir.string()}).code == cli::kUsage);
  CHECK(run({"orient"}).code == cli::kUsage);
}

TEST_CASE("scan writes CSV, JSON summary, raster and a manifest") {
  const auto dir = fresh_dir("scan");
  const auto r = run({"scan", "--op", "b1", "--jmax", "1", "--grid", "200", "--refine",
                      "--format", "csv,json,pgm", "--threads", "2", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const std::string stem = "scan_b1_j1-1_m0_0_g200_refined";
  const auto summary = read_json(dir / (stem + ".json"));
  CHECK(summary["beta_max"].get<double>() == doctest::Approx(0.9428090416).epsilon(1e-9));
  CHECK(summary["b"].get<double>() == doctest::Approx(0.4142135624).epsilon(1e-8));
  CHECK(summary.contains("b_infinite"));
  CHECK(summary.contains("local_bound"));
  CHECK(fs::file_size(dir / (stem + ".pgm")) > 200u * 200u);

  const auto manifest = read_json(dir / (stem + ".manifest.json"));
  CHECK(manifest["outputs"].size() == 3);
  CHECK(manifest["config"]["grid_n"] == 200);
  CHECK(manifest["config"]["threads"] == 2);
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest.contains("runtime_ms"));

  // Each output file is listed by exactly one manifest in the directory.
  std::map<std::string, int> listed;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.ends_with(".manifest.json")) {
      const auto manifest_doc = read_json(entry.path());
      for (const auto& o : manifest_doc["outputs"]) listed[o.get<std::string>()]++;
    }
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.path().filename().string().ends_with(".manifest.json")) {
      CHECK(listed[entry.path().string()] == 1);
    }
  }

  const auto back = io::read_scan(dir / (stem + ".csv"), dir / (stem + ".json"));
  CHECK(back.config.grid_n == 200);
}

TEST_CASE("scan per-side flags and output directory from the environment") {
  const auto dir = fresh_dir("env");
  ::setenv(io::kOutDirEnv, dir.string().c_str(), 1);
  const auto r = run({"scan", "--op", "b2", "--jmax-left", "1", "--jmax-right", "2",
                      "--m-right", "1", "--grid", "8"});
  ::unsetenv(io::kOutDirEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "scan_b2_j1-2_m0_1_g8.csv"));
  CHECK(fs::exists(dir / "scan_b2_j1-2_m0_1_g8.json"));
}

TEST_CASE("scan usage and I/O errors") {
  CHECK(run({"scan", "--op", "b1"}).code == cli::kUsage);
  CHECK(run({"scan", "--op", "b7", "--jmax", "1"}).code == cli::kUsage);
  CHECK(run({"scan", "--jmax", "1", "--grid", "1"}).code == cli::kUsage);
  CHECK(run({"scan", "--jmax", "1", "--format", "png"}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  const auto r = run({"scan", "--jmax", "1", "--grid", "4", "--out", "/proc/rotorbell"});
  CHECK(r.code == cli::kIo);
  CHECK(r.err.find("I/O failure") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep") {
  const auto dir = fresh_dir("sweep");
  const auto r = run({"sweep", "--jmax", "1..2", "--grid", "40", "--out", dir.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(dir / "sweep_b1_m0_j1-2_g40.csv");
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  CHECK(header ==
        "j_max,beta_max,bound,b,b_infinite,noise_threshold,normalized_entropy,pop_plus,pop_minus");
  CHECK(row1.rfind("1,0.942809041", 0) == 0);
  CHECK(row1.find(",0.292893218") != std::string::npos);
  CHECK(fs::exists(dir / "sweep_b1_m0_j1-2_g40.manifest.json"));

  CHECK(run({"sweep", "--jmax", "1..13", "--out", dir.string()}).code == cli::kUsage);
  CHECK(run({"sweep", "--jmax", "0..2", "--out", dir.string()}).code == cli::kUsage);
}
