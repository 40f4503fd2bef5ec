#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "rotorbell/errors.hpp"
#include "rotorbell/io.hpp"

using namespace rotorbell;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rotorbell_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("12-digit formatting") {
  CHECK(io::format12(0.1) == "0.1");
  CHECK(io::format12(2 * std::sqrt(2.0)) == "2.82842712475");
  CHECK(io::format12(std::nan("")) == "nan");
  CHECK(io::round12(1.0 / 3.0) == std::strtod("0.333333333333", nullptr));
  for (double x : {1.0 / 7.0, -2.5e-13, 123456.789012345, 0.0}) {
    CHECK(io::round12(io::round12(x)) == io::round12(x));
    CHECK(std::abs(io::round12(x) - x) <= 5e-12 * std::abs(x));
  }
}

TEST_CASE("scan files round-trip") {
  auto c = ScanConfig::symmetric(2, 0, BellKind::B1, 12, true);
  c.j_max_right = 3;
  c.m_right = -1;
  const auto result = scan(c);
  const auto csv = scratch("rt.csv");
  const auto json = scratch("rt.json");
  io::write_beta_csv(csv, result);
  io::write_summary_json(json, result);

  const auto back = io::read_scan(csv, json);
  CHECK(back.config.kind == c.kind);
  CHECK(back.config.j_max_left == 2);
  CHECK(back.config.j_max_right == 3);
  CHECK(back.config.m_right == -1);
  CHECK(back.config.grid_n == 12);
  CHECK(back.config.refine);
  REQUIRE(back.beta.size() == result.beta.size());
  for (std::size_t i = 0; i < back.beta.size(); ++i) {
    CHECK(back.beta[i] == io::round12(result.beta[i]));
  }
  CHECK(back.argmax.beta == io::round12(result.argmax.beta));
  CHECK(back.argmax.t1 == io::round12(result.argmax.t1));
  CHECK(back.coarse.t2 == io::round12(result.coarse.t2));
  CHECK(back.local_bound == io::round12(result.local_bound));
  CHECK(back.relative_violation == io::round12(result.relative_violation));
  CHECK(back.relative_violation_infinite == io::round12(result.relative_violation_infinite));
  CHECK(back.runtime_ms == result.runtime_ms);

  // Writing the re-read result reproduces the files byte for byte.
  const auto csv2 = scratch("rt2.csv");
  const auto json2 = scratch("rt2.json");
  io::write_beta_csv(csv2, back);
  io::write_summary_json(json2, back);
  CHECK(slurp(csv) == slurp(csv2));
  CHECK(slurp(json) == slurp(json2));
}

TEST_CASE("summary keys are fixed") {
  const auto r = scan(ScanConfig::symmetric(1, 0, BellKind::B2, 8));
  const auto j = io::summary_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expect = {
      "b",          "b_infinite", "beta_max",    "coarse_beta_max", "coarse_t1", "coarse_t2",
      "grid_n",     "j_max_left", "j_max_right", "local_bound",     "m_left",    "m_right",
      "op",         "refine",     "runtime_ms",  "t1_max",          "t2_max"};
  CHECK(keys == expect);
  CHECK(j["op"] == "b2");
}

TEST_CASE("malformed inputs are I/O errors") {
  const auto bad = scratch("bad.csv");
  io::write_text(bad, "x,y,z\n");
  CHECK_THROWS_AS(io::read_beta_csv(bad, 2), IoError);
  io::write_text(bad, "t1,t2,beta\n0,0,1\n");
  CHECK_THROWS_AS(io::read_beta_csv(bad, 2), IoError);
  io::write_text(bad, "t1,t2,beta\n0,0.5,1\n0,0,1\n0.5,0,1\n0.5,0.5,1\n");
  CHECK_THROWS_AS(io::read_beta_csv(bad, 2), IoError);
  CHECK_THROWS_AS(io::read_beta_csv(scratch("missing.csv"), 2), IoError);
  const auto json = scratch("bad.json");
  io::write_text(json, "{not json");
  CHECK_THROWS_AS(io::read_scan(bad, json), IoError);
}

TEST_CASE("graymap raster") {
  const auto r = scan(ScanConfig::symmetric(1, 0, BellKind::B1, 16));
  const auto path = scratch("map.pgm");
  io::write_pgm(path, r);
  const std::string data = slurp(path);
  const std::string header = "P5\n16 16\n255\n";
  REQUIRE(data.size() == header.size() + 256);
  CHECK(data.substr(0, header.size()) == header);
  const auto* px = reinterpret_cast<const unsigned char*>(data.data() + header.size());
  // The peak at (1/4, 1/4) is white; the global minimum is black.
  CHECK(px[4 * 16 + 4] == 255);
  CHECK(*std::min_element(px, px + 256) == 0);
}

TEST_CASE("sweep, orient and manifest outputs") {
  SweepRow row;
  row.j_max = 3;
  row.beta_max = 1.5;
  row.noise_threshold = std::nan("");
  const auto sweep = scratch("sweep.csv");
  io::write_sweep_csv(sweep, {row});
  std::istringstream lines(slurp(sweep));
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header ==
        "j_max,beta_max,bound,b,b_infinite,noise_threshold,normalized_entropy,pop_plus,pop_minus");
  CHECK(first == "3,1.5,0,0,0,nan,0,0,0");

  const RotorSubspace sub(1, 0);
  const auto orient = scratch("orient.csv");
  io::write_orient_csv(orient, sub, orientation_eigensystem(sub));
  CHECK(slurp(orient) ==
        "index,lambda,j,plus_re,plus_im,minus_re,minus_im\n"
        "0,-0.57735026919,0,0.707106781187,0,0.707106781187,0\n"
        "1,0.57735026919,1,0.707106781187,0,-0.707106781187,0\n");

  io::RunManifest m;
  m.command = "scan";
  m.config = {{"grid_n", 10}};
  m.timestamp = io::utc_timestamp(std::chrono::system_clock::time_point{});
  m.outputs = {"a.csv"};
  CHECK(m.timestamp == "1970-01-01T00:00:00Z");
  const auto manifest = scratch("m.manifest.json");
  io::write_manifest(manifest, m);
  const auto parsed = nlohmann::json::parse(slurp(manifest));
  CHECK(parsed["command"] == "scan");
  CHECK(parsed["version"] == io::kVersion);
  CHECK(parsed["outputs"].size() == 1);
}

TEST_CASE("unwritable path") {
  CHECK_THROWS_AS(io::write_text("/proc/rotorbell/nope.txt", "x"), IoError);
}
