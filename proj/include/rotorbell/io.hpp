#pragma once

// File formats written by the command-line tool. Numbers are printed with 12
// significant digits; readers parse them back to the same doubles.

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "rotorbell/scan.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell::io {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "ROTORBELL_OUT_DIR";

// Value as it appears in the files: rounded to 12 significant digits.
double round12(double x);
std::string format12(double x);

std::filesystem::path default_out_dir();

// t1,t2,beta with one row per grid point, row-major in (t1, t2).
void write_beta_csv(const std::filesystem::path& path, const ScanResult& result);
std::vector<double> read_beta_csv(const std::filesystem::path& path, int grid_n);

nlohmann::json config_json(const ScanConfig& config);
ScanConfig config_from_json(const nlohmann::json& j);

// Fixed keys: op, j_max_left, j_max_right, m_left, m_right, grid_n, refine,
// beta_max, t1_max, t2_max, coarse_beta_max, coarse_t1, coarse_t2,
// local_bound, b, b_infinite, runtime_ms.
nlohmann::json summary_json(const ScanResult& result);
void write_summary_json(const std::filesystem::path& path, const ScanResult& result);

// Rebuilds a ScanResult from a beta-map CSV and its JSON summary.
ScanResult read_scan(const std::filesystem::path& csv_path,
                     const std::filesystem::path& json_path);

// Binary 8-bit graymap, row i <-> t1 = i/n, column k <-> t2 = k/n, scaled
// linearly from the grid minimum (black) to maximum (white).
void write_pgm(const std::filesystem::path& path, const ScanResult& result);

inline const std::vector<std::string> kSweepColumns = {
    "j_max", "beta_max", "bound", "b", "b_infinite", "noise_threshold",
    "normalized_entropy", "pop_plus", "pop_minus"};

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

// index,lambda,j,plus_re,plus_im,minus_re,minus_im: eigenvalue index n with
// lambda_n ascending, and the amplitude of |j,m> in |+> and |->.
void write_orient_csv(const std::filesystem::path& path, const RotorSubspace& subspace,
                      const EigenDecomposition& eig);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::string version = kVersion;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> outputs;
  std::int64_t runtime_ms = 0;

  nlohmann::json to_json() const;
};

std::string utc_timestamp(std::chrono::system_clock::time_point when);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rotorbell::io
