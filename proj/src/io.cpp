#include "rotorbell/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "rotorbell/errors.hpp"

namespace rotorbell::io {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

double parse_double(const std::string& field, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str()) throw IoError("malformed number '" + field + "' in " + path.string());
  return v;
}

// JSON has no NaN; undefined values are written as null.
nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

fs::path default_out_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "rotorbell_out";
}

void write_beta_csv(const fs::path& path, const ScanResult& result) {
  auto out = open_out(path);
  const int n = result.config.grid_n;
  out << "t1,t2,beta\n";
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      out << format12(static_cast<double>(i) / n) << ',' << format12(static_cast<double>(k) / n)
          << ',' << format12(result.at(i, k)) << '\n';
    }
  }
  close_checked(out, path);
}

std::vector<double> read_beta_csv(const fs::path& path, int grid_n) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "t1,t2,beta") {
    throw IoError("unexpected header in " + path.string());
  }
  std::vector<double> beta;
  beta.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string t1, t2, b;
    if (!std::getline(row, t1, ',') || !std::getline(row, t2, ',') || !std::getline(row, b)) {
      throw IoError("malformed row '" + line + "' in " + path.string());
    }
    const std::size_t idx = beta.size();
    const double expect_t1 = round12(static_cast<double>(idx / grid_n) / grid_n);
    const double expect_t2 = round12(static_cast<double>(idx % grid_n) / grid_n);
    if (parse_double(t1, path) != expect_t1 || parse_double(t2, path) != expect_t2) {
      throw IoError("grid rows out of order in " + path.string());
    }
    beta.push_back(parse_double(b, path));
  }
  if (beta.size() != static_cast<std::size_t>(grid_n) * grid_n) {
    throw IoError("expected " + std::to_string(grid_n * grid_n) + " rows in " + path.string() +
                  ", found " + std::to_string(beta.size()));
  }
  return beta;
}

nlohmann::json config_json(const ScanConfig& c) {
  return {{"op", to_string(c.kind)},      {"j_max_left", c.j_max_left},
          {"j_max_right", c.j_max_right}, {"m_left", c.m_left},
          {"m_right", c.m_right},         {"grid_n", c.grid_n},
          {"refine", c.refine}};
}

ScanConfig config_from_json(const nlohmann::json& j) {
  ScanConfig c;
  c.kind = parse_bell_kind(j.at("op").get<std::string>());
  c.j_max_left = j.at("j_max_left").get<int>();
  c.j_max_right = j.at("j_max_right").get<int>();
  c.m_left = j.at("m_left").get<int>();
  c.m_right = j.at("m_right").get<int>();
  c.grid_n = j.at("grid_n").get<int>();
  c.refine = j.at("refine").get<bool>();
  return c;
}

nlohmann::json summary_json(const ScanResult& r) {
  nlohmann::json j = config_json(r.config);
  j["beta_max"] = number(r.argmax.beta);
  j["t1_max"] = number(r.argmax.t1);
  j["t2_max"] = number(r.argmax.t2);
  j["coarse_beta_max"] = number(r.coarse.beta);
  j["coarse_t1"] = number(r.coarse.t1);
  j["coarse_t2"] = number(r.coarse.t2);
  j["local_bound"] = number(r.local_bound);
  j["b"] = number(r.relative_violation);
  j["b_infinite"] = number(r.relative_violation_infinite);
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

void write_summary_json(const fs::path& path, const ScanResult& result) {
  write_text(path, summary_json(result).dump(2) + "\n");
}

ScanResult read_scan(const fs::path& csv_path, const fs::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open " + json_path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("invalid JSON in " + json_path.string() + ": " + e.what());
  }
  ScanResult r;
  r.config = config_from_json(j);
  r.beta = read_beta_csv(csv_path, r.config.grid_n);
  r.argmax = {number_from(j.at("t1_max")), number_from(j.at("t2_max")),
              number_from(j.at("beta_max"))};
  r.coarse = {number_from(j.at("coarse_t1")), number_from(j.at("coarse_t2")),
              number_from(j.at("coarse_beta_max"))};
  r.local_bound = number_from(j.at("local_bound"));
  r.relative_violation = number_from(j.at("b"));
  r.relative_violation_infinite = number_from(j.at("b_infinite"));
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  return r;
}

void write_pgm(const fs::path& path, const ScanResult& result) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  const int n = result.config.grid_n;
  const auto [lo_it, hi_it] = std::minmax_element(result.beta.begin(), result.beta.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  out << "P5\n" << n << ' ' << n << "\n255\n";
  std::vector<unsigned char> row(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double level = span > 0.0 ? (result.at(i, k) - lo) / span : 0.0;
      row[k] = static_cast<unsigned char>(std::lround(255.0 * level));
    }
    out.write(reinterpret_cast<const char*>(row.data()), n);
  }
  close_checked(out, path);
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < kSweepColumns.size(); ++c) {
    out << (c ? "," : "") << kSweepColumns[c];
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.j_max << ',' << format12(r.beta_max) << ',' << format12(r.bound) << ','
        << format12(r.b) << ',' << format12(r.b_infinite) << ',' << format12(r.noise_threshold)
        << ',' << format12(r.normalized_entropy) << ',' << format12(r.pop_plus) << ','
        << format12(r.pop_minus) << '\n';
  }
  close_checked(out, path);
}

void write_orient_csv(const fs::path& path, const RotorSubspace& subspace,
                      const EigenDecomposition& eig) {
  auto out = open_out(path);
  const Eigen::Index n = eig.eigenvalues.size();
  const auto plus = eig.eigenvectors.col(n - 1);
  const auto minus = eig.eigenvectors.col(0);
  out << "index,lambda,j,plus_re,plus_im,minus_re,minus_im\n";
  for (Eigen::Index k = 0; k < n; ++k) {
    out << k << ',' << format12(eig.eigenvalues[k]) << ',' << subspace.j_of(static_cast<int>(k))
        << ',' << format12(plus[k].real()) << ',' << format12(plus[k].imag()) << ','
        << format12(minus[k].real()) << ',' << format12(minus[k].imag()) << '\n';
  }
  close_checked(out, path);
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},     {"config", config},   {"version", version},
          {"timestamp", timestamp}, {"outputs", outputs}, {"runtime_ms", runtime_ms}};
}

std::string utc_timestamp(std::chrono::system_clock::time_point when) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(when);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& path, const RunManifest& manifest) {
  write_text(path, manifest.to_json().dump(2) + "\n");
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_checked(out, path);
}

}  // namespace rotorbell::io
