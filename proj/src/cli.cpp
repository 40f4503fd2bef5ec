#include "rotorbell/cli.hpp"

#include <chrono>
#include <filesystem>
#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "rotorbell/angular_basis.hpp"
#include "rotorbell/errors.hpp"
#include "rotorbell/io.hpp"
#include "rotorbell/scan.hpp"
#include "rotorbell/spectral.hpp"
#include "rotorbell/verify.hpp"

namespace rotorbell::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kSweepGuard = 12;

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

struct CommonOptions {
  std::string out_dir;
  std::vector<std::string> formats;
  int threads = 0;

  fs::path dir() const { return out_dir.empty() ? io::default_out_dir() : fs::path(out_dir); }
  bool wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }
};

void add_common(CLI::App* cmd, CommonOptions& common, std::vector<std::string> default_formats) {
  common.formats = std::move(default_formats);
  cmd->add_option("--out", common.out_dir,
                  std::string("Output directory (default: $") + io::kOutDirEnv +
                      " or ./rotorbell_out)");
  cmd->add_option("--format", common.formats, "Outputs to write")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "pgm"}))
      ->capture_default_str();
  cmd->add_option("--threads", common.threads, "Worker threads (0: all available)")
      ->check(CLI::NonNegativeNumber);
}

struct SpaceOptions {
  int j_max = -1;
  int j_max_left = -1;
  int j_max_right = -1;
  int m = 0;
  std::optional<int> m_left;
  std::optional<int> m_right;

  void add(CLI::App* cmd) {
    cmd->add_option("--jmax", j_max, "Angular momentum cutoff for both molecules");
    cmd->add_option("--jmax-left", j_max_left, "Cutoff for the left molecule");
    cmd->add_option("--jmax-right", j_max_right, "Cutoff for the right molecule");
    cmd->add_option("--m", m, "Magnetic quantum number for both molecules");
    cmd->add_option("--m-left", m_left, "m for the left molecule");
    cmd->add_option("--m-right", m_right, "m for the right molecule");
  }

  void apply(ScanConfig& c) const {
    c.j_max_left = j_max_left >= 0 ? j_max_left : j_max;
    c.j_max_right = j_max_right >= 0 ? j_max_right : j_max;
    if (c.j_max_left < 0 || c.j_max_right < 0) {
      throw UsageError("--jmax (or both --jmax-left and --jmax-right) is required");
    }
    c.m_left = m_left.value_or(m);
    c.m_right = m_right.value_or(m);
  }
};

std::string stem_for(const ScanConfig& c) {
  std::ostringstream s;
  s << "scan_" << to_string(c.kind) << "_j" << c.j_max_left << '-' << c.j_max_right << "_m"
    << c.m_left << '_' << c.m_right << "_g" << c.grid_n << (c.refine ? "_refined" : "");
  return s.str();
}

void finish_manifest(const fs::path& dir, const std::string& stem, io::RunManifest manifest,
                     Clock::time_point started, std::ostream& out) {
  manifest.runtime_ms = elapsed_ms(started);
  const fs::path path = dir / (stem + ".manifest.json");
  io::write_manifest(path, manifest);
  out << "manifest: " << path.string() << '\n';
}

int cmd_orient(int j_max, int m, const CommonOptions& common, std::ostream& out) {
  const auto started = Clock::now();
  const RotorSubspace sub(j_max, m);
  const auto eig = orientation_eigensystem(sub);
  const Eigen::Index n = eig.eigenvalues.size();

  out << "subspace j_max=" << j_max << " m=" << m << " dim=" << sub.dim() << '\n';
  out << "eigenvalues:";
  for (Eigen::Index k = 0; k < n; ++k) out << ' ' << io::format12(eig.eigenvalues[k]);
  out << "\nlambda_max = " << io::format12(eig.max_value()) << '\n';
  out << std::setw(4) << "j" << std::setw(20) << "|+>" << std::setw(20) << "|->" << '\n';
  for (Eigen::Index k = 0; k < n; ++k) {
    out << std::setw(4) << sub.j_of(static_cast<int>(k)) << std::setw(20)
        << io::format12(eig.eigenvectors(k, n - 1).real()) << std::setw(20)
        << io::format12(eig.eigenvectors(k, 0).real()) << '\n';
  }

  if (!common.wants("csv")) return kOk;
  const fs::path dir = common.dir();
  const std::string stem = "orient_j" + std::to_string(j_max) + "_m" + std::to_string(m);
  io::RunManifest manifest;
  manifest.command = "orient";
  manifest.config = {{"j_max", j_max}, {"m", m}};
  manifest.timestamp = io::utc_timestamp(std::chrono::system_clock::now());
  const fs::path csv = dir / (stem + ".csv");
  io::write_orient_csv(csv, sub, eig);
  manifest.outputs.push_back(csv.string());
  finish_manifest(dir, stem, std::move(manifest), started, out);
  return kOk;
}

int cmd_scan(const ScanConfig& config, const CommonOptions& common, std::ostream& out) {
  const auto started = Clock::now();
  const auto result = scan(config);
  const auto summary = io::summary_json(result);
  out << summary.dump(2) << '\n';

  const fs::path dir = common.dir();
  const std::string stem = stem_for(config);
  io::RunManifest manifest;
  manifest.command = "scan";
  manifest.config = io::config_json(config);
  manifest.config["threads"] = resolve_threads(config.threads);
  manifest.timestamp = io::utc_timestamp(std::chrono::system_clock::now());
  if (common.wants("csv")) {
    const fs::path p = dir / (stem + ".csv");
    io::write_beta_csv(p, result);
    manifest.outputs.push_back(p.string());
  }
  if (common.wants("json")) {
    const fs::path p = dir / (stem + ".json");
    io::write_summary_json(p, result);
    manifest.outputs.push_back(p.string());
  }
  if (common.wants("pgm")) {
    const fs::path p = dir / (stem + ".pgm");
    io::write_pgm(p, result);
    manifest.outputs.push_back(p.string());
  }
  if (!manifest.outputs.empty()) finish_manifest(dir, stem, std::move(manifest), started, out);
  return kOk;
}

int cmd_sweep(const std::vector<int>& j_list, int m, BellKind kind, const SweepOptions& options,
              const CommonOptions& common, std::ostream& out) {
  const auto started = Clock::now();
  const auto rows = dimension_sweep(j_list, m, kind, options);

  for (const auto& name : io::kSweepColumns) out << std::setw(name == "j_max" ? 6 : 20) << name;
  out << '\n';
  for (const auto& r : rows) {
    out << std::setw(6) << r.j_max;
    for (double v : {r.beta_max, r.bound, r.b, r.b_infinite, r.noise_threshold,
                     r.normalized_entropy, r.pop_plus, r.pop_minus}) {
      out << std::setw(20) << io::format12(v);
    }
    out << '\n';
  }

  if (!common.wants("csv")) return kOk;
  const fs::path dir = common.dir();
  std::ostringstream stem;
  stem << "sweep_" << to_string(kind) << "_m" << m << "_j" << j_list.front() << '-'
       << j_list.back() << "_g" << options.grid_n;
  io::RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = {{"op", to_string(kind)},        {"m", m},
                     {"j_max", j_list},              {"grid_n", options.grid_n},
                     {"refine", options.refine},     {"threads", resolve_threads(options.threads)}};
  manifest.timestamp = io::utc_timestamp(std::chrono::system_clock::now());
  const fs::path csv = dir / (stem.str() + ".csv");
  io::write_sweep_csv(csv, rows);
  manifest.outputs.push_back(csv.string());
  finish_manifest(dir, stem.str(), std::move(manifest), started, out);
  return kOk;
}

int cmd_verify(const VerifyOptions& options, const CommonOptions& common, std::ostream& out) {
  const auto started = Clock::now();
  const auto checks = run_property_suite(options);
  for (const auto& c : checks) {
    out << (c.passed ? "PASS" : "FAIL") << '\t' << c.name << "\tmetric=" << io::format12(c.metric)
        << "\tthreshold=" << io::format12(c.threshold) << '\t' << c.detail << '\n';
  }
  const bool ok = all_passed(checks);
  out << (ok ? "all properties passed" : "property failures detected") << '\n';

  if (common.wants("json")) {
    const fs::path dir = common.dir();
    io::RunManifest manifest;
    manifest.command = "verify";
    manifest.config = {{"random_settings", options.random_settings},
                       {"product_states", options.product_states},
                       {"grid_n", options.grid_n},
                       {"max_scan_j_max", options.max_scan_j_max},
                       {"max_oracle_j_max", options.max_oracle_j_max},
                       {"seed", options.seed}};
    manifest.timestamp = io::utc_timestamp(std::chrono::system_clock::now());
    const fs::path report = dir / "verify_report.json";
    nlohmann::json doc = {{"passed", ok}, {"checks", checks_json(checks)}};
    io::write_text(report, doc.dump(2) + "\n");
    manifest.outputs.push_back(report.string());
    finish_manifest(dir, "verify", std::move(manifest), started, out);
  }
  return ok ? kOk : kNumerical;
}

}  // namespace

std::vector<int> parse_j_max_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("cannot parse j_max list '" + text + "'");
    return v;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw UsageError("empty j_max range '" + text + "'");
    for (int j = lo; j <= hi; ++j) out.push_back(j);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw UsageError("empty j_max list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal CHSH violations for pairs of free rigid rotors", "rotorbell"};
  app.require_subcommand(1);

  CommonOptions orient_common;
  int orient_j = -1;
  int orient_m = 0;
  auto* orient = app.add_subcommand("orient", "Spectrum and maximally oriented states of cos(theta)");
  orient->add_option("--jmax", orient_j, "Angular momentum cutoff")->required();
  orient->add_option("--m", orient_m, "Magnetic quantum number");
  add_common(orient, orient_common, {"csv"});

  CommonOptions scan_common;
  SpaceOptions scan_space;
  ScanConfig scan_config;
  std::string scan_op = "b1";
  auto* scan_cmd = app.add_subcommand("scan", "Map the top Bell eigenvalue over (t1, t2)");
  scan_cmd->add_option("--op", scan_op, "Bell operator")->check(CLI::IsMember({"b1", "b2"}));
  scan_space.add(scan_cmd);
  scan_cmd->add_option("--grid", scan_config.grid_n, "Points per time axis over [0, 1)")
      ->capture_default_str();
  scan_cmd->add_flag("--refine", scan_config.refine, "Refine the grid maximum locally");
  add_common(scan_cmd, scan_common, {"csv", "json"});

  CommonOptions sweep_common;
  std::string sweep_range = "1..6";
  int sweep_m = 0;
  std::string sweep_op = "b1";
  bool allow_large = false;
  SweepOptions sweep_options;
  auto* sweep = app.add_subcommand("sweep", "Per-dimension maxima, noise thresholds and entropy");
  sweep->add_option("--op", sweep_op, "Bell operator")->check(CLI::IsMember({"b1", "b2"}));
  sweep->add_option("--jmax", sweep_range, "j_max values: a..b, a,b,c or a single value")
      ->capture_default_str();
  sweep->add_option("--m", sweep_m, "Magnetic quantum number");
  sweep->add_option("--grid", sweep_options.grid_n, "Points per time axis")->capture_default_str();
  sweep->add_flag("--refine,!--no-refine", sweep_options.refine, "Refine each maximum (default on)");
  sweep->add_flag("--allow-large", allow_large, "Permit j_max beyond 12");
  add_common(sweep, sweep_common, {"csv"});

  CommonOptions verify_common;
  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run the invariant and oracle property suite");
  verify->add_option("--seed", verify_options.seed, "Random seed")->capture_default_str();
  verify->add_option("--grid", verify_options.grid_n, "Grid for the scanned properties")
      ->capture_default_str();
  add_common(verify, verify_common, {"json"});

  std::vector<std::string> argv_store{"rotorbell"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (orient->parsed()) return cmd_orient(orient_j, orient_m, orient_common, out);
    if (scan_cmd->parsed()) {
      scan_space.apply(scan_config);
      scan_config.kind = parse_bell_kind(scan_op);
      scan_config.threads = scan_common.threads;
      return cmd_scan(scan_config, scan_common, out);
    }
    if (sweep->parsed()) {
      const auto list = parse_j_max_list(sweep_range);
      for (int j : list) {
        if (j < 1 || (j > kSweepGuard && !allow_large)) {
          throw UsageError("sweep j_max must lie in 1.." + std::to_string(kSweepGuard) +
                           " (use --allow-large to exceed), got " + std::to_string(j));
        }
      }
      sweep_options.threads = sweep_common.threads;
      return cmd_sweep(list, sweep_m, parse_bell_kind(sweep_op), sweep_options, sweep_common,
                       out);
    }
    if (verify->parsed()) {
      verify_options.threads = verify_common.threads;
      return cmd_verify(verify_options, verify_common, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    err << "I/O failure: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O failure: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace rotorbell::cli
