#include "rotorbell/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "rotorbell/entanglement.hpp"
#include "rotorbell/errors.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Refinement stops once the stencil spacing drops below this (in periods).
constexpr double kRefineStep = 1e-10;
constexpr int kRefineMaxMoves = 10000;

double wrap_unit(double t) {
  const double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

double top_of(const BellFamily& family, double t1, double t2) {
  const auto values = hermitian_eigenvalues(family.at(BellSettings::canonical(t1, t2)));
  return values[values.size() - 1];
}

ScanPeak refine_with(const BellFamily& family, ScanPeak best, double initial_step) {
  double h = initial_step / 2.0;
  int moves = 0;
  while (h > kRefineStep && moves < kRefineMaxMoves) {
    ScanPeak candidate = best;
    for (int di = -1; di <= 1; ++di) {
      for (int dk = -1; dk <= 1; ++dk) {
        if (di == 0 && dk == 0) continue;
        const double t1 = best.t1 + di * h;
        const double t2 = best.t2 + dk * h;
        const double b = top_of(family, t1, t2);
        if (b > candidate.beta) candidate = {t1, t2, b};
      }
    }
    if (candidate.beta > best.beta) {
      best = candidate;
      ++moves;
    } else {
      h /= 2.0;
    }
  }
  best.t1 = wrap_unit(best.t1);
  best.t2 = wrap_unit(best.t2);
  return best;
}

}  // namespace

ScanConfig ScanConfig::symmetric(int j_max, int m, BellKind kind, int grid_n, bool refine) {
  ScanConfig c;
  c.j_max_left = c.j_max_right = j_max;
  c.m_left = c.m_right = m;
  c.kind = kind;
  c.grid_n = grid_n;
  c.refine = refine;
  return c;
}

TwoMoleculeSpace ScanConfig::space() const {
  return {RotorSubspace(j_max_left, m_left), RotorSubspace(j_max_right, m_right)};
}

void ScanConfig::validate() const {
  if (grid_n < 2) {
    throw UsageError("grid_n must be at least 2, got " + std::to_string(grid_n));
  }
  if (threads < 0) {
    throw UsageError("thread count must be non-negative");
  }
  (void)space();
}

double ScanResult::grid_max() const { return *std::max_element(beta.begin(), beta.end()); }

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double top_eigenvalue(BellKind kind, const TwoMoleculeSpace& space, double t1, double t2) {
  return top_of(BellFamily(kind, space), t1, t2);
}

ScanPeak refine_peak(BellKind kind, const TwoMoleculeSpace& space, ScanPeak start,
                     double initial_step) {
  return refine_with(BellFamily(kind, space), start, initial_step);
}

ScanResult scan(const ScanConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const TwoMoleculeSpace space = config.space();
  const BellFamily family(config.kind, space);
  const int n = config.grid_n;

  ScanResult result;
  result.config = config;
  result.beta.assign(static_cast<std::size_t>(n) * n, 0.0);

  // Rows are handed out dynamically; each row writes only its own slots.
  std::atomic<int> next_row{0};
  std::mutex failure_mutex;
  std::optional<std::pair<int, std::string>> failure;  // lowest failing flat index

  auto worker = [&] {
    for (int i = next_row.fetch_add(1); i < n; i = next_row.fetch_add(1)) {
      for (int k = 0; k < n; ++k) {
        const double t1 = static_cast<double>(i) / n;
        const double t2 = static_cast<double>(k) / n;
        try {
          result.beta[static_cast<std::size_t>(i) * n + k] = top_of(family, t1, t2);
        } catch (const NumericalError& e) {
          std::lock_guard lock(failure_mutex);
          const int flat = i * n + k;
          if (!failure || flat < failure->first) {
            failure = {flat, "grid point (i=" + std::to_string(i) + ", k=" + std::to_string(k) +
                                 ", t1=" + std::to_string(t1) + ", t2=" + std::to_string(t2) +
                                 "): " + e.what()};
          }
        }
      }
    }
  };

  const int workers = std::min(resolve_threads(config.threads), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) throw NumericalError(failure->second);

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < result.beta.size(); ++idx) {
    if (result.beta[idx] > result.beta[best]) best = idx;
  }
  result.coarse = {static_cast<double>(best / n) / n, static_cast<double>(best % n) / n,
                   result.beta[best]};
  result.argmax = config.refine ? refine_with(family, result.coarse, 1.0 / n) : result.coarse;

  result.local_bound = local_bound(config.kind, space);
  result.relative_violation =
      result.local_bound > 0.0 ? relative_violation(result.argmax.beta, result.local_bound) : kNaN;
  result.relative_violation_infinite = relative_violation(result.argmax.beta, kInfiniteBound);
  result.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return result;
}

SweepRow analyze_scan(const ScanResult& result) {
  const ScanConfig& config = result.config;
  const TwoMoleculeSpace space = config.space();
  SweepRow row;
  row.j_max = config.j_max_left;
  row.beta_max = result.argmax.beta;
  row.t1 = result.argmax.t1;
  row.t2 = result.argmax.t2;
  row.bound = result.local_bound;
  row.b = result.relative_violation;
  row.b_infinite = result.relative_violation_infinite;

  const auto [s_max, state] =
      max_eigenpair(bell_operator(config.kind, space, BellSettings::canonical(row.t1, row.t2)));

  // The white-noise formula assumes a traceless operator, which holds for B1.
  row.noise_threshold = (config.kind == BellKind::B1 && row.bound > 0.0 && s_max > row.bound)
                            ? noise_threshold(s_max, row.bound)
                            : kNaN;

  const DensityMatrix rho = reduced_density(state, Side::Left);
  if (space.left.dim() < 2) {
    row.normalized_entropy = kNaN;
  } else if (space.left.m() == 0) {
    row.normalized_entropy = normalized_entropy(rho, space.left.j_max());
  } else {
    row.normalized_entropy = von_neumann_entropy(rho) / std::log(static_cast<double>(rho.dim()));
  }

  if (space.left.dim() == space.right.dim()) {
    const auto pop = oriented_population(state);
    row.pop_plus = pop.plus_plus;
    row.pop_minus = pop.minus_minus;
  } else {
    row.pop_plus = row.pop_minus = kNaN;
  }
  return row;
}

std::vector<SweepRow> dimension_sweep(const std::vector<int>& j_max_list, int m, BellKind kind,
                                      const SweepOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(j_max_list.size());
  for (const int j_max : j_max_list) {
    if (j_max < 1) {
      throw UsageError("dimension sweep requires j_max >= 1, got " + std::to_string(j_max));
    }
    ScanConfig config = ScanConfig::symmetric(j_max, m, kind, options.grid_n, options.refine);
    config.threads = options.threads;
    rows.push_back(analyze_scan(scan(config)));
  }
  return rows;
}

SymmetryReport audit_symmetries(const ScanResult& result, double tolerance) {
  const int n = result.config.grid_n;
  if (result.beta.size() != static_cast<std::size_t>(n) * n) {
    throw UsageError("scan grid size does not match its configuration");
  }
  SymmetryReport report;
  report.tolerance = tolerance;
  report.exchange_checked = result.config.space().symmetric();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double here = result.at(i, k);
      const double reversed = result.at((n - i) % n, (n - k) % n);
      const double rev = std::abs(here - reversed);
      if (rev > report.reversal_asymmetry || std::isnan(rev)) {
        report.reversal_asymmetry = std::isnan(rev) ? std::numeric_limits<double>::infinity() : rev;
        report.reversal_worst = {i, k};
      }
      if (report.exchange_checked) {
        const double ex = std::abs(here - result.at(k, i));
        if (ex > report.exchange_asymmetry || std::isnan(ex)) {
          report.exchange_asymmetry = std::isnan(ex) ? std::numeric_limits<double>::infinity() : ex;
          report.exchange_worst = {i, k};
        }
      }
    }
  }
  report.passed = report.reversal_asymmetry <= tolerance &&
                  (!report.exchange_checked || report.exchange_asymmetry <= tolerance);
  return report;
}

std::string to_string(BellKind kind) { return kind == BellKind::B1 ? "b1" : "b2"; }

BellKind parse_bell_kind(const std::string& text) {
  if (text == "b1" || text == "B1") return BellKind::B1;
  if (text == "b2" || text == "B2") return BellKind::B2;
  throw UsageError("unknown Bell operator '" + text + "' (expected b1 or b2)");
}

}  // namespace rotorbell
