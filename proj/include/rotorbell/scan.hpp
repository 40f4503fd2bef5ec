#pragma once

// Sweeps of the maximal Bell eigenvalue over the (t1, t2) measurement-time
// plane, per-dimension summaries, and symmetry audits of completed maps.

#include <cstdint>
#include <string>
#include <vector>

#include "rotorbell/angular_basis.hpp"
#include "rotorbell/bell.hpp"

namespace rotorbell {

struct ScanConfig {
  int j_max_left = 1;
  int j_max_right = 1;
  int m_left = 0;
  int m_right = 0;
  int grid_n = 100;  // points per axis over [0, 1)
  BellKind kind = BellKind::B1;
  bool refine = false;
  int threads = 0;  // 0: all hardware threads. Never changes the result.

  static ScanConfig symmetric(int j_max, int m, BellKind kind, int grid_n = 100,
                              bool refine = false);

  TwoMoleculeSpace space() const;
  void validate() const;
};

struct ScanPeak {
  double t1 = 0.0;
  double t2 = 0.0;
  double beta = 0.0;
};

struct ScanResult {
  ScanConfig config;
  std::vector<double> beta;  // row-major: beta[i * grid_n + k] at (i/n, k/n)
  ScanPeak coarse;           // best grid point
  ScanPeak argmax;           // equals coarse unless refined
  double local_bound = 0.0;
  double relative_violation = 0.0;
  double relative_violation_infinite = 0.0;  // against the bound 2
  std::int64_t runtime_ms = 0;

  double at(int i, int k) const { return beta[static_cast<std::size_t>(i) * config.grid_n + k]; }
  double grid_max() const;
};

// Top eigenvalue of the chosen Bell operator at settings canonical(t1, t2).
double top_eigenvalue(BellKind kind, const TwoMoleculeSpace& space, double t1, double t2);

ScanResult scan(const ScanConfig& config);

// Local maximization around a starting point by successive stencil halving.
// Never returns a value below the start.
ScanPeak refine_peak(BellKind kind, const TwoMoleculeSpace& space, ScanPeak start,
                     double initial_step);

struct SweepRow {
  int j_max = 0;
  double beta_max = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double bound = 0.0;
  double b = 0.0;
  double b_infinite = 0.0;
  double noise_threshold = 0.0;     // NaN when there is no violation
  double normalized_entropy = 0.0;  // NaN for one-dimensional subspaces
  double pop_plus = 0.0;
  double pop_minus = 0.0;
};

struct SweepOptions {
  int grid_n = 100;
  bool refine = true;
  int threads = 0;
};

// One refined scan per j_max plus analysis of the maximally violating state.
std::vector<SweepRow> dimension_sweep(const std::vector<int>& j_max_list, int m, BellKind kind,
                                      const SweepOptions& options = {});

SweepRow analyze_scan(const ScanResult& result);

struct GridIndex {
  int i = 0;
  int k = 0;
};

struct SymmetryReport {
  bool exchange_checked = false;
  double exchange_asymmetry = 0.0;  // max |beta(t1,t2) - beta(t2,t1)|
  GridIndex exchange_worst;
  double reversal_asymmetry = 0.0;  // max |beta(t1,t2) - beta(1-t1,1-t2)|
  GridIndex reversal_worst;
  double tolerance = 1e-8;
  bool passed = false;
};

SymmetryReport audit_symmetries(const ScanResult& result, double tolerance = 1e-8);

std::string to_string(BellKind kind);
BellKind parse_bell_kind(const std::string& text);

int resolve_threads(int requested);

}  // namespace rotorbell
