#include "rotorbell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rotorbell/angular_basis.hpp"
#include "rotorbell/bell.hpp"
#include "rotorbell/reference.hpp"
#include "rotorbell/scan.hpp"
#include "rotorbell/spectral.hpp"

namespace rotorbell {

namespace {

PropertyCheck make_check(std::string name, double metric, double threshold, std::string detail) {
  return {std::move(name), metric <= threshold, metric, threshold, std::move(detail)};
}

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v[k] = cplx(g(rng), g(rng));
  return v.normalized();
}

PropertyCheck check_orientation_symmetry(int max_j_max) {
  double worst = 0.0;
  for (int j = 0; j <= max_j_max; ++j) {
    for (int m = -j; m <= j; ++m) {
      const auto ev = orientation_eigensystem(RotorSubspace(j, m)).eigenvalues;
      const Eigen::Index n = ev.size();
      for (Eigen::Index k = 0; k < n; ++k) worst = std::max(worst, std::abs(ev[k] + ev[n - 1 - k]));
    }
  }
  return make_check("orientation_spectrum_symmetric", worst, 1e-10,
                    "max |lambda_k + lambda_{n-1-k}| over j_max <= " + std::to_string(max_j_max) +
                        ", all m");
}

PropertyCheck check_lambda_monotone(int max_j_max) {
  int violations = 0;
  for (int j = 1; j <= max_j_max; ++j) {
    for (int m = 0; m <= j; ++m) {
      const double here = lambda_max(RotorSubspace(j, m));
      if (m > 0 && !(here < lambda_max(RotorSubspace(j, m - 1)))) ++violations;
      if (m <= j - 1 && !(here > lambda_max(RotorSubspace(j - 1, m)))) ++violations;
    }
  }
  return make_check("lambda_max_monotone", violations, 0.0,
                    "count of non-strict steps in |m| (decreasing) and j_max (increasing)");
}

std::vector<PropertyCheck> check_evolution(int max_j_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  double spectrum = 0.0;
  double period = 0.0;
  for (int j = 1; j <= max_j_max; ++j) {
    std::uniform_int_distribution<int> pick_m(-j, j);
    const RotorSubspace sub(j, pick_m(rng));
    const auto c = build_cos_theta(sub);
    const auto base = hermitian_eigenvalues(c);
    for (int trial = 0; trial < 5; ++trial) {
      const double t = time(rng);
      const auto o = evolve_operator(c, t);
      spectrum = std::max(spectrum, max_abs_diff(hermitian_eigenvalues(o), base));
      period = std::max(
          period, (evolve_operator(c, t + 1.0).matrix() - o.matrix()).cwiseAbs().maxCoeff());
    }
  }
  return {make_check("evolution_preserves_spectrum", spectrum, 1e-10,
                     "eigenvalues of O(t) vs cos(theta), random t and m"),
          make_check("evolution_periodic", period, 1e-12, "max |O(t+1) - O(t)|")};
}

PropertyCheck check_equivalence(BellKind kind, int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> time(-2.0, 2.0);
  std::uniform_int_distribution<int> pick_j(1, 5);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int jl = pick_j(rng);
    const int jr = pick_j(rng);
    std::uniform_int_distribution<int> ml(-(jl - 1), jl - 1);
    std::uniform_int_distribution<int> mr(-(jr - 1), jr - 1);
    const TwoMoleculeSpace space{RotorSubspace(jl, ml(rng)), RotorSubspace(jr, mr(rng))};
    const BellFamily family(kind, space);
    const BellSettings settings{time(rng), time(rng), time(rng), time(rng)};
    const auto full = hermitian_eigenvalues(family.at(settings));
    const auto canon = hermitian_eigenvalues(family.at(settings.canonicalized()));
    worst = std::max(worst, max_abs_diff(full, canon));
  }
  return make_check("spectrum_equivalence_" + to_string(kind), worst, 1e-9,
                    std::to_string(samples) + " random four-time settings vs canonical form");
}

PropertyCheck check_traceless(int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> time(0.0, 1.0);
  std::uniform_int_distribution<int> pick_j(0, 6);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const TwoMoleculeSpace space{RotorSubspace(pick_j(rng), 0), RotorSubspace(pick_j(rng), 0)};
    const auto b1 = bell_b1(space, {time(rng), time(rng), time(rng), time(rng)});
    worst = std::max(worst, std::abs(b1.matrix().trace()));
  }
  return make_check("b1_traceless_exact", worst, 0.0,
                    std::to_string(samples) + " random settings; trace must be exactly zero");
}

PropertyCheck check_product_states(int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> time(0.0, 1.0);
  std::uniform_int_distribution<int> pick_j(1, 5);
  constexpr int kStatesPerOperator = 50;
  double worst = -std::numeric_limits<double>::infinity();
  for (int done = 0; done < samples;) {
    const TwoMoleculeSpace space{RotorSubspace(pick_j(rng), 0), RotorSubspace(pick_j(rng), 0)};
    const double bound = local_bound_b1(space);
    const auto b1 = bell_b1(space, {time(rng), time(rng), time(rng), time(rng)});
    for (int s = 0; s < kStatesPerOperator && done < samples; ++s, ++done) {
      const auto psi = QuantumState::product(
          QuantumState(space.left, random_unit_vector(space.left.dim(), rng)),
          QuantumState(space.right, random_unit_vector(space.right.dim(), rng)));
      const auto& v = psi.amplitudes();
      worst = std::max(worst, v.dot(b1.matrix() * v).real() - bound);
    }
  }
  return make_check("product_state_local_bound", worst, 1e-9,
                    "max <B1> - 2 lambda_max^2 over " + std::to_string(samples) +
                        " random product states");
}

}  // namespace

PropertyCheck check_gauss_legendre(int max_j_max, const ElementFn& element) {
  double worst = 0.0;
  for (int j_max = 0; j_max <= max_j_max; ++j_max) {
    const RotorSubspace sub(j_max, 0);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(sub.dim(), sub.dim());
    for (int k = 0; k + 1 < sub.dim(); ++k) {
      c(k, k + 1) = c(k + 1, k) = element(sub.j_of(k), sub.j_of(k) + 1, 0);
    }
    const auto ev = hermitian_eigenvalues(HermitianOperator(sub, c));
    const auto nodes = reference::gauss_legendre_nodes(j_max + 1);
    for (int k = 0; k < sub.dim(); ++k) worst = std::max(worst, std::abs(ev[k] - nodes[k]));
  }
  return make_check("gauss_legendre_nodes", worst, 1e-9,
                    "cos(theta) spectrum at m=0 vs Legendre roots, j_max <= " +
                        std::to_string(max_j_max));
}

std::vector<PropertyCheck> run_property_suite(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  const ElementFn element = options.element ? options.element : ElementFn(cos_theta_element);

  std::vector<PropertyCheck> checks;
  checks.push_back(check_gauss_legendre(options.max_oracle_j_max, element));
  checks.push_back(check_orientation_symmetry(options.max_oracle_j_max));
  checks.push_back(check_lambda_monotone(options.max_oracle_j_max));
  for (auto& c : check_evolution(options.max_oracle_j_max, rng)) checks.push_back(std::move(c));
  checks.push_back(check_equivalence(BellKind::B1, options.random_settings, rng));
  checks.push_back(check_equivalence(BellKind::B2, options.random_settings, rng));
  checks.push_back(check_traceless(options.random_settings, rng));
  checks.push_back(check_product_states(options.product_states, rng));

  // Full-grid scans feed the symmetry audits, the ceilings and the
  // two-level closed form.
  double symmetry = 0.0;
  double ceiling_b1 = -std::numeric_limits<double>::infinity();
  double ceiling_b2 = -std::numeric_limits<double>::infinity();
  double two_level = 0.0;
  int scans = 0;
  for (int j = 1; j <= options.max_scan_j_max; ++j) {
    for (const BellKind kind : {BellKind::B1, BellKind::B2}) {
      auto config = ScanConfig::symmetric(j, 0, kind, options.grid_n);
      config.threads = options.threads;
      const auto result = scan(config);
      ++scans;
      const auto audit = audit_symmetries(result);
      symmetry = std::max({symmetry, audit.exchange_asymmetry, audit.reversal_asymmetry});
      if (kind == BellKind::B1) {
        const double lm = lambda_max(RotorSubspace(j, 0));
        ceiling_b1 = std::max(ceiling_b1, result.grid_max() - 3.0 * lm * lm);
        if (j == 1) {
          const int n = options.grid_n;
          for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
              const double expect =
                  reference::chsh_two_level_norm(static_cast<double>(i) / n,
                                                 static_cast<double>(k) / n);
              two_level = std::max(two_level, std::abs(result.at(i, k) - expect));
            }
          }
        }
      } else {
        ceiling_b2 = std::max(ceiling_b2, result.grid_max() - 2.0 * std::numbers::sqrt2);
      }
    }
  }
  {
    // Unequal subspaces: only the time-reversal partner exists.
    ScanConfig config = ScanConfig::symmetric(2, 0, BellKind::B1, options.grid_n);
    config.j_max_right = 3;
    config.threads = options.threads;
    symmetry = std::max(symmetry, audit_symmetries(scan(config)).reversal_asymmetry);
    ++scans;
  }
  const std::string grids = std::to_string(scans) + " scans at grid " +
                            std::to_string(options.grid_n) + ", j_max <= " +
                            std::to_string(options.max_scan_j_max);
  checks.push_back(make_check("grid_symmetries", symmetry, 1e-8,
                              "exchange and time-reversal asymmetry, " + grids));
  checks.push_back(make_check("two_level_closed_form", two_level, 1e-10,
                              "j_max=1 B1 grid vs (2/3) sqrt(1 + |sin sin|)"));
  checks.push_back(make_check("b1_ceiling_3_lambda_max_sq", ceiling_b1, 0.0,
                              "max beta1 - 3 lambda_max^2, " + grids));
  checks.push_back(
      make_check("b2_cirelson_ceiling", ceiling_b2, 1e-9, "max beta2 - 2 sqrt(2), " + grids));
  return checks;
}

nlohmann::json checks_json(const std::vector<PropertyCheck>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"metric", c.metric},
                   {"threshold", c.threshold},
                   {"detail", c.detail}});
  }
  return out;
}

bool all_passed(const std::vector<PropertyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

}  // namespace rotorbell
