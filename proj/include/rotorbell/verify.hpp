#pragma once

// Release-gate property suite: each check compares the operator pipeline with
// an independent route (root finding, closed forms, symmetry partners).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rotorbell {

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed deviation or margin
  double threshold = 0.0;  // pass when metric <= threshold
  std::string detail;
};

using ElementFn = std::function<double(int j, int j_prime, int m)>;

struct VerifyOptions {
  int random_settings = 200;
  int product_states = 10000;
  int grid_n = 100;
  int max_scan_j_max = 6;
  int max_oracle_j_max = 12;
  std::uint64_t seed = 20091;
  int threads = 0;
  // Matrix-element source for the Gauss-Legendre check. Swappable so a
  // corrupted element can be shown to fail it.
  ElementFn element;
};

PropertyCheck check_gauss_legendre(int max_j_max, const ElementFn& element);

std::vector<PropertyCheck> run_property_suite(const VerifyOptions& options = {});

nlohmann::json checks_json(const std::vector<PropertyCheck>& checks);

bool all_passed(const std::vector<PropertyCheck>& checks);

}  // namespace rotorbell
