#include "rotorbell/reference.hpp"

#include <cmath>
#include <numbers>

#include "rotorbell/errors.hpp"

namespace rotorbell::reference {

std::vector<double> gauss_legendre_nodes(int n) {
  if (n < 1) throw UsageError("Legendre degree must be positive");
  std::vector<double> nodes(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      const double dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

double chsh_two_level_norm(double t1, double t2) {
  const double s = std::sin(2.0 * std::numbers::pi * t1) * std::sin(2.0 * std::numbers::pi * t2);
  return 2.0 / 3.0 * std::sqrt(1.0 + std::abs(s));
}

}  // namespace rotorbell::reference
