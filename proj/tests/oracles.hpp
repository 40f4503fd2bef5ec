#pragma once

// Test-only oracles. None of these touch the library's matrix code.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = (std::abs(x) < 1.0) ? n * (x * p1 - p0) / (x * x - 1.0) : 0.0;
  return {p1, dp};
}

// Roots of P_n by sign-change bracketing on a fine grid, then bisection.
inline std::vector<double> legendre_roots(int n) {
  std::vector<double> roots;
  if (n == 0) return roots;
  const int samples = 20000;
  double a = -1.0;
  double fa = legendre(n, a).first;
  for (int s = 1; s <= samples; ++s) {
    const double b = -1.0 + 2.0 * s / samples;
    const double fb = legendre(n, b).first;
    if (fb == 0.0) {
      roots.push_back(b);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = legendre(n, mid).first;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

struct Quadrature {
  std::vector<double> x, w;
};

inline Quadrature gauss_legendre_rule(int n) {
  Quadrature q;
  q.x = legendre_roots(n);
  for (double xi : q.x) {
    const double dp = legendre(n, xi).second;
    q.w.push_back(2.0 / ((1.0 - xi * xi) * dp * dp));
  }
  return q;
}

// Orthonormal theta part of Y_lm: sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(x).
inline double ylm_theta(int l, int m, double x) {
  const int am = m < 0 ? -m : m;
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
                                std::tgamma(l - am + 1.0) / std::tgamma(l + am + 1.0));
  return norm * std::assoc_legendre(l, am, x);
}

// <l', m| cos(theta) |l, m> = 2 pi * integral_{-1}^{1} Y_l'm Y_lm x dx.
inline double cos_theta_by_quadrature(int l, int l_prime, int m) {
  static const Quadrature q = gauss_legendre_rule(64);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    sum += q.w[i] * ylm_theta(l_prime, m, q.x[i]) * ylm_theta(l, m, q.x[i]) * q.x[i];
  }
  return 2.0 * std::numbers::pi * sum;
}

// Top eigenvalue of B1(0,0,t1,t2) at j_max = 1, where cos(theta) = sigma_x / sqrt(3)
// and the two-level CHSH operator norm is 2 sqrt(1 + |sin a sin b|).
inline double chsh_two_level(double t1, double t2) {
  const double a = 2.0 * std::numbers::pi * t1;
  const double b = 2.0 * std::numbers::pi * t2;
  return 2.0 * std::sqrt(1.0 + std::abs(std::sin(a) * std::sin(b))) / 3.0;
}

}  // namespace oracle
