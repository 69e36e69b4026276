#pragma once

// Test-only reference computations. None of these call into the library's
// evaluation paths.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tomokernel/states.hpp"

namespace oracle {

/// Integer coefficients of the physicists' Hermite polynomial H_n, lowest
/// degree first, via H_{n+1} = 2x H_n - 2n H_{n-1} on exact integers.
inline std::vector<__int128> hermite_coefficients(int n) {
  std::vector<__int128> prev{0}, cur{1};
  for (int j = 0; j < n; ++j) {
    std::vector<__int128> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * static_cast<__int128>(j) * prev[i];
    prev = cur;
    cur = next;
  }
  return cur;
}

inline long double hermite_poly(int n, long double x) {
  const auto c = hermite_coefficients(n);
  long double acc = 0.0L;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + static_cast<long double>(c[i]);
  return acc;
}

/// h_n(x) = (2^n n! √π)^{-1/2} H_n(x) e^{-x²/2} with exact H_n coefficients.
inline long double hermite_function(int n, long double x) {
  long double norm = std::sqrt(std::numbers::pi_v<long double>);
  for (int k = 1; k <= n; ++k) norm *= 2.0L * k;
  return hermite_poly(n, x) * std::exp(-0.5L * x * x) / std::sqrt(norm);
}

/// Dawson integral from adaptive Gauss–Kronrod quadrature of
/// ∫_0^x e^{t² - x²} dt in extended precision.
inline double dawson_quadrature(double x) {
  const long double ax = std::abs(static_cast<long double>(x));
  if (ax == 0.0L) return 0.0;
  auto f = [ax](long double t) { return std::exp((t - ax) * (t + ax)); };
  const long double v =
      boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(f, 0.0L, ax, 12, 1e-16L);
  return static_cast<double>(x < 0 ? -v : v);
}

/// Asymptotic expansion 1/(2x) Σ (2k-1)!!/(2x²)^k summed to its smallest term.
inline double dawson_asymptotic(double x, int max_terms = 1000) {
  const long double inv = 1.0L / (2.0L * x * x);
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < max_terms; ++k) {
    const long double next = term * (2.0L * k - 1.0L) * inv;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
  }
  return static_cast<double>(sum / (2.0L * x));
}

/// Husimi of a coherent state |z0⟩ at amplitude w: e^{-|w - z0|²}/2π.
inline double coherent_husimi(tomokernel::Complex z0, tomokernel::Complex w) {
  return std::exp(-std::norm(w - z0)) / (2.0 * std::numbers::pi);
}

/// Coherent quadrature density π^{-1/2} exp(-(x - √2 Re(z e^{-iθ}))²).
inline double coherent_quad_density(tomokernel::Complex z, double theta, double x) {
  const double mean = std::numbers::sqrt2 * (z * std::polar(1.0, -theta)).real();
  return std::exp(-(x - mean) * (x - mean)) / std::sqrt(std::numbers::pi);
}

}  // namespace oracle
