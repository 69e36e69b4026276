#include "tomokernel/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tomokernel/errors.hpp"

namespace tomokernel {

namespace {

constexpr double kSeriesCutoff = 0.2;
constexpr double kAsymptoticCutoff = 25.0;

// Rybicki's sampling approximation
//   daw(x) ≈ (1/√π) Σ_{n odd} e^{-(x - nh)^2} / n,
// whose error decays like e^{-(π/2h)^2}.
constexpr double kRybickiStep = 0.2;
constexpr int kRybickiTerms = 26;

const std::array<double, kRybickiTerms>& rybicki_weights() {
  static const auto weights = [] {
    std::array<double, kRybickiTerms> c{};
    for (int i = 0; i < kRybickiTerms; ++i) {
      const double t = (2.0 * i + 1.0) * kRybickiStep;
      c[i] = std::exp(-t * t);
    }
    return c;
  }();
  return weights;
}

double dawson_maclaurin(double x) {
  // Σ (-1)^n 2^n x^{2n+1} / (2n+1)!!
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 30; ++n) {
    term *= -2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double dawson_rybicki(double ax) {
  const auto& c = rybicki_weights();
  const int n0 = 2 * static_cast<int>(0.5 * ax / kRybickiStep + 0.5);
  const double xp = ax - n0 * kRybickiStep;
  double e1 = std::exp(2.0 * xp * kRybickiStep);
  const double e2 = e1 * e1;
  double d1 = n0 + 1.0;
  double d2 = d1 - 2.0;
  double sum = 0.0;
  for (int i = 0; i < kRybickiTerms; ++i, d1 += 2.0, d2 -= 2.0, e1 *= e2)
    sum += c[i] * (e1 / d1 + 1.0 / (d2 * e1));
  return std::exp(-xp * xp) * sum / std::sqrt(std::numbers::pi);
}

double dawson_asymptotic(double ax) {
  // 1/(2x) Σ_k (2k-1)!! / (2x^2)^k
  const double inv = 1.0 / (2.0 * ax * ax);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= (2.0 * k - 1.0) * inv;
    sum += term;
    if (term < 1e-18) break;
  }
  return sum / (2.0 * ax);
}

}  // namespace

double dawson(double x) {
  const double ax = std::abs(x);
  double value;
  if (ax < kSeriesCutoff)
    value = dawson_maclaurin(ax);
  else if (ax < kAsymptoticCutoff)
    value = dawson_rybicki(ax);
  else
    value = dawson_asymptotic(ax);
  return std::signbit(x) ? -value : value;
}

double kernel_argument(PhasePoint pt, double theta, double x) noexcept {
  return x - pt.q * std::cos(theta) - pt.p * std::sin(theta);
}

double kernel_profile(double y) { return 2.0 - 4.0 * y * dawson(y); }

double kernel_closed(PhasePoint pt, double theta, double x) {
  return kernel_profile(kernel_argument(pt, theta, x));
}

double kernel_series_profile(double y, int k_max) {
  if (!(std::abs(y) <= kSeriesWindow))
    throw DomainError("kernel_series: |y| exceeds the validated window of 6");
  if (k_max < 0 || k_max > kSeriesMaxTerms)
    throw DomainError("kernel_series: k_max must lie in [0, 60]");

  // Scaled polynomials H~_n = H_n / √(2^n n!) obey the same recurrence as the
  // normalized Hermite functions, starting from H~_0 = 1.
  // Term k is (-1)^k k!/√((2k)!) H~_{2k}(y).
  double prev = 0.0, cur = 1.0;
  double sum = 0.0;
  for (int n = 0; n <= 2 * k_max; ++n) {
    if (n > 0) {
      const double next = std::sqrt(2.0 / n) * y * cur - std::sqrt((n - 1.0) / n) * prev;
      prev = cur;
      cur = next;
    }
    if (n % 2 != 0 || cur == 0.0) continue;
    const int k = n / 2;
    const double log_mag =
        std::lgamma(k + 1.0) - 0.5 * std::lgamma(2.0 * k + 1.0) + std::log(std::abs(cur));
    const bool negative = (k % 2 != 0) != (cur < 0.0);
    const double term = std::exp(log_mag);
    sum += negative ? -term : term;
  }
  return sum;
}

double kernel_series(PhasePoint pt, double theta, double x, int k_max) {
  return kernel_series_profile(kernel_argument(pt, theta, x), k_max);
}

double hermite_poly(int n, double x) {
  if (n < 0 || n > 120) throw DomainError("hermite_poly: n must lie in [0, 120]");
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < n; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace tomokernel
