#include "tomokernel/inverse.hpp"

#include <cmath>
#include <numbers>

#include "tomokernel/errors.hpp"
#include "tomokernel/integration.hpp"

namespace tomokernel {

namespace {

// ∫_{-R}^{R} e^{sign·s²/2 + i s freq} ds
Complex oscillatory_gaussian(const Rule& rule, double sign, double freq) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i];
    sum += rule.weights[i] * std::exp(0.5 * sign * s * s) * std::polar(1.0, s * freq);
  }
  return sum;
}

}  // namespace

int inverse_node_count(double R, double alpha, double beta) {
  return 32 + static_cast<int>(std::ceil(8.0 * R * (1.0 + std::abs(alpha) + std::abs(beta))));
}

InverseFactors inverse_factors(double theta, double x, double u, double v, double R) {
  if (!(R > 0.0) || R > kMaxInverseRadius)
    throw DomainError("partial_inverse_integral requires 0 < R <= 8");
  const double c = std::cos(theta), s = std::sin(theta);
  InverseFactors f{};
  f.alpha = -u * s + v * c;
  f.beta = 2.0 * x - u * c - v * s;
  f.nodes = inverse_node_count(R, f.alpha, f.beta);
  f.prefactor = std::exp(-x * x) /
                (4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(std::numbers::pi));
  const Rule rule = gauss_legendre(f.nodes, -R, R);
  f.q_integral = oscillatory_gaussian(rule, -1.0, f.alpha);
  f.p_integral = oscillatory_gaussian(rule, +1.0, f.beta);
  return f;
}

Complex partial_inverse_integral(double theta, double x, double u, double v, double R) {
  return inverse_factors(theta, x, u, v, R).value();
}

DivergenceScan divergence_scan(double theta, double x, double u, double v,
                               std::span<const double> radii) {
  if (radii.empty()) throw DomainError("divergence_scan needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > kMaxInverseRadius)
      throw DomainError("divergence_scan radii must lie in (0, 8]");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw DomainError("divergence_scan radii must be strictly increasing");
  }
  DivergenceScan scan;
  scan.radii.assign(radii.begin(), radii.end());
  for (double R : radii) scan.magnitudes.push_back(std::abs(partial_inverse_integral(theta, x, u, v, R)));
  return scan;
}

}  // namespace tomokernel
