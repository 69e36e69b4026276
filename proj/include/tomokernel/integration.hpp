#pragma once

#include <vector>

namespace tomokernel {

/// Nodes and weights of a one-dimensional quadrature rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss–Legendre rule on [a, b].
Rule gauss_legendre(int n, double a, double b);

/// n-point Gauss–Hermite rule for the weight e^{-t^2} on the real line.
Rule gauss_hermite(int n);

/// Periodic trapezoid rule on [0, 2π): nodes 2πj/n, weights 2π/n.
Rule periodic_trapezoid(int n);

}  // namespace tomokernel
