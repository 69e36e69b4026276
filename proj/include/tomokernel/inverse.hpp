#pragma once

#include <span>
#include <vector>

#include "tomokernel/states.hpp"

namespace tomokernel {

inline constexpr double kMaxInverseRadius = 8.0;

/// The two separable factors of the would-be inverse kernel integral on
/// [-R, R]^2, and the constant prefactor e^{-x^2}/(4π²√π).
struct InverseFactors {
  Complex q_integral;  // ∫ e^{-s²/2 + i s α} ds
  Complex p_integral;  // ∫ e^{+s²/2 + i s β} ds
  double prefactor;
  double alpha;
  double beta;
  int nodes;

  Complex value() const noexcept { return prefactor * q_integral * p_integral; }
};

/// Gauss–Legendre node count used on [-R, R] for oscillation frequencies α, β.
int inverse_node_count(double R, double alpha, double beta);

InverseFactors inverse_factors(double theta, double x, double u, double v, double R);

/// Truncated-domain value of the inverse kernel integral. Throws DomainError
/// for R <= 0 or R > 8.
Complex partial_inverse_integral(double theta, double x, double u, double v, double R);

struct DivergenceScan {
  std::vector<double> radii;
  std::vector<double> magnitudes;
};

/// |partial_inverse_integral| at each radius; radii must be strictly
/// increasing, positive and <= 8.
DivergenceScan divergence_scan(double theta, double x, double u, double v,
                               std::span<const double> radii);

}  // namespace tomokernel
