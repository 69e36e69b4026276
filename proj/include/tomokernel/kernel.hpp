#pragma once

#include "tomokernel/states.hpp"

namespace tomokernel {

inline constexpr double kSeriesWindow = 6.0;
inline constexpr int kSeriesMaxTerms = 60;

/// Dawson integral e^{-x^2} ∫_0^x e^{t^2} dt, absolute error below 1e-12.
double dawson(double x);

/// Shifted quadrature y = x - q cosθ - p sinθ.
double kernel_argument(PhasePoint pt, double theta, double x) noexcept;

/// Kernel profile 2·daw'(y) = 2 - 4y·daw(y).
double kernel_profile(double y);

/// Markov kernel M^{q,p}(θ, x) = 2 ∂_x daw(x - q cosθ - p sinθ). |M| <= 2.
double kernel_closed(PhasePoint pt, double theta, double x);

/// Partial sum through k_max of Σ_k (-1)^k k!/(2^k (2k)!) H_{2k}(y).
/// Requires |y| <= 6 and 0 <= k_max <= 60.
double kernel_series_profile(double y, int k_max);
double kernel_series(PhasePoint pt, double theta, double x, int k_max);

/// Physicists' Hermite polynomial H_n(x), 0 <= n <= 120.
double hermite_poly(int n, double x);

}  // namespace tomokernel
