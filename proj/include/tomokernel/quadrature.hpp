#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tomokernel/states.hpp"

namespace tomokernel {

/// One homodyne outcome: local-oscillator phase and quadrature value.
struct QuadratureSample {
  double theta = 0.0;
  double x = 0.0;
};

/// Tabulated CDF of ρ^{Q_θ} for inverse-transform sampling.
struct SamplerTable {
  double theta = 0.0;
  std::vector<double> grid;
  std::vector<double> cdf;
};

/// x-grid used for sampler tables.
struct SamplerGrid {
  int x_nodes = 4001;
  /// Half-width; <= 0 selects √(2·dim) + 5.
  double x_limit = 0.0;
};

inline constexpr int kPhaseBins = 360;
inline constexpr double kSamplerMassTol = 1e-6;

/// Reduces an angle to [0, 2π).
double wrap_phase(double theta) noexcept;

/// Density of the rotated quadrature Q_θ = e^{iθN} Q e^{-iθN} at x.
double quad_density(const DensityMatrix& rho, double theta, double x);

/// Evaluates ρ^{Q_θ} at every x in `xs` (out.size() == xs.size()).
void quad_density_many(const DensityMatrix& rho, double theta, std::span<const double> xs,
                       std::span<double> out);

/// Evaluates ρ^{Q_θ}(x) on a tensor grid; result is row-major [theta][x].
std::vector<double> quad_density_table(const DensityMatrix& rho, std::span<const double> thetas,
                                       std::span<const double> xs, unsigned threads = 0);

/// Piecewise-linear CDF lookup, clamped to [0, 1].
double quad_cdf(const SamplerTable& table, double x) noexcept;

/// Inverse of quad_cdf for u in [0, 1).
double quad_inverse_cdf(const SamplerTable& table, double u) noexcept;

/// Trapezoid CDF of quad_density on [-L, L]. Throws NumericError when the
/// raw mass differs from one by more than kSamplerMassTol.
SamplerTable build_sampler(const DensityMatrix& rho, double theta, const SamplerGrid& grid = {});

/// Draws n outcomes of the homodyne tomography observable: θ uniform over
/// kPhaseBins bins of [0, 2π), then x by inverse CDF. Deterministic in
/// (seed, n) regardless of thread count.
std::vector<QuadratureSample> sample_eht(const DensityMatrix& rho, std::int64_t n,
                                         std::uint64_t seed, const SamplerGrid& grid = {},
                                         unsigned threads = 0);

}  // namespace tomokernel
