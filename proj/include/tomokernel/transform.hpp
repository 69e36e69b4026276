#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tomokernel/integration.hpp"
#include "tomokernel/quadrature.hpp"
#include "tomokernel/states.hpp"

namespace tomokernel {

/// Discretization of the (θ, x) integral: periodic trapezoid in θ,
/// Gauss–Legendre on [-x_limit, x_limit] in x.
struct QuadratureScheme {
  int theta_nodes = 128;
  int x_nodes = 160;
  double x_limit = 0.0;

  /// T = 128, 160 x-nodes, L = √(2·dim) + 6.
  static QuadratureScheme for_dim(int dim);
  /// Throws DomainError unless T >= 16, x_nodes >= 32 and L >= 6.
  void validate() const;
};

/// Rectangular (q, p) grid; endpoints included.
struct GridSpec {
  double q_min = -4.0, q_max = 4.0;
  double p_min = -4.0, p_max = 4.0;
  int nq = 21, np = 21;

  void validate() const;
  double q_at(int i) const noexcept;
  double p_at(int j) const noexcept;
  std::size_t size() const noexcept { return static_cast<std::size_t>(nq) * np; }
};

/// Values of a real function on a GridSpec, row-major with q outer.
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.np + j]; }
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

/// Kernel transform of one state with the quadrature density tabulated once,
/// so many phase-space points can be evaluated cheaply.
class KernelTransform {
 public:
  KernelTransform(const DensityMatrix& rho, const QuadratureScheme& scheme, unsigned threads = 0);

  /// Husimi value (1/2π) ∮∫ M^{q,p}(θ, x) ρ^{Q_θ}(x) dθdx/2π. The outer
  /// 1/2π converts the kernel average, which reproduces ⟨z|ρ|z⟩, into the
  /// Husimi density.
  double operator()(PhasePoint pt) const;

 private:
  Rule theta_rule_;
  Rule x_rule_;
  std::vector<double> weighted_density_;  // [theta][x], includes x weights
  std::vector<double> cos_, sin_;
};

double husimi_from_kernel(const DensityMatrix& rho, PhasePoint pt, const QuadratureScheme& scheme);

ScalarField husimi_field_from_kernel(const DensityMatrix& rho, const GridSpec& grid,
                                     const QuadratureScheme& scheme, unsigned threads = 0);
ScalarField husimi_field_direct(const DensityMatrix& rho, const GridSpec& grid,
                                unsigned threads = 0);

/// Husimi estimate (1/2π)·mean(M^{q,p}) over homodyne outcomes, with
/// standard error (1/2π)·SD/√n <= 2/√n. Requires n >= 2. The reduction order is fixed, so the result
/// does not depend on `threads`.
MCEstimate husimi_mc_estimate(std::span<const QuadratureSample> samples, PhasePoint pt,
                              unsigned threads = 1);

std::vector<MCEstimate> husimi_field_mc(std::span<const QuadratureSample> samples,
                                        const GridSpec& grid, unsigned threads = 0);

/// |e^{-|w-z|^2} - (1/√π)∮∫ M^{q,p}(θ,x) e^{-(x-ũ)^2} dθdx/2π| with
/// (q, p) = √2(Re z, Im z) and ũ = √2 Re(w e^{-iθ}). Requires |z|, |w| <= 4.
double coherent_identity_check(Complex z, Complex w, const QuadratureScheme& scheme);

/// Error of the Gauss–Hermite value of ∫ H_{2k}(x) e^{-(x-y)^2} dx against
/// √π 2^{2k} y^{2k}: relative for y != 0, absolute at y = 0 (k >= 1).
/// Requires k <= 12 and |y| <= 3.
double hermite_gaussian_moment_check(int k, double y);

/// |∫ W_ρ along {q cosθ + p sinθ = x} - ρ^{Q_θ}(x)|, with the line
/// integral by Gauss–Legendre over arclength in [-L, L], L = √(2·dim) + 6.
/// Requires |x| <= 6.
double radon_wigner_check(const DensityMatrix& rho, double theta, double x, int nodes = 240);

}  // namespace tomokernel
