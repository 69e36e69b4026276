#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tomokernel {

using Complex = std::complex<double>;

inline constexpr int kDefaultDim = 64;

/// Validation tolerances for density matrices.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

/// A point (q, p) of phase space. The associated complex amplitude is
/// z = (q + ip)/√2, so |z|^2 = (q^2 + p^2)/2.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  static PhasePoint from_amplitude(Complex z) noexcept;
  Complex amplitude() const noexcept;
  double amplitude_norm2() const noexcept { return 0.5 * (q * q + p * p); }
};

/// A state in the Fock basis truncated to `dim` levels. Instances are
/// always Hermitian, unit-trace and positive semidefinite.
class DensityMatrix {
 public:
  /// Symmetrizes (m + m†)/2 and validates; throws DomainError on failure.
  static DensityMatrix from_matrix(const Eigen::MatrixXcd& m);

  int dim() const noexcept { return static_cast<int>(elems_.rows()); }
  const Eigen::MatrixXcd& elems() const noexcept { return elems_; }
  Complex operator()(int m, int n) const { return elems_(m, n); }

  /// One past the largest Fock index carrying a nonzero matrix element.
  /// Sums over the basis can stop here without changing the result.
  int support() const noexcept { return support_; }

  double purity() const;

 private:
  explicit DensityMatrix(Eigen::MatrixXcd elems);
  Eigen::MatrixXcd elems_;
  int support_ = 0;
};

/// L²-normalized Hermite function h_n(x), by the three-term recurrence on
/// normalized functions.
double hermite_function(int n, double x);

/// h_0(x) .. h_{count-1}(x) written to `out` (size >= count).
void hermite_functions(double x, std::span<double> out);

/// Fock coefficients e^{-|z|^2/2} z^n / √(n!) for n < dim, not renormalized.
Eigen::VectorXcd coherent_amplitudes(Complex z, int dim);

/// Throws TruncationError unless |z|^2 <= dim/4.
void require_truncation_adequate(double amplitude_norm2, int dim);
inline void require_truncation_adequate(Complex z, int dim) {
  require_truncation_adequate(std::norm(z), dim);
}

DensityMatrix make_number_state(int n, int dim);
DensityMatrix make_coherent_state(Complex z, int dim);
DensityMatrix make_thermal_state(double nbar, int dim);

/// Pure state Σ c_n |n⟩ (normalized here) from (n, c_n) pairs.
DensityMatrix make_superposition(std::span<const std::pair<int, Complex>> amplitudes, int dim);

/// Convex combination Σ w_i ρ_i; weights are normalized to sum to one.
DensityMatrix make_mixture(std::span<const double> weights,
                           std::span<const DensityMatrix> components);

/// Husimi function (1/2π)⟨z|ρ|z⟩ at the given point.
double husimi_direct(const DensityMatrix& rho, PhasePoint pt);

/// Wigner function, normalized to unit integral over dq dp, from the
/// Laguerre expansion of the Fock matrix elements.
double wigner(const DensityMatrix& rho, PhasePoint pt);

}  // namespace tomokernel
