#include "tomokernel/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tomokernel/errors.hpp"

namespace tomokernel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int compute_support(const Eigen::MatrixXcd& m) {
  for (int k = static_cast<int>(m.rows()) - 1; k >= 0; --k) {
    if (m.row(k).cwiseAbs().maxCoeff() != 0.0 || m.col(k).cwiseAbs().maxCoeff() != 0.0)
      return k + 1;
  }
  return 1;
}

}  // namespace

PhasePoint PhasePoint::from_amplitude(Complex z) noexcept {
  return {std::numbers::sqrt2 * z.real(), std::numbers::sqrt2 * z.imag()};
}

Complex PhasePoint::amplitude() const noexcept { return {kInvSqrt2 * q, kInvSqrt2 * p}; }

DensityMatrix::DensityMatrix(Eigen::MatrixXcd elems)
    : elems_(std::move(elems)), support_(compute_support(elems_)) {}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw DomainError("density matrix must be square and non-empty");
  if (!m.allFinite()) throw DomainError("density matrix has non-finite entries");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max |ρ - ρ†| = " << asym << ")";
    throw DomainError(msg.str());
  }
  Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  const double trace = sym.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace " << trace << " differs from 1";
    throw DomainError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -kPositivityTol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (eigenvalue " << smallest << ")";
    throw DomainError(msg.str());
  }
  return DensityMatrix(std::move(sym));
}

double DensityMatrix::purity() const { return (elems_ * elems_).trace().real(); }

void hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (out.size() == 1) return;
  out[1] = std::numbers::sqrt2 * x * out[0];
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double np1 = static_cast<double>(n + 1);
    out[n + 1] = std::sqrt(2.0 / np1) * x * out[n] - std::sqrt(n / np1) * out[n - 1];
  }
}

double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: n must be nonnegative");
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  hermite_functions(x, h);
  return h.back();
}

Eigen::VectorXcd coherent_amplitudes(Complex z, int dim) {
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * z / std::sqrt(static_cast<double>(n));
  return c;
}

void require_truncation_adequate(double amplitude_norm2, int dim) {
  if (!(amplitude_norm2 <= 0.25 * dim)) {
    std::ostringstream msg;
    msg << "|z|^2 = " << amplitude_norm2 << " exceeds dim/4 = " << 0.25 * dim
        << "; increase the Fock cutoff";
    throw TruncationError(msg.str());
  }
}

DensityMatrix make_number_state(int n, int dim) {
  if (dim < 1) throw DomainError("dim must be positive");
  if (n < 0 || n >= dim) throw DomainError("number state index must satisfy 0 <= n < dim");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(n, n) = 1.0;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix make_coherent_state(Complex z, int dim) {
  if (dim < 1) throw DomainError("dim must be positive");
  require_truncation_adequate(z, dim);
  Eigen::VectorXcd c = coherent_amplitudes(z, dim);
  c /= c.norm();
  return DensityMatrix::from_matrix(c * c.adjoint());
}

DensityMatrix make_thermal_state(double nbar, int dim) {
  if (dim < 1) throw DomainError("dim must be positive");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("nbar must be finite and >= 0");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  const double ratio = nbar / (1.0 + nbar);
  double w = 1.0;
  for (int n = 0; n < dim; ++n) {
    diag(n) = w;
    w *= ratio;
  }
  diag /= diag.sum();
  Eigen::MatrixXcd m = diag.cast<Complex>().asDiagonal();
  return DensityMatrix::from_matrix(m);
}

DensityMatrix make_superposition(std::span<const std::pair<int, Complex>> amplitudes, int dim) {
  if (dim < 1) throw DomainError("dim must be positive");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  for (const auto& [n, amp] : amplitudes) {
    if (n < 0 || n >= dim) throw DomainError("superposition index out of range");
    c(n) += amp;
  }
  const double norm = c.norm();
  if (!(norm > 0.0)) throw DomainError("superposition has zero norm");
  c /= norm;
  return DensityMatrix::from_matrix(c * c.adjoint());
}

DensityMatrix make_mixture(std::span<const double> weights,
                           std::span<const DensityMatrix> components) {
  if (weights.size() != components.size() || components.empty())
    throw DomainError("mixture needs one weight per component");
  const int dim = components.front().dim();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("mixture weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("mixture weights sum to zero");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].dim() != dim) throw DomainError("mixture components differ in dim");
    m += (weights[i] / total) * components[i].elems();
  }
  return DensityMatrix::from_matrix(m);
}

double husimi_direct(const DensityMatrix& rho, PhasePoint pt) {
  require_truncation_adequate(pt.amplitude_norm2(), rho.dim());
  const Complex z = pt.amplitude();
  const int s = rho.support();
  const Eigen::VectorXcd c = coherent_amplitudes(z, s);
  const Complex expectation = c.dot(rho.elems().topLeftCorner(s, s) * c);
  if (std::abs(expectation.imag()) > 1e-12)
    throw NumericError("husimi_direct: non-real expectation value");
  const double value = expectation.real() / (2.0 * std::numbers::pi);
  if (value < -1e-12) throw NumericError("husimi_direct: negative value");
  return value;
}

double wigner(const DensityMatrix& rho, PhasePoint pt) {
  // W_{|m><n|} for m = n + k >= n:
  //   ((-1)^n / π) √(n!/m!) (2 z̄)^k e^{-2|z|^2} L_n^{(k)}(4|z|^2),
  // and W_{|n><m|} is its complex conjugate.
  const Complex z = pt.amplitude();
  const double r2 = std::norm(z);
  const double arg = 4.0 * r2;
  const Complex two_zbar = 2.0 * std::conj(z);
  const int s = rho.support();
  const auto& m = rho.elems();

  double total = 0.0;
  Complex phase_k = 1.0;  // (2 z̄)^k / √(k!)
  for (int k = 0; k < s; ++k) {
    if (k > 0) phase_k *= two_zbar / std::sqrt(static_cast<double>(k));
    // Running factor √(n! k!/(n+k)!) and Laguerre recurrence in n.
    double lag_prev = 0.0, lag = 1.0;
    double ratio = 1.0;
    Complex partial = 0.0;
    for (int n = 0; n + k < s; ++n) {
      if (n > 0) {
        const double next =
            ((2.0 * (n - 1) + 1.0 + k - arg) * lag - (n - 1.0 + k) * lag_prev) / n;
        lag_prev = lag;
        lag = next;
        ratio *= std::sqrt(static_cast<double>(n) / (n + k));
      }
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      partial += m(n + k, n) * (sign * ratio * lag);
    }
    const Complex term = partial * phase_k;
    total += (k == 0) ? term.real() : 2.0 * term.real();
  }
  return total * std::exp(-2.0 * r2) / std::numbers::pi;
}

}  // namespace tomokernel
