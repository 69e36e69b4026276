#include "tomokernel/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tomokernel/errors.hpp"
#include "tomokernel/kernel.hpp"
#include "tomokernel/parallel.hpp"

namespace tomokernel {

namespace {

constexpr std::int64_t kReductionChunk = 1 << 16;

// Welford accumulator; chunks are merged left to right so the result is
// independent of how chunks were scheduled.
struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

// Gauss–Hermite rule in extended precision: double-precision roots polished
// by Newton on the normalized recurrence.
void gauss_hermite_extended(int n, std::vector<HighPrecision>& nodes,
                            std::vector<HighPrecision>& weights) {
  const Rule seed = gauss_hermite(n);
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  const HighPrecision pim4 = 1 / sqrt(sqrt(pi));
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    HighPrecision z = seed.nodes[i];
    HighPrecision pp;
    for (int it = 0; it < 8; ++it) {
      HighPrecision p1 = pim4, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        HighPrecision p3 = p2;
        p2 = p1;
        p1 = z * sqrt(HighPrecision(2) / j) * p2 - sqrt(HighPrecision(j - 1) / j) * p3;
      }
      pp = sqrt(HighPrecision(2 * n)) * p2;
      z -= p1 / pp;
    }
    nodes[i] = z;
    weights[i] = 2 / (pp * pp);
  }
}

}  // namespace

QuadratureScheme QuadratureScheme::for_dim(int dim) {
  return {128, 160, std::sqrt(2.0 * dim) + 6.0};
}

void QuadratureScheme::validate() const {
  if (theta_nodes < 16 || x_nodes < 32 || !(x_limit >= 6.0) || !std::isfinite(x_limit)) {
    std::ostringstream msg;
    msg << "quadrature scheme requires theta_nodes >= 16, x_nodes >= 32, x_limit >= 6 (got "
        << theta_nodes << ", " << x_nodes << ", " << x_limit << ")";
    throw DomainError(msg.str());
  }
}

void GridSpec::validate() const {
  if (!(q_min < q_max) || !(p_min < p_max) || nq < 1 || np < 1 || !std::isfinite(q_min) ||
      !std::isfinite(q_max) || !std::isfinite(p_min) || !std::isfinite(p_max))
    throw DomainError("grid requires q_min < q_max, p_min < p_max and nq, np >= 1");
}

double GridSpec::q_at(int i) const noexcept {
  return nq == 1 ? q_min : q_min + (q_max - q_min) * i / (nq - 1);
}

double GridSpec::p_at(int j) const noexcept {
  return np == 1 ? p_min : p_min + (p_max - p_min) * j / (np - 1);
}

KernelTransform::KernelTransform(const DensityMatrix& rho, const QuadratureScheme& scheme,
                                 unsigned threads) {
  scheme.validate();
  theta_rule_ = periodic_trapezoid(scheme.theta_nodes);
  x_rule_ = gauss_legendre(scheme.x_nodes, -scheme.x_limit, scheme.x_limit);
  weighted_density_ = quad_density_table(rho, theta_rule_.nodes, x_rule_.nodes, threads);
  const std::size_t nx = x_rule_.size();
  for (std::size_t j = 0; j < theta_rule_.size(); ++j)
    for (std::size_t i = 0; i < nx; ++i) weighted_density_[j * nx + i] *= x_rule_.weights[i];
  cos_.resize(theta_rule_.size());
  sin_.resize(theta_rule_.size());
  for (std::size_t j = 0; j < theta_rule_.size(); ++j) {
    cos_[j] = std::cos(theta_rule_.nodes[j]);
    sin_[j] = std::sin(theta_rule_.nodes[j]);
  }
}

double KernelTransform::operator()(PhasePoint pt) const {
  const std::size_t nx = x_rule_.size();
  double total = 0.0;
  for (std::size_t j = 0; j < theta_rule_.size(); ++j) {
    const double shift = pt.q * cos_[j] + pt.p * sin_[j];
    const double* wd = weighted_density_.data() + j * nx;
    double row = 0.0;
    for (std::size_t i = 0; i < nx; ++i) row += kernel_profile(x_rule_.nodes[i] - shift) * wd[i];
    total += row;
  }
  // (2π/T) trapezoid weight, 1/2π from the dθ/2π measure of E_ht, and 1/2π
  // relating e^{-|w-z|^2} to the Husimi density.
  return total / (2.0 * std::numbers::pi * static_cast<double>(theta_rule_.size()));
}

double husimi_from_kernel(const DensityMatrix& rho, PhasePoint pt, const QuadratureScheme& scheme) {
  return KernelTransform(rho, scheme, 1)(pt);
}

ScalarField husimi_field_from_kernel(const DensityMatrix& rho, const GridSpec& grid,
                                     const QuadratureScheme& scheme, unsigned threads) {
  grid.validate();
  const KernelTransform transform(rho, scheme, threads);
  ScalarField field{grid, std::vector<double>(grid.size())};
  parallel_for(field.values.size(), threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / grid.np);
    const int j = static_cast<int>(idx % grid.np);
    field.values[idx] = transform({grid.q_at(i), grid.p_at(j)});
  });
  return field;
}

ScalarField husimi_field_direct(const DensityMatrix& rho, const GridSpec& grid, unsigned threads) {
  grid.validate();
  ScalarField field{grid, std::vector<double>(grid.size())};
  parallel_for(field.values.size(), threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / grid.np);
    const int j = static_cast<int>(idx % grid.np);
    field.values[idx] = husimi_direct(rho, {grid.q_at(i), grid.p_at(j)});
  });
  return field;
}

MCEstimate husimi_mc_estimate(std::span<const QuadratureSample> samples, PhasePoint pt,
                              unsigned threads) {
  if (samples.size() < 2) throw DomainError("husimi_mc_estimate needs at least two samples");
  const std::size_t n = samples.size();
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * kReductionChunk;
    const std::size_t end = std::min(n, begin + kReductionChunk);
    Moments m;
    for (std::size_t i = begin; i < end; ++i)
      m.push(kernel_closed(pt, samples[i].theta, samples[i].x));
    partial[c] = m;
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);
  const double variance = total.m2 / static_cast<double>(total.n - 1);
  constexpr double scale = 0.5 * std::numbers::inv_pi;
  return {scale * total.mean,
          scale * std::sqrt(std::max(variance, 0.0) / static_cast<double>(total.n)), total.n};
}

std::vector<MCEstimate> husimi_field_mc(std::span<const QuadratureSample> samples,
                                        const GridSpec& grid, unsigned threads) {
  grid.validate();
  std::vector<MCEstimate> out(grid.size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const int i = static_cast<int>(idx / grid.np);
    const int j = static_cast<int>(idx % grid.np);
    out[idx] = husimi_mc_estimate(samples, {grid.q_at(i), grid.p_at(j)}, threads);
  }
  return out;
}

double coherent_identity_check(Complex z, Complex w, const QuadratureScheme& scheme) {
  if (std::abs(z) > 4.0 || std::abs(w) > 4.0)
    throw DomainError("coherent_identity_check requires |z|, |w| <= 4");
  scheme.validate();
  const PhasePoint pt = PhasePoint::from_amplitude(z);
  const Rule theta_rule = periodic_trapezoid(scheme.theta_nodes);
  const Rule x_rule = gauss_legendre(scheme.x_nodes, -scheme.x_limit, scheme.x_limit);
  double total = 0.0;
  for (double theta : theta_rule.nodes) {
    const double u_rot = std::numbers::sqrt2 * (w * std::polar(1.0, -theta)).real();
    double row = 0.0;
    for (std::size_t i = 0; i < x_rule.size(); ++i) {
      const double x = x_rule.nodes[i];
      const double d = x - u_rot;
      row += x_rule.weights[i] * kernel_closed(pt, theta, x) * std::exp(-d * d);
    }
    total += row;
  }
  const double rhs = total / (static_cast<double>(theta_rule.size()) * std::sqrt(std::numbers::pi));
  const double lhs = std::exp(-std::norm(w - z));
  return std::abs(lhs - rhs);
}

double hermite_gaussian_moment_check(int k, double y) {
  if (k < 0 || k > 12) throw DomainError("hermite_gaussian_moment_check requires 0 <= k <= 12");
  if (!(std::abs(y) <= 3.0)) throw DomainError("hermite_gaussian_moment_check requires |y| <= 3");
  // ∫ H_{2k}(y + t) e^{-t^2} dt is a polynomial integral, exact for a rule
  // with more than k nodes. Extended precision absorbs the cancellation
  // between O(√(2^{2k}(2k)!)) terms.
  const int n = k + 8;
  std::vector<HighPrecision> nodes, weights;
  gauss_hermite_extended(n, nodes, weights);
  const HighPrecision yy = y;
  HighPrecision sum = 0;
  for (int i = 0; i < n; ++i) {
    const HighPrecision x = yy + nodes[i];
    HighPrecision prev = 0, cur = 1;
    for (int j = 0; j < 2 * k; ++j) {
      HighPrecision next = 2 * x * cur - 2 * j * prev;
      prev = cur;
      cur = next;
    }
    sum += weights[i] * cur;
  }
  const HighPrecision exact =
      sqrt(boost::math::constants::pi<HighPrecision>()) * pow(2 * yy, 2 * k);
  if (k >= 1 && y == 0.0) return static_cast<double>(abs(sum));
  return static_cast<double>(abs(sum - exact) / abs(exact));
}

double radon_wigner_check(const DensityMatrix& rho, double theta, double x, int nodes) {
  if (!(std::abs(x) <= 6.0)) throw DomainError("radon_wigner_check requires |x| <= 6");
  const double half = std::sqrt(2.0 * rho.dim()) + 6.0;
  const Rule rule = gauss_legendre(nodes, -half, half);
  const double c = std::cos(theta), s = std::sin(theta);
  double line = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    line += rule.weights[i] * wigner(rho, {x * c - t * s, x * s + t * c});
  }
  return std::abs(line - quad_density(rho, theta, x));
}

}  // namespace tomokernel
