#include "tomokernel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tomokernel/errors.hpp"
#include "tomokernel/parallel.hpp"
#include "tomokernel/rng.hpp"

namespace tomokernel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kSamplesPerStream = 1 << 16;

Eigen::MatrixXd hermite_matrix(std::span<const double> xs, int count) {
  Eigen::MatrixXd h(static_cast<Eigen::Index>(xs.size()), count);
  std::vector<double> row(count);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    hermite_functions(xs[i], row);
    for (int n = 0; n < count; ++n) h(static_cast<Eigen::Index>(i), n) = row[n];
  }
  return h;
}

// Re(ρ_mn e^{-i(m-n)θ}); the imaginary part is antisymmetric and drops out
// of the quadratic form h^T C h.
Eigen::MatrixXd rotated_real_part(const DensityMatrix& rho, double theta) {
  const int s = rho.support();
  Eigen::VectorXcd phase(s);
  for (int n = 0; n < s; ++n) phase(n) = std::polar(1.0, -n * theta);
  const auto block = rho.elems().topLeftCorner(s, s);
  return (phase.asDiagonal() * block * phase.conjugate().asDiagonal()).real();
}

void densities_from_hermite(const Eigen::MatrixXd& h, const Eigen::MatrixXd& b,
                            std::span<double> out) {
  const Eigen::MatrixXd hb = h * b;
  for (Eigen::Index i = 0; i < h.rows(); ++i) out[i] = hb.row(i).dot(h.row(i));
}

double sampler_half_width(const DensityMatrix& rho, const SamplerGrid& grid) {
  return grid.x_limit > 0.0 ? grid.x_limit : std::sqrt(2.0 * rho.dim()) + 5.0;
}

SamplerTable table_from_density(double theta, std::vector<double> grid,
                                std::span<const double> density) {
  SamplerTable table;
  table.theta = theta;
  table.cdf.resize(grid.size());
  table.cdf[0] = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double left = std::max(density[i - 1], 0.0);
    const double right = std::max(density[i], 0.0);
    table.cdf[i] = table.cdf[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (left + right);
  }
  const double mass = table.cdf.back();
  if (!(std::abs(mass - 1.0) <= kSamplerMassTol)) {
    std::ostringstream msg;
    msg << "sampler table at theta = " << theta << " has mass " << mass
        << "; the Fock cutoff or x-grid is inadequate";
    throw NumericError(msg.str());
  }
  for (double& c : table.cdf) c /= mass;
  table.cdf.back() = 1.0;
  table.grid = std::move(grid);
  return table;
}

std::vector<double> sampler_grid_nodes(double half_width, int count) {
  if (count < 2) throw DomainError("sampler grid needs at least two nodes");
  std::vector<double> grid(count);
  const double step = 2.0 * half_width / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = -half_width + step * i;
  return grid;
}

}  // namespace

double wrap_phase(double theta) noexcept {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double quad_density(const DensityMatrix& rho, double theta, double x) {
  double out = 0.0;
  quad_density_many(rho, theta, std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

void quad_density_many(const DensityMatrix& rho, double theta, std::span<const double> xs,
                       std::span<double> out) {
  if (out.size() != xs.size()) throw DomainError("quad_density_many: size mismatch");
  const Eigen::MatrixXd h = hermite_matrix(xs, rho.support());
  densities_from_hermite(h, rotated_real_part(rho, wrap_phase(theta)), out);
}

std::vector<double> quad_density_table(const DensityMatrix& rho, std::span<const double> thetas,
                                       std::span<const double> xs, unsigned threads) {
  const Eigen::MatrixXd h = hermite_matrix(xs, rho.support());
  std::vector<double> table(thetas.size() * xs.size());
  parallel_for(thetas.size(), threads, [&](std::size_t j) {
    densities_from_hermite(h, rotated_real_part(rho, wrap_phase(thetas[j])),
                           std::span<double>(table).subspan(j * xs.size(), xs.size()));
  });
  return table;
}

double quad_cdf(const SamplerTable& table, double x) noexcept {
  const auto& g = table.grid;
  if (x <= g.front()) return 0.0;
  if (x >= g.back()) return 1.0;
  const auto it = std::upper_bound(g.begin(), g.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - g.begin()) - 1;
  const double t = (x - g[i]) / (g[i + 1] - g[i]);
  return std::clamp(table.cdf[i] + t * (table.cdf[i + 1] - table.cdf[i]), 0.0, 1.0);
}

double quad_inverse_cdf(const SamplerTable& table, double u) noexcept {
  const auto& c = table.cdf;
  const auto it = std::upper_bound(c.begin(), c.end(), u);
  if (it == c.begin()) return table.grid.front();
  if (it == c.end()) return table.grid.back();
  const std::size_t i = static_cast<std::size_t>(it - c.begin()) - 1;
  const double width = c[i + 1] - c[i];
  const double t = width > 0.0 ? (u - c[i]) / width : 0.0;
  return table.grid[i] + t * (table.grid[i + 1] - table.grid[i]);
}

SamplerTable build_sampler(const DensityMatrix& rho, double theta, const SamplerGrid& grid) {
  std::vector<double> nodes = sampler_grid_nodes(sampler_half_width(rho, grid), grid.x_nodes);
  std::vector<double> density(nodes.size());
  quad_density_many(rho, theta, nodes, density);
  return table_from_density(wrap_phase(theta), std::move(nodes), density);
}

std::vector<QuadratureSample> sample_eht(const DensityMatrix& rho, std::int64_t n,
                                         std::uint64_t seed, const SamplerGrid& grid,
                                         unsigned threads) {
  if (n < 1) throw DomainError("sample_eht: n must be positive");
  const std::vector<double> nodes =
      sampler_grid_nodes(sampler_half_width(rho, grid), grid.x_nodes);
  std::vector<double> thetas(kPhaseBins);
  for (int b = 0; b < kPhaseBins; ++b) thetas[b] = kTwoPi * b / kPhaseBins;

  const std::vector<double> density = quad_density_table(rho, thetas, nodes, threads);
  std::vector<SamplerTable> tables(kPhaseBins);
  parallel_for(tables.size(), threads, [&](std::size_t b) {
    tables[b] = table_from_density(
        thetas[b], nodes, std::span<const double>(density).subspan(b * nodes.size(), nodes.size()));
  });

  std::vector<QuadratureSample> samples(static_cast<std::size_t>(n));
  const std::size_t streams = static_cast<std::size_t>((n + kSamplesPerStream - 1) / kSamplesPerStream);
  parallel_for(streams, threads, [&](std::size_t s) {
    Xoshiro256 rng(stream_seed(seed, s));
    const std::int64_t begin = static_cast<std::int64_t>(s) * kSamplesPerStream;
    const std::int64_t end = std::min(n, begin + kSamplesPerStream);
    for (std::int64_t i = begin; i < end; ++i) {
      const std::uint32_t bin = rng.below(kPhaseBins);
      const double u = rng.uniform();
      samples[static_cast<std::size_t>(i)] = {thetas[bin], quad_inverse_cdf(tables[bin], u)};
    }
  });
  return samples;
}

}  // namespace tomokernel
