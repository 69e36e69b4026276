#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tomokernel/errors.hpp"
#include "tomokernel/integration.hpp"
#include "tomokernel/quadrature.hpp"

using namespace tomokernel;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

double density_mean(const DensityMatrix& rho, double theta) {
  const Rule rule = gauss_legendre(160, -16.0, 16.0);
  double m = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    m += rule.weights[i] * rule.nodes[i] * quad_density(rho, theta, rule.nodes[i]);
  return m;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("quad_density closed forms") {
  const auto vac = make_number_state(0, 16);
  const auto one = make_number_state(1, 16);
  for (double theta : {0.0, 1.1, 4.0})
    for (double x : {-2.0, -0.5, 0.0, 1.3}) {
      const double g = std::exp(-x * x) / std::sqrt(std::numbers::pi);
      CHECK(quad_density(vac, theta, x) == doctest::Approx(g).epsilon(1e-14));
      CHECK(quad_density(one, theta, x) == doctest::Approx(2.0 * x * x * g).epsilon(1e-13).scale(1e-16));
    }

  const Complex z{1.0, 0.5};
  const auto coh = make_coherent_state(z, 64);
  double worst = 0.0;
  for (double theta : linspace(0.0, 6.0, 13))
    for (double x : linspace(-5.0, 5.0, 41))
      worst = std::max(worst, std::abs(quad_density(coh, theta, x) - oracle::coherent_quad_density(z, theta, x)));
  CHECK(worst < 1e-13);
}

TEST_CASE("phase convention lock") {
  const auto coh = make_coherent_state({1.0, 0.0}, 64);
  CHECK(std::abs(density_mean(coh, std::numbers::pi / 2)) < 1e-12);
  CHECK(density_mean(coh, 0.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  // Imaginary amplitude: the mean follows √2 Re(z e^{-iθ}) = √2 sin θ.
  const auto coh_i = make_coherent_state({0.0, 1.0}, 64);
  CHECK(density_mean(coh_i, std::numbers::pi / 2) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("normalization, positivity and double-covering parity") {
  const Rule rule = gauss_legendre(200, -18.0, 18.0);
  const auto grid = linspace(-8.0, 8.0, 2001);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> dens(grid.size()), flipped(grid.size()), neg_grid(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) neg_grid[i] = -grid[i];
  for (const auto& s : fixtures::canonical_states()) {
    CAPTURE(s.name);
    for (int t = 0; t < 8; ++t) {
      const double theta = angle(gen);
      double mass = 0.0;
      std::vector<double> at_nodes(rule.size());
      quad_density_many(s.rho, theta, rule.nodes, at_nodes);
      for (std::size_t i = 0; i < rule.size(); ++i) mass += rule.weights[i] * at_nodes[i];
      CHECK(std::abs(mass - 1.0) <= 1e-8);

      quad_density_many(s.rho, theta, grid, dens);
      quad_density_many(s.rho, theta + std::numbers::pi, neg_grid, flipped);
      double worst_parity = 0.0, minimum = 1.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst_parity = std::max(worst_parity, std::abs(dens[i] - flipped[i]));
        minimum = std::min(minimum, dens[i]);
      }
      CHECK(minimum >= -1e-12);
      CHECK(worst_parity <= 1e-12);
    }
  }
}

TEST_CASE("rotation invariance of phase-symmetric states") {
  const DensityMatrix states[] = {make_number_state(3, 64), make_thermal_state(0.5, 64)};
  for (const auto& rho : states)
    for (double x : {-1.7, 0.0, 0.6, 2.2}) {
      const double ref = quad_density(rho, 0.0, x);
      for (double theta : {0.4, 2.0, 3.9, 5.5}) CHECK(std::abs(quad_density(rho, theta, x) - ref) <= 1e-12);
    }
}

TEST_CASE("sampler tables") {
  const auto vac = make_number_state(0, 64);
  const SamplerTable table = build_sampler(vac, 0.0);
  CHECK(table.grid.size() == 4001);
  CHECK(table.grid.back() == doctest::Approx(std::sqrt(128.0) + 5.0));
  CHECK(table.cdf.front() <= 1e-8);
  CHECK(1.0 - table.cdf.back() <= 1e-8);
  for (std::size_t i = 1; i < table.cdf.size(); ++i) CHECK_FALSE(table.cdf[i] < table.cdf[i - 1]);
  CHECK(quad_cdf(table, -100.0) == 0.0);
  CHECK(quad_cdf(table, 100.0) == 1.0);
  CHECK(std::abs(quad_cdf(table, 0.0) - 0.5) <= 1e-6);
  // Mass check on the raw table: within 1e-10 for the vacuum Gaussian.
  CHECK_NOTHROW(build_sampler(vac, 0.0, {4001, 0.0}));

  const SamplerTable three = build_sampler(make_number_state(3, 64), 1.0);
  for (std::size_t i = 1; i < three.cdf.size(); ++i) CHECK_FALSE(three.cdf[i] < three.cdf[i - 1]);

  // Inverse-CDF round trip.
  for (double u : {0.01, 0.3, 0.5, 0.77, 0.999})
    CHECK(quad_cdf(table, quad_inverse_cdf(table, u)) == doctest::Approx(u).epsilon(1e-9));

  // A grid that truncates the density fails the mass check.
  CHECK_THROWS_AS(build_sampler(vac, 0.0, {401, 1.0}), NumericError);
}

TEST_CASE("sample_eht statistics") {
  const auto vac = make_number_state(0, 64);
  const std::int64_t n = 100000;
  const auto samples = sample_eht(vac, n, 1234);
  REQUIRE(samples.size() == static_cast<std::size_t>(n));
  double sum = 0.0, sum2 = 0.0;
  std::vector<int> hist(kPhaseBins, 0);
  for (const auto& s : samples) {
    CHECK_FALSE(s.theta < 0.0);
    CHECK(s.theta < 2.0 * std::numbers::pi);
    sum += s.x;
    sum2 += s.x * s.x;
    ++hist[static_cast<int>(std::lround(s.theta / (2.0 * std::numbers::pi) * kPhaseBins)) % kPhaseBins];
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) <= 4.0 * std::sqrt(0.5 / n));
  CHECK(std::abs(var - 0.5) <= 0.05 * 0.5);

  const double expected = static_cast<double>(n) / kPhaseBins;
  const double sigma = std::sqrt(expected * (1.0 - 1.0 / kPhaseBins));
  for (int count : hist) CHECK(std::abs(count - expected) <= 4.0 * sigma);
}

TEST_CASE("sample_eht determinism and thread independence") {
  const auto coh = make_coherent_state({0.5, -0.3}, 32);
  const auto a = sample_eht(coh, 150000, 42, {}, 1);
  const auto b = sample_eht(coh, 150000, 42, {}, 4);
  const auto c = sample_eht(coh, 150000, 43, {}, 1);
  REQUIRE(a.size() == b.size());
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a[i].theta == b[i].theta && a[i].x == b[i].x;
    differs = differs || a[i].x != c[i].x;
  }
  CHECK(same);
  CHECK(differs);
  CHECK_THROWS_AS(sample_eht(coh, 0, 1), DomainError);
}

}  // TEST_SUITE
