#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tomokernel/errors.hpp"
#include "tomokernel/integration.hpp"
#include "tomokernel/states.hpp"

using namespace tomokernel;

namespace {

void check_density_invariants(const DensityMatrix& rho) {
  const auto& m = rho.elems();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermitianTol);
  CHECK(std::abs(m.trace().real() - 1.0) <= kTraceTol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -kPositivityTol);
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("hermite_function values") {
  CHECK(hermite_function(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(hermite_function(1, 0.0) == 0.0);
  // Frozen from the exact-coefficient formula (40-digit evaluation).
  CHECK(std::abs(hermite_function(5, 1.3) - (-0.39939146281375073)) < 1e-15);
  CHECK(std::abs(hermite_function(5, 1.3) - static_cast<double>(oracle::hermite_function(5, 1.3L))) < 1e-15);
}

TEST_CASE("hermite_function agrees with exact coefficients for n <= 20") {
  for (int n = 0; n <= 20; ++n)
    for (double x : {-4.2, -1.7, -0.3, 0.0, 0.9, 2.5, 5.1}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(hermite_function(n, x) - static_cast<double>(oracle::hermite_function(n, x))) < 1e-13);
    }
}

TEST_CASE("hermite_function recurrence and orthonormality") {
  for (double x : {-2.0, 0.4, 3.3})
    for (int n = 1; n < 40; ++n) {
      const double lhs = hermite_function(n + 1, x);
      const double rhs = std::sqrt(2.0 / (n + 1)) * x * hermite_function(n, x) -
                         std::sqrt(static_cast<double>(n) / (n + 1)) * hermite_function(n - 1, x);
      CHECK(std::abs(lhs - rhs) <= 1e-15);
    }

  const Rule rule = gauss_legendre(200, -14.0, 14.0);
  std::vector<std::vector<double>> h(rule.size(), std::vector<double>(21));
  for (std::size_t i = 0; i < rule.size(); ++i) hermite_functions(rule.nodes[i], h[i]);
  double worst = 0.0;
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * h[i][m] * h[i][n];
      worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("number states") {
  const auto rho = make_number_state(0, 4);
  CHECK(rho(0, 0) == Complex(1.0));
  CHECK(rho.elems().cwiseAbs().sum() == 1.0);
  const auto two = make_number_state(2, 8);
  CHECK(two(2, 2) == Complex(1.0));
  CHECK(two.elems().cwiseAbs().sum() == 1.0);
  for (int dim : {1, 3, 17})
    for (int n = 0; n < dim; ++n) CHECK(make_number_state(n, dim).elems().trace().real() == 1.0);
  CHECK_THROWS_AS(make_number_state(4, 4), DomainError);
  CHECK_THROWS_AS(make_number_state(-1, 4), DomainError);
}

TEST_CASE("coherent states") {
  const auto vac = make_coherent_state({0.0, 0.0}, 8);
  CHECK((vac.elems() - make_number_state(0, 8).elems()).cwiseAbs().maxCoeff() == 0.0);

  const auto c = coherent_amplitudes({1.0, 0.0}, 32);
  double fact = 1.0;
  for (int n = 0; n < 32; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(std::abs(c(n)) - std::exp(-0.5) / std::sqrt(fact)) < 1e-15);
  }
  // Dropped Poisson tail for |z|=1, dim=32 is ~1.4e-36.
  CHECK(std::abs(c.norm() - 1.0) < 1e-12);

  for (Complex z : {Complex{0.3, -0.2}, Complex{1.0, 0.5}, Complex{-1.9, 1.2}}) {
    const auto rho = make_coherent_state(z, 32);
    check_density_invariants(rho);
    CHECK(std::abs(rho.purity() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(make_coherent_state({2.0, 1.0}, 16), TruncationError);
  CHECK_NOTHROW(make_coherent_state({2.0, 0.0}, 16));
}

TEST_CASE("thermal states") {
  const auto vac = make_thermal_state(0.0, 8);
  CHECK((vac.elems() - make_number_state(0, 8).elems()).cwiseAbs().maxCoeff() == 0.0);
  const auto th = make_thermal_state(0.5, 32);
  CHECK(th(0, 0).real() / th(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(th.elems().trace().real() - 1.0) <= 1e-14);
  check_density_invariants(th);
  CHECK_THROWS_AS(make_thermal_state(-0.1, 8), DomainError);
}

TEST_CASE("from_matrix rejects invalid matrices") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix::from_matrix(m));
  m(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), DomainError);  // not Hermitian
  m(1, 0) = Complex(0.1, 0.0);
  CHECK_NOTHROW(DensityMatrix::from_matrix(m));
  m(0, 1) = m(1, 0) = 0.8;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), DomainError);  // not positive
  m = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), DomainError);  // trace 2
}

TEST_CASE("constructor outputs satisfy density invariants") {
  for (const auto& s : fixtures::canonical_states()) {
    CAPTURE(s.name);
    check_density_invariants(s.rho);
  }
  const DensityMatrix parts[] = {make_number_state(1, 16), make_coherent_state({0.5, 0.5}, 16)};
  const double weights[] = {0.3, 0.7};
  check_density_invariants(make_mixture(weights, parts));
}

TEST_CASE("husimi_direct closed forms") {
  const auto vac = make_number_state(0, 16);
  CHECK(husimi_direct(vac, {0.0, 0.0}) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

  const Complex z0{1.2, -0.7};
  const auto coh = make_coherent_state(z0, 32);
  double worst = 0.0;
  for (double q = -2.8; q <= 2.8; q += 0.35)
    for (double p = -2.8; p <= 2.8; p += 0.35) {
      const PhasePoint pt{q, p};
      if (std::abs(pt.amplitude()) > 2.0) continue;
      worst = std::max(worst, std::abs(husimi_direct(coh, pt) - oracle::coherent_husimi(z0, pt.amplitude())));
    }
  CHECK(worst <= 1e-10);

  // |⟨z|1⟩|² = |z|² e^{-|z|²}
  const auto one = make_number_state(1, 16);
  for (PhasePoint pt : {PhasePoint{0.0, 0.0}, PhasePoint{1.0, -0.5}, PhasePoint{-2.0, 1.5}}) {
    const double r2 = pt.amplitude_norm2();
    CHECK(husimi_direct(one, pt) == doctest::Approx(r2 * std::exp(-r2) / (2.0 * std::numbers::pi)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(husimi_direct(vac, {3.0, 2.0}), TruncationError);
}

TEST_CASE("husimi_direct is nonnegative and normalized") {
  // The square [-L, L]² with L = 2√(2·dim) reaches past the truncation guard;
  // points outside |z|² <= dim/4 are not evaluable and are counted as zero.
  // At dim = 128 the mass beyond the guard disk is below 1e-11 for these states.
  const int dim = 128;
  const double L = 2.0 * std::sqrt(2.0 * dim);
  const std::array<std::pair<int, Complex>, 2> cat{{{0, 1.0}, {2, 1.0}}};
  const DensityMatrix states[] = {make_number_state(0, dim), make_number_state(1, dim),
                                  make_number_state(2, dim), make_superposition(cat, dim)};
  const int n = 641;
  const double h = 2.0 * L / (n - 1);
  for (const auto& rho : states) {
    double mass = 0.0, minimum = 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const PhasePoint pt{-L + h * i, -L + h * j};
        if (pt.amplitude_norm2() > 0.25 * dim) continue;
        const double v = husimi_direct(rho, pt);
        minimum = std::min(minimum, v);
        mass += v;
      }
    mass *= h * h;
    CHECK(minimum >= -1e-12);
    CHECK(std::abs(mass - 1.0) <= 1e-6);
  }
}

TEST_CASE("wigner values and normalization") {
  const auto vac = make_number_state(0, 8);
  const auto one = make_number_state(1, 8);
  CHECK(wigner(vac, {0.0, 0.0}) == doctest::Approx(std::numbers::inv_pi).epsilon(1e-15));
  CHECK(wigner(one, {0.0, 0.0}) == doctest::Approx(-std::numbers::inv_pi).epsilon(1e-15));

  // Coherent Wigner is (1/π) e^{-2|z - z0|²}.
  const Complex z0{0.8, -0.4};
  const auto coh = make_coherent_state(z0, 48);
  for (PhasePoint pt : {PhasePoint{0.0, 0.0}, PhasePoint{1.1, -0.6}, PhasePoint{-1.0, 2.0}})
    CHECK(std::abs(wigner(coh, pt) - std::exp(-2.0 * std::norm(pt.amplitude() - z0)) / std::numbers::pi) < 1e-12);

  const Rule rule = gauss_legendre(120, -12.0, 12.0);
  for (const auto& s : fixtures::canonical_states()) {
    CAPTURE(s.name);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
      for (std::size_t j = 0; j < rule.size(); ++j)
        total += rule.weights[i] * rule.weights[j] * wigner(s.rho, {rule.nodes[i], rule.nodes[j]});
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
}

}  // TEST_SUITE
