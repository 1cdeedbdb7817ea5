#include "mader/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mader;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss_legendre two-point rule") {
  const auto q = gauss_legendre<double>(2);
  CHECK(q.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(q.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre weights sum to 2 and rules are exact to degree 2n-1") {
  for (int n : {1, 3, 7, 20, 64, 200, 512}) {
    const auto q = gauss_legendre<double>(n);
    double sum = 0.0;
    for (double w : q.weights) sum += w;
    CHECK(std::abs(sum - 2.0) < 1e-13);
    for (int i = 0; i < n; ++i) CHECK(std::abs(q.nodes[i] + q.nodes[n - 1 - i]) < 1e-15);
    if (n <= 20) {
      for (int d = 0; d <= 2 * n - 1; ++d) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], d);
        const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
        CHECK(std::abs(s - exact) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(gauss_legendre<double>(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre<double>(513), std::invalid_argument);
}

TEST_CASE("gauss_legendre integrals") {
  CHECK(integrate_gl([](double x) { return std::pow(x, 4); }, -1, 1, 3) ==
        doctest::Approx(0.4).epsilon(1e-15));
  const double half_gauss = integrate_gl([](double t) { return std::exp(-t * t); }, 0.0, 8.0, 64);
  CHECK(std::abs(half_gauss - std::sqrt(kPi) / 2) < 1e-12);
}

TEST_CASE("quad_log_singular examples") {
  CHECK(std::abs(quad_log_singular([](double v) { return std::log(v); }, 0, 1, 0) + 1.0) < 1e-10);
  const double s = 0.3;
  const double expected = 0.3 * std::log(0.3) + 0.7 * std::log(0.7) - 1.0;
  CHECK(std::abs(quad_log_singular([&](double v) { return v == s ? 0.0 : std::log(std::abs(v - s)); },
                                   0, 1, s) -
                 expected) < 1e-10);
  // self-convergence: two tolerances agree
  auto g = [](double x) { return x == 0.0 ? 0.0 : std::sqrt(1 - x * x) * std::log(std::abs(x)); };
  const double coarse = quad_log_singular(g, -1, 1, 0, 1e-8);
  const double fine = quad_log_singular(g, -1, 1, 0, 1e-13);
  CHECK(std::abs(coarse - fine) < 1e-10);
  // closed form: -(pi/4)(1 + 2 ln 2)
  CHECK(std::abs(fine + kPi / 4 * (1 + 2 * std::log(2.0))) < 1e-10);
  CHECK_THROWS_AS(quad_log_singular(g, 0, 1, 2.0), std::invalid_argument);
}

TEST_CASE("integrate_adaptive rejects non-integrable blow-up") {
  CHECK_THROWS(integrate_adaptive([](double x) { return x == 0.0 ? 0.0 : 1.0 / x; }, 0.0, 1.0, 1e-12));
}

TEST_CASE("integrate_endpoint_singular handles algebraic endpoints") {
  // int_0^1 (1 - x)^{-1/2} dx = 2 with the distance to b passed exactly
  const double v = integrate_endpoint_singular(
      [](double, double, double to_b) { return 1.0 / std::sqrt(to_b); }, 0.0, 1.0);
  CHECK(std::abs(v - 2.0) < 1e-12);
}

TEST_CASE("endpoint_derivative examples") {
  RadialProfile cube;
  for (int i = 0; i <= 10; ++i) {
    cube.grid.push_back(0.1 * i);
    cube.values.push_back(std::pow(0.1 * i, 3));
  }
  CHECK(std::abs(endpoint_derivative(cube, 3, 6).value - 6.0) < 1e-10);

  RadialProfile gauss;
  RadialProfile sine;
  for (int j = 0; j <= 24; ++j) {
    const double r = 0.02 * j;
    gauss.grid.push_back(r);
    gauss.values.push_back(std::exp(-r * r));
    sine.grid.push_back(r);
    sine.values.push_back(std::sin(r));
  }
  CHECK(std::abs(endpoint_derivative(gauss, 2, 8).value + 2.0) < 1e-5);
  CHECK(std::abs(endpoint_derivative(gauss, 2, 12, FitBasis::even).value + 2.0) < 1e-9);
  CHECK(std::abs(endpoint_derivative(sine, 1, 8).value - 1.0) < 1e-8);
}

TEST_CASE("endpoint_derivative is exact on polynomials up to fit degree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int degree = 2; degree <= 8; ++degree) {
    std::vector<double> c(static_cast<std::size_t>(degree + 1));
    for (double& v : c) v = coef(rng);
    RadialProfile p;
    for (int j = -12; j <= 12; ++j) {
      const double t = 0.05 * j;
      double y = 0.0;
      for (int i = degree; i >= 0; --i) y = y * t + c[static_cast<std::size_t>(i)];
      p.grid.push_back(t);
      p.values.push_back(y);
    }
    for (int order = 0; order < degree; ++order) {
      const double expected = std::tgamma(order + 1.0) * c[static_cast<std::size_t>(order)];
      const double got = endpoint_derivative(p, order, degree).value;
      CHECK(std::abs(got - expected) < 1e-10 * std::max(1.0, std::tgamma(order + 1.0) * std::pow(20.0, order)));
    }
  }
}

TEST_CASE("endpoint_derivative argument checks") {
  RadialProfile p;
  for (int j = 0; j < 6; ++j) {
    p.grid.push_back(j);
    p.values.push_back(j);
  }
  CHECK_THROWS_AS(endpoint_derivative(p, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(endpoint_derivative(p, 1, 4), std::invalid_argument);
  p.grid[2] = p.grid[1];
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(endpoint_derivative(p, 1, 2), std::invalid_argument);
}

TEST_CASE("chebyshev interpolant reproduces smooth functions") {
  const ChebyshevInterpolant c([](double x) { return std::exp(x) * std::cos(3 * x); }, -0.5, 1.0, 30);
  for (double x : {-0.5, -0.2, 0.1, 0.77, 1.0}) {
    CHECK(std::abs(c(x) - std::exp(x) * std::cos(3 * x)) < 1e-13);
  }
}
