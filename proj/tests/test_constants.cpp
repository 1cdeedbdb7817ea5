#include "mader/constants.hpp"
#include "mader/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mader;

namespace {
constexpr double kPi = std::numbers::pi;

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
}  // namespace

TEST_CASE("sphere_area values") {
  CHECK(sphere_area(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rel_close(sphere_area(1), 2 * kPi, 1e-15));
  CHECK(rel_close(sphere_area(2), 4 * kPi, 1e-15));
  CHECK(rel_close(sphere_area(3), 2 * kPi * kPi, 1e-15));
  CHECK_THROWS_AS(sphere_area(-1), std::invalid_argument);
}

TEST_CASE("sphere_area recurrence") {
  for (int m = 2; m <= 30; ++m) {
    CHECK(rel_close(sphere_area(m), 2 * kPi * sphere_area(m - 2) / (m - 1), 1e-12));
  }
}

TEST_CASE("gamma: Lanczos accuracy and exact half-integers") {
  for (double x = 0.5; x <= 50.0; x += 0.37) {
    CHECK(rel_close(gamma_lanczos(x), std::tgamma(x), 1e-13));
  }
  CHECK(gamma_fn(5.0) == 24.0);
  CHECK(rel_close(gamma_fn(0.5), std::sqrt(kPi), 1e-15));
  CHECK(rel_close(gamma_fn(3.5), 15.0 / 8.0 * std::sqrt(kPi), 1e-15));
}

TEST_CASE("inversion_constant examples") {
  const Space e32(SpaceKind::euclidean, 3, 2);
  CHECK(rel_close(inversion_constant(e32, Theorem::thm1_even).value, 8 * kPi, 1e-14));
  CHECK(rel_close(inversion_constant(e32, Theorem::thm2).value, -2 * kPi, 1e-14));
  const Space s21(SpaceKind::sphere, 2, 1);
  CHECK(rel_close(inversion_constant(s21, Theorem::thm1_odd).value, 4 * kPi, 1e-14));
  const Space s32(SpaceKind::sphere, 3, 2);
  CHECK(rel_close(inversion_constant(s32, Theorem::thm2).value, -4 * kPi, 1e-14));
  const Space e21(SpaceKind::euclidean, 2, 1);
  CHECK(rel_close(inversion_constant(e21, Theorem::thm1_odd).value, 4 * kPi, 1e-14));
  const Space h32(SpaceKind::hyperbolic, 3, 2);
  CHECK(rel_close(inversion_constant(h32, Theorem::thm1_even).value, 8 * kPi, 1e-14));
}

TEST_CASE("sphere even-k conventions") {
  // c = 2 sigma_{n-k-1} sigma_k sigma_{k-1} / sigma_n; S^4, k = 2: c = 12 pi
  const Space s42(SpaceKind::sphere, 4, 2);
  const double c = 2 * sphere_area(1) * sphere_area(2) * sphere_area(1) / sphere_area(4);
  CHECK(rel_close(c, 12 * kPi, 1e-14));
  CHECK(rel_close(inversion_constant(s42, Theorem::thm1_even, SphereConvention::printed).value, c, 1e-14));
  CHECK(rel_close(inversion_constant(s42, Theorem::thm1_even).value, 2 * c, 1e-14));
  // k = 4 flips the sign of the derived constant
  const Space s54(SpaceKind::sphere, 5, 4);
  CHECK(inversion_constant(s54, Theorem::thm1_even).value < 0);
  CHECK(inversion_constant(s54, Theorem::thm1_even, SphereConvention::printed).value > 0);
}

TEST_CASE("inversion_constant parity errors") {
  const Space e32(SpaceKind::euclidean, 3, 2);
  CHECK_THROWS_AS(inversion_constant(e32, Theorem::thm1_odd), std::invalid_argument);
  const Space e21(SpaceKind::euclidean, 2, 1);
  CHECK_THROWS_AS(inversion_constant(e21, Theorem::thm1_even), std::invalid_argument);
  CHECK_THROWS_AS(inversion_constant(e21, Theorem::thm2), std::invalid_argument);
}

TEST_CASE("lambda_weight") {
  CHECK(lambda_weight(Space(SpaceKind::euclidean, 3, 2), 7.0) == 1.0);
  CHECK(rel_close(lambda_weight(Space(SpaceKind::sphere, 4, 3), 0.6), 0.64, 1e-15));
  CHECK(lambda_weight(Space(SpaceKind::hyperbolic, 2, 1), 3.0) == 1.0);
  CHECK(rel_close(lambda_weight(Space(SpaceKind::hyperbolic, 4, 3), 0.5), 1.25, 1e-15));
  CHECK_THROWS_AS(lambda_weight(Space(SpaceKind::sphere, 3, 2), 1.0), std::invalid_argument);
}

TEST_CASE("c_k values and quadrature") {
  CHECK(rel_close(c_k_value(2), 1.0, 1e-15));
  CHECK(rel_close(c_k_value(1), kPi / 2, 1e-15));
  CHECK(rel_close(c_k_value(3), kPi / 4, 1e-15));
  for (int k = 1; k <= 8; ++k) {
    const double q = integrate_endpoint_singular(
        [k](double v, double, double to_one) { return std::pow(to_one * (1 + v), 0.5 * k - 1); }, 0, 1);
    CHECK(std::abs(c_k_value(k) - q) < 1e-10);
  }
  CHECK_THROWS_AS(c_k_value(0), std::invalid_argument);
}

TEST_CASE("theta_k closed forms and quadrature") {
  CHECK(theta_k(3.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rel_close(theta_k(2.0, 1), std::acosh(2.0), 1e-15));
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(theta_k(1.0, k)) < 1e-15);
  for (int k = 1; k <= 5; ++k) {
    for (double u : {1.1, 2.0, 5.0}) {
      const double q = integrate_endpoint_singular(
          [k](double v, double from_one, double) { return std::pow(from_one * (v + 1), 0.5 * k - 1); },
          1.0, u);
      CHECK(std::abs(theta_k(u, k) - q) < 1e-10 * std::max(1.0, q));
    }
  }
  CHECK_THROWS_AS(theta_k(0.5, 2), std::invalid_argument);
}

TEST_CASE("classical constants") {
  CHECK(rel_close(mader_A0(2), 1 / (2 * kPi), 1e-15));
  CHECK(rel_close(mader_A1(3, MaderConvention::printed), -1 / (4 * kPi), 1e-15));
  CHECK(rel_close(mader_A1(3), 1 / (4 * kPi), 1e-15));
  CHECK_THROWS_AS(mader_A0(3), std::invalid_argument);
  CHECK_THROWS_AS(mader_A1(4), std::invalid_argument);
}
