#include "mader/inversion.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mader;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("first and second inversion agree on R^3") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  const auto f = make_phantom(e3, "gaussian");
  const auto a = invert_thm1(e3, f, base_point(e3));
  const auto b = invert_thm2(e3, f, base_point(e3));
  CHECK(std::abs(a.estimate - b.estimate) < 2e-3);
  CHECK(a.derivative_order == 3);
  CHECK(b.derivative_order == 2);
  REQUIRE(a.truth.has_value());
  CHECK(*a.rel_error() < 1e-3);
}

TEST_CASE("translation equivariance") {
  const Space e2(SpaceKind::euclidean, 2, 1);
  PhantomOptions moved;
  moved.center = {0.4, -0.9};
  const auto f0 = make_phantom(e2, "gaussian");
  const auto f1 = make_phantom(e2, "gaussian", moved);
  const Point<double> x0{Eigen::Vector2d(0.2, 0.1)};
  const Point<double> x1{Eigen::Vector2d(0.6, -0.8)};
  CHECK(std::abs(invert_thm1(e2, f0, x0).estimate - invert_thm1(e2, f1, x1).estimate) < 1e-8);
}

TEST_CASE("inversion is linear in f") {
  const Space s2(SpaceKind::sphere, 2, 1);
  PhantomOptions twice;
  twice.amplitude = 2.0;
  const auto one = invert_thm1(s2, make_phantom(s2, "zonal"), base_point(s2));
  const auto two = invert_thm1(s2, make_phantom(s2, "zonal", twice), base_point(s2));
  CHECK(std::abs(two.estimate - 2 * one.estimate) < 1e-10);
}

TEST_CASE("mader_radial_average examples") {
  const auto g3 = gaussian_hyperplane_data(3, Eigen::VectorXd::Zero(3));
  for (double s : {0.0, 0.5, 1.2}) {
    CHECK(std::abs(mader_radial_average(3, g3, Eigen::VectorXd::Zero(3), s) - kPi * std::exp(-s * s)) < 1e-12);
  }
  // off-center, n = 3: average over theta of pi exp(-(s + a cos)^2)
  const double a = 0.5;
  const double s = 0.3;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  x[0] = a;
  const double expected = kPi * std::sqrt(kPi) / (4 * a) * (std::erf(s + a) - std::erf(s - a));
  CHECK(std::abs(mader_radial_average(3, g3, x, s) - expected) < 1e-12);
}

TEST_CASE("classical inversion recovers the gaussian") {
  const auto g3 = gaussian_hyperplane_data(3, Eigen::VectorXd::Zero(3));
  const auto three = mader_classical(3, g3, Eigen::VectorXd::Zero(3), {}, 1.0, 1.0);
  CHECK(std::abs(three.estimate - 1.0) < 1e-3);
  const auto g2 = gaussian_hyperplane_data(2, Eigen::VectorXd::Zero(2));
  const auto two = mader_classical(2, g2, Eigen::VectorXd::Zero(2), {}, 1.0, 1.0);
  CHECK(std::abs(two.estimate - 1.0) < 1e-3);
}

TEST_CASE("inversion argument checks") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  CHECK_THROWS_AS(invert_thm2(Space(SpaceKind::euclidean, 2, 1), make_phantom(Space(SpaceKind::euclidean, 2, 1), "gaussian"),
                              base_point(Space(SpaceKind::euclidean, 2, 1))),
                  std::invalid_argument);
  InversionConfig cfg;
  cfg.fit_degree = 2;
  CHECK_THROWS_AS(invert_thm1(e3, make_phantom(e3, "gaussian"), base_point(e3), cfg), std::invalid_argument);
  CHECK(default_fit_degree(3, {}) == 9);
}
