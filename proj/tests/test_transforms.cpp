#include "mader/numerics.hpp"
#include "mader/transforms.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mader;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("direction rules carry the sphere area") {
  for (int m = 1; m <= 5; ++m) {
    const auto& rule = direction_rule(m, 16);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    const double area = m == 1 ? 2.0 : 2 * std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0);
    CHECK(std::abs(sum - area) < 1e-12 * area);
    for (Eigen::Index j = 0; j < rule.dirs.cols(); ++j) CHECK(std::abs(rule.dirs.col(j).norm() - 1) < 1e-13);
  }
}

TEST_CASE("radon_forward examples") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  const auto g3 = make_phantom(e3, "gaussian");
  const Rotation<double> id3{Eigen::MatrixXd::Identity(3, 3)};
  for (double d : {0.0, 0.4, 1.3}) {
    const auto xi = geodesic_at_distance(e3, base_point(e3), d, id3);
    CHECK(std::abs(radon_forward(e3, g3, xi) - kPi * std::exp(-d * d)) < 1e-12);
  }
  const Space e2(SpaceKind::euclidean, 2, 1);
  const auto xi2 = geodesic_at_distance(e2, base_point(e2), 0.7, Rotation<double>{Eigen::MatrixXd::Identity(2, 2)});
  CHECK(std::abs(radon_forward(e2, make_phantom(e2, "gaussian"), xi2) - std::sqrt(kPi) * std::exp(-0.49)) < 1e-12);

  const Space s2(SpaceKind::sphere, 2, 1);
  CHECK(std::abs(radon_forward(s2, make_phantom(s2, "constant"), reference_geodesic<double>(s2)) - 2 * kPi) < 1e-12);

  const Space h2(SpaceKind::hyperbolic, 2, 1);
  PhantomOptions p4;
  p4.shape = 4;
  // int cosh(t)^{-4} dt = 4/3
  CHECK(std::abs(radon_forward(h2, make_phantom(h2, "radial", p4), reference_geodesic<double>(h2)) - 4.0 / 3) < 1e-10);
}

TEST_CASE("sphere_average examples") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  const auto g = make_phantom(e3, "gaussian");
  for (double s : {0.0, 0.3, 1.1}) CHECK(std::abs(sphere_average(e3, g, base_point(e3), s) - std::exp(-s * s)) < 1e-13);
  // off-center: mean of exp(-|y - c|^2) over |y| = s is exp(-s^2 - a^2) sinh(2as)/(2as)
  const Point<double> x{Eigen::Vector3d(0.6, 0.0, 0.0)};
  const double s = 0.8;
  const double a = 0.6;
  CHECK(std::abs(sphere_average(e3, g, x, s) - std::exp(-s * s - a * a) * std::sinh(2 * a * s) / (2 * a * s)) < 1e-12);

  const Space s2(SpaceKind::sphere, 2, 1);
  CHECK(std::abs(tilde_mean(s2, make_phantom(s2, "constant"), base_point(s2), 0.6) - 1.25) < 1e-13);
  CHECK(std::abs(spherical_mean(s2, make_phantom(s2, "constant"), base_point(s2), 0.3) - 1.0) < 1e-13);
  CHECK_THROWS_AS(spherical_mean(s2, make_phantom(s2, "constant"), base_point(s2), 1.0), std::invalid_argument);
}

TEST_CASE("polar integration of the means recovers the total mass") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  const auto g = make_phantom(e3, "gaussian");
  const double mass = 4 * kPi * integrate_gl([&](double s) { return sphere_average(e3, g, base_point(e3), s) * s * s; }, 0.0, 7.0, 96);
  CHECK(std::abs(mass - std::pow(kPi, 1.5)) < 1e-10);
}

TEST_CASE("means are invariant under rotations about the center") {
  const Space h3(SpaceKind::hyperbolic, 3, 1);
  PhantomOptions opts;
  opts.center = {0.3, -0.2, 0.1, std::sqrt(1 + 0.09 + 0.04 + 0.01)};
  const auto f = make_phantom(h3, "radial", opts);
  const Point<double> x = base_point(h3);
  const double before = sphere_average(h3, f, x, 0.7);
  const auto g = haar_rotation<double>(h3, 17);
  PhantomOptions moved = opts;
  const Eigen::VectorXd c = g.matrix * Eigen::Map<const Eigen::VectorXd>(opts.center.data(), 4);
  moved.center.assign(c.data(), c.data() + 4);
  CHECK(std::abs(sphere_average(h3, make_phantom(h3, "radial", moved), x, 0.7) - before) < 1e-12);
}

TEST_CASE("mean_profile matches pointwise means") {
  const Space s3(SpaceKind::sphere, 3, 2);
  const auto f = make_phantom(s3, "zonal");
  const std::vector<double> grid{0.0, 0.2, 0.5};
  const auto prof = mean_profile(s3, f, base_point(s3), grid, MeanVariant::tilde);
  REQUIRE(prof.values.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(prof.values[i] == tilde_mean(s3, f, base_point(s3), grid[i]));
  }
}

TEST_CASE("phantom registry") {
  CHECK_THROWS_AS(make_phantom(Space(SpaceKind::sphere, 2, 1), "gaussian"), std::invalid_argument);
  CHECK_THROWS_AS(make_phantom(Space(SpaceKind::euclidean, 2, 1), "nope"), std::invalid_argument);
  CHECK(phantom_ids(Space(SpaceKind::hyperbolic, 2, 1)).size() >= 2);
}
