#include "mader/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mader;

namespace {

const SpaceKind kKinds[] = {SpaceKind::euclidean, SpaceKind::sphere, SpaceKind::hyperbolic};

Point<double> random_point(const Space& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(sp.n);
  for (int i = 0; i < sp.n; ++i) v[i] = normal(rng);
  const double d = 0.3 * std::abs(normal(rng));
  Point<double> x{Eigen::VectorXd::Zero(sp.ambient())};
  if (sp.kind == SpaceKind::euclidean) {
    x.coords = v;
  } else if (sp.kind == SpaceKind::sphere) {
    x.coords.head(sp.n) = std::sin(d) * v.normalized();
    x.coords[sp.n] = std::cos(d);
    if (normal(rng) < 0) x.coords = -x.coords;  // southern hemisphere too
  } else {
    x.coords.head(sp.n) = std::sinh(d) * v.normalized();
    x.coords[sp.n] = std::cosh(d);
  }
  return x;
}

}  // namespace

TEST_CASE("space validation") {
  CHECK_THROWS_AS(Space(SpaceKind::euclidean, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Space(SpaceKind::euclidean, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(Space(SpaceKind::sphere, 3, 0), std::invalid_argument);
  CHECK(parse_space_kind("hyperbolic") == SpaceKind::hyperbolic);
  CHECK_THROWS_AS(parse_space_kind("torus"), std::invalid_argument);
}

TEST_CASE("point validation") {
  const Space s(SpaceKind::sphere, 2, 1);
  CHECK_THROWS_AS(validate_point(s, Point<double>{Eigen::Vector3d(1, 1, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(validate_point(s, Point<double>{Eigen::Vector2d(1, 0)}), std::invalid_argument);
  const Space h(SpaceKind::hyperbolic, 2, 1);
  CHECK_THROWS_AS(validate_point(h, Point<double>{Eigen::Vector3d(0, 0, -1)}), std::invalid_argument);
  CHECK_NOTHROW(validate_point(h, base_point(h)));
}

TEST_CASE("distance_rho examples") {
  const Space e(SpaceKind::euclidean, 2, 1);
  Geodesic<double> line{Eigen::MatrixXd(Eigen::Vector2d(1, 0)), Eigen::Vector2d(0, 3)};
  CHECK(distance_rho(e, base_point(e), line) == doctest::Approx(3.0).epsilon(1e-15));

  const Space s(SpaceKind::sphere, 2, 1);
  Eigen::MatrixXd equator = Eigen::MatrixXd::Zero(3, 2);
  equator(0, 0) = 1;
  equator(1, 1) = 1;
  CHECK(distance_rho(s, base_point(s), Geodesic<double>{equator, {}}) ==
        doctest::Approx(1.0).epsilon(1e-15));

  const Space h(SpaceKind::hyperbolic, 2, 1);
  const Point<double> x = apply(g_theta(h, 0.7), base_point(h));
  CHECK(std::abs(lorentz<double>(x.coords, x.coords) - 1.0) < 1e-12);
  CHECK(std::abs(distance_rho(h, x, reference_geodesic(h)) - std::sinh(0.7)) < 1e-12);
}

TEST_CASE("haar_rotation: determinism, group membership, zero mean") {
  const Space e(SpaceKind::euclidean, 3, 2);
  const auto a = haar_rotation<double>(e, 42);
  const auto b = haar_rotation<double>(e, 42);
  CHECK((a.matrix - b.matrix).norm() == 0.0);
  CHECK((a.matrix.transpose() * a.matrix - Eigen::Matrix3d::Identity()).norm() < 1e-10);
  CHECK(std::abs(a.matrix.determinant() - 1.0) < 1e-10);

  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(3, 3);
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) mean += haar_rotation<double>(e, sub_seed(99, i)).matrix;
  mean /= samples;
  CHECK(mean.cwiseAbs().maxCoeff() < 0.05);

  const Space h(SpaceKind::hyperbolic, 3, 1);
  const auto g = haar_rotation<double>(h, 5);
  const Eigen::MatrixXd j = lorentz_metric<double>(4);
  CHECK((g.matrix.transpose() * j * g.matrix - j).norm() < 1e-10);
  CHECK((g.matrix.col(3) - Eigen::Vector4d(0, 0, 0, 1)).norm() == 0.0);
}

TEST_CASE("geodesic_at_distance examples") {
  const Space e3(SpaceKind::euclidean, 3, 2);
  const Rotation<double> id{Eigen::MatrixXd::Identity(3, 3)};
  const auto plane = geodesic_at_distance(e3, base_point(e3), 2.0, id);
  CHECK(std::abs(distance_rho(e3, base_point(e3), plane) - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(plane.offset[2]) - 2.0) < 1e-12);
  CHECK(plane.basis.col(0).dot(Eigen::Vector3d::UnitZ()) == doctest::Approx(0.0));
  CHECK(distance_rho(e3, base_point(e3), geodesic_at_distance(e3, base_point(e3), 0.0, id)) == 0.0);

  const Space h(SpaceKind::hyperbolic, 2, 1);
  const Rotation<double> idh{Eigen::MatrixXd::Identity(3, 3)};
  const auto xi = geodesic_at_distance(h, base_point(h), std::sinh(0.7), idh);
  CHECK(std::abs(distance_rho(h, base_point(h), xi) - std::sinh(0.7)) < 1e-10);

  const Space s(SpaceKind::sphere, 2, 1);
  CHECK_THROWS_AS(geodesic_at_distance(s, base_point(s), 1.0, Rotation<double>{Eigen::MatrixXd::Identity(3, 3)}),
                  std::invalid_argument);
}

TEST_CASE("round trip distance for random (x, r, g) in every space") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (SpaceKind kind : kKinds) {
    for (const auto [n, k] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}, std::pair{5, 2}}) {
      const Space sp(kind, n, k);
      for (int i = 0; i < 100; ++i) {
        const Point<double> x = random_point(sp, rng);
        const double r = kind == SpaceKind::sphere ? 0.999 * unit(rng) : 3.0 * unit(rng);
        const auto g = haar_rotation<double>(sp, sub_seed(11, i));
        const auto xi = geodesic_at_distance(sp, x, r, g);
        CHECK_NOTHROW(validate_geodesic(sp, xi));
        CHECK(std::abs(distance_rho(sp, x, xi) - r) < 1e-9);
      }
    }
  }
}

TEST_CASE("isometry invariance of distance_rho") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (SpaceKind kind : kKinds) {
    const Space sp(kind, 4, 2);
    for (int i = 0; i < 20; ++i) {
      const Point<double> x = random_point(sp, rng);
      const auto xi = geodesic_at_distance(sp, random_point(sp, rng), kind == SpaceKind::sphere ? 0.5 : 1.3,
                                           haar_rotation<double>(sp, sub_seed(3, i)));
      // stabilizer rotations for sphere/hyperbolic, full O(n) for euclidean
      const auto g = haar_rotation<double>(sp, sub_seed(4, i));
      const double before = distance_rho(sp, x, xi);
      const double after = distance_rho(sp, apply(g, x), apply(g, xi));
      CHECK(std::abs(before - after) < 1e-10);
    }
  }
}

TEST_CASE("hyperboloid constraint under g_theta") {
  const Space h(SpaceKind::hyperbolic, 3, 1);
  for (double theta : {-2.0, -0.3, 0.0, 0.7, 3.5}) {
    const Point<double> x = apply(g_theta(h, theta), base_point(h));
    CHECK(std::abs(lorentz<double>(x.coords, x.coords) - 1.0) < 1e-12 * std::cosh(2 * theta));
    CHECK(x.coords[3] > 0);
  }
}

TEST_CASE("transport carries the base point to x") {
  std::mt19937_64 rng(5);
  for (SpaceKind kind : {SpaceKind::sphere, SpaceKind::hyperbolic}) {
    const Space sp(kind, 3, 1);
    for (int i = 0; i < 20; ++i) {
      const Point<double> x = random_point(sp, rng);
      const auto t = transport(sp, x);
      CHECK((t.matrix * base_point(sp).coords - x.coords).norm() < 1e-12);
    }
  }
}
