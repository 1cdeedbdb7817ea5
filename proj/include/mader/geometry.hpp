#pragma once

#include "mader/numerics.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mader {

enum class SpaceKind { euclidean, sphere, hyperbolic };

inline std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::sphere: return "sphere";
    case SpaceKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

inline SpaceKind parse_space_kind(const std::string& name) {
  if (name == "euclidean") return SpaceKind::euclidean;
  if (name == "sphere") return SpaceKind::sphere;
  if (name == "hyperbolic") return SpaceKind::hyperbolic;
  throw std::invalid_argument("unknown space '" + name + "' (euclidean, sphere, hyperbolic)");
}

/// Model space X with totally geodesic k-dimensional submanifolds.
struct Space {
  SpaceKind kind = SpaceKind::euclidean;
  int n = 2;
  int k = 1;

  Space() = default;
  Space(SpaceKind kind_, int n_, int k_) : kind(kind_), n(n_), k(k_) {
    if (n < 2) throw std::invalid_argument("space: n must be >= 2, got " + std::to_string(n));
    if (k < 1 || k > n - 1) {
      throw std::invalid_argument("space: k must lie in [1, n-1], got k=" + std::to_string(k));
    }
  }

  /// Length of a coordinate vector of a point.
  int ambient() const { return kind == SpaceKind::euclidean ? n : n + 1; }
};

template <typename Scalar = double>
struct Point {
  VectorX<Scalar> coords;
};

/// Totally geodesic submanifold. Euclidean: orthonormal basis of the direction
/// plane plus an orthogonal offset. Sphere: orthonormal basis of a (k+1)-plane.
/// Hyperbolic: k spacelike columns then one timelike column, pseudo-orthonormal
/// for the Lorentz form. offset is empty outside the euclidean case.
template <typename Scalar = double>
struct Geodesic {
  MatrixX<Scalar> basis;
  VectorX<Scalar> offset;
};

template <typename Scalar = double>
struct Rotation {
  MatrixX<Scalar> matrix;
};

inline constexpr double kGeometryTol = 1e-8;

/// [x,y] = -x_1 y_1 - ... - x_n y_n + x_{n+1} y_{n+1}
template <typename Scalar, typename A, typename B>
Scalar lorentz(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  const Eigen::Index last = x.size() - 1;
  return x[last] * y[last] - x.head(last).dot(y.head(last));
}

template <typename Scalar>
MatrixX<Scalar> lorentz_metric(int dim) {
  MatrixX<Scalar> j = -MatrixX<Scalar>::Identity(dim, dim);
  j(dim - 1, dim - 1) = 1;
  return j;
}

template <typename Scalar>
void validate_point(const Space& space, const Point<Scalar>& x) {
  using std::abs;
  if (x.coords.size() != space.ambient()) {
    throw std::invalid_argument("point has " + std::to_string(x.coords.size()) +
                                " coordinates, space needs " + std::to_string(space.ambient()));
  }
  if (space.kind == SpaceKind::sphere && abs(x.coords.squaredNorm() - 1) > kGeometryTol) {
    throw std::invalid_argument("point is not on the unit sphere");
  }
  if (space.kind == SpaceKind::hyperbolic) {
    if (abs(lorentz<Scalar>(x.coords, x.coords) - 1) > kGeometryTol || x.coords[space.n] <= 0) {
      throw std::invalid_argument("point is not on the upper sheet [x,x] = 1");
    }
  }
}

template <typename Scalar>
void validate_geodesic(const Space& space, const Geodesic<Scalar>& xi) {
  const int dim = space.ambient();
  const int cols = space.kind == SpaceKind::euclidean ? space.k : space.k + 1;
  if (xi.basis.rows() != dim || xi.basis.cols() != cols) {
    throw std::invalid_argument("geodesic basis has shape " + std::to_string(xi.basis.rows()) + "x" +
                                std::to_string(xi.basis.cols()) + ", expected " +
                                std::to_string(dim) + "x" + std::to_string(cols));
  }
  MatrixX<Scalar> gram;
  MatrixX<Scalar> expected = MatrixX<Scalar>::Identity(cols, cols);
  if (space.kind == SpaceKind::hyperbolic) {
    gram = -xi.basis.transpose() * lorentz_metric<Scalar>(dim) * xi.basis;
    expected(cols - 1, cols - 1) = -1;
  } else {
    gram = xi.basis.transpose() * xi.basis;
  }
  if ((gram - expected).cwiseAbs().maxCoeff() > kGeometryTol) {
    throw std::invalid_argument("geodesic basis is not (pseudo-)orthonormal");
  }
  if (space.kind == SpaceKind::euclidean) {
    if (xi.offset.size() != dim) throw std::invalid_argument("geodesic offset has wrong length");
    if ((xi.basis.transpose() * xi.offset).cwiseAbs().maxCoeff() > kGeometryTol) {
      throw std::invalid_argument("geodesic offset is not orthogonal to its basis");
    }
  }
}

/// Origin, north pole e_{n+1}, or hyperboloid vertex e_{n+1}.
template <typename Scalar = double>
Point<Scalar> base_point(const Space& space) {
  Point<Scalar> x{VectorX<Scalar>::Zero(space.ambient())};
  if (space.kind != SpaceKind::euclidean) x.coords[space.n] = 1;
  return x;
}

/// rho(x, xi): d, sin d or sinh d of the distance from x to xi.
template <typename Scalar>
Scalar distance_rho(const Space& space, const Point<Scalar>& x, const Geodesic<Scalar>& xi) {
  using std::sqrt;
  validate_point(space, x);
  validate_geodesic(space, xi);
  const auto& b = xi.basis;
  switch (space.kind) {
    case SpaceKind::euclidean: {
      const VectorX<Scalar> d = x.coords - xi.offset;
      return (d - b * (b.transpose() * d)).norm();
    }
    case SpaceKind::sphere:
      return (x.coords - b * (b.transpose() * x.coords)).norm();
    case SpaceKind::hyperbolic: {
      VectorX<Scalar> perp = x.coords;
      for (Eigen::Index i = 0; i < b.cols(); ++i) {
        const auto col = b.col(i);
        perp -= (lorentz<Scalar>(x.coords, col) / lorentz<Scalar>(col, col)) * col;
      }
      const Scalar q = -lorentz<Scalar>(perp, perp);
      return q > 0 ? sqrt(q) : Scalar(0);
    }
  }
  return 0;
}

/// Geodesic distance between two points.
template <typename Scalar>
Scalar point_distance(const Space& space, const Point<Scalar>& x, const Point<Scalar>& y) {
  using std::acosh;
  using std::atan2;
  switch (space.kind) {
    case SpaceKind::euclidean: return (x.coords - y.coords).norm();
    case SpaceKind::sphere:
      return atan2((x.coords - y.coords).norm() * (x.coords + y.coords).norm(),
                   2 * x.coords.dot(y.coords));
    case SpaceKind::hyperbolic: {
      const Scalar c = lorentz<Scalar>(x.coords, y.coords);
      return c > 1 ? acosh(c) : Scalar(0);
    }
  }
  return 0;
}

template <typename Scalar>
Point<Scalar> apply(const Rotation<Scalar>& g, const Point<Scalar>& x) {
  return {g.matrix * x.coords};
}

template <typename Scalar>
Geodesic<Scalar> apply(const Rotation<Scalar>& g, const Geodesic<Scalar>& xi) {
  Geodesic<Scalar> out{g.matrix * xi.basis, xi.offset};
  if (xi.offset.size() > 0) out.offset = g.matrix * xi.offset;
  return out;
}

/// splitmix64 mix; used to derive independent per-sample seeds.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Haar-distributed element of SO(dim): QR of a Gaussian matrix, R diagonal
/// made positive, one column flipped when the determinant is -1.
template <typename Scalar = double>
MatrixX<Scalar> haar_orthogonal(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(sub_seed(seed, 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixX<Scalar> a(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) a(i, j) = Scalar(normal(rng));
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(a);
  MatrixX<Scalar> q = qr.householderQ() * MatrixX<Scalar>::Identity(dim, dim);
  const MatrixX<Scalar> r = qr.matrixQR();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

/// Haar rotation of SO(n), embedded to act on the first n ambient coordinates.
template <typename Scalar = double>
Rotation<Scalar> haar_rotation(const Space& space, std::uint64_t seed) {
  MatrixX<Scalar> m = MatrixX<Scalar>::Identity(space.ambient(), space.ambient());
  m.topLeftCorner(space.n, space.n) = haar_orthogonal<Scalar>(space.n, seed);
  return {m};
}

/// Fixed isometry r_x with r_x(base point) = x. Euclidean: identity (the
/// translation is applied separately). Sphere: minimal rotation in the plane of
/// e_{n+1} and x. Hyperbolic: the boost carrying e_{n+1} to x.
template <typename Scalar>
Rotation<Scalar> transport(const Space& space, const Point<Scalar>& x) {
  validate_point(space, x);
  const int dim = space.ambient();
  MatrixX<Scalar> id = MatrixX<Scalar>::Identity(dim, dim);
  switch (space.kind) {
    case SpaceKind::euclidean: return {id};
    case SpaceKind::sphere: {
      auto minimal = [&](const VectorX<Scalar>& p, const VectorX<Scalar>& q) -> MatrixX<Scalar> {
        const VectorX<Scalar> s = p + q;
        return id - s * s.transpose() / (1 + p.dot(q)) + 2 * q * p.transpose();
      };
      VectorX<Scalar> pole = VectorX<Scalar>::Zero(dim);
      pole[space.n] = 1;
      if (x.coords[space.n] >= 0) return {minimal(pole, x.coords)};
      // near the south pole: half-turn in the (e_1, e_{n+1}) plane first
      MatrixX<Scalar> flip = id;
      flip(0, 0) = -1;
      flip(space.n, space.n) = -1;
      return {minimal(-pole, x.coords) * flip};
    }
    case SpaceKind::hyperbolic: {
      const VectorX<Scalar> v = x.coords.head(space.n);
      const Scalar t = x.coords[space.n];
      MatrixX<Scalar> m(dim, dim);
      m.topLeftCorner(space.n, space.n) =
          MatrixX<Scalar>::Identity(space.n, space.n) + v * v.transpose() / (1 + t);
      m.topRightCorner(space.n, 1) = v;
      m.bottomLeftCorner(1, space.n) = v.transpose();
      m(space.n, space.n) = t;
      return {m};
    }
  }
  return {id};
}

/// The one-parameter rotation g_theta. Sphere: acts on the (e_{k+1}, e_{n+1})
/// plane by [[sin, cos], [-cos, sin]]. Hyperbolic: boost in (e_1, e_{n+1}).
template <typename Scalar>
Rotation<Scalar> g_theta(const Space& space, Scalar theta) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  const int dim = space.ambient();
  MatrixX<Scalar> m = MatrixX<Scalar>::Identity(dim, dim);
  if (space.kind == SpaceKind::sphere) {
    const int a = space.k;
    const int b = space.n;
    m(a, a) = sin(theta);
    m(a, b) = cos(theta);
    m(b, a) = -cos(theta);
    m(b, b) = sin(theta);
  } else if (space.kind == SpaceKind::hyperbolic) {
    const int b = space.n;
    m(0, 0) = cosh(theta);
    m(0, b) = sinh(theta);
    m(b, 0) = sinh(theta);
    m(b, b) = cosh(theta);
  } else {
    throw std::invalid_argument("g_theta: not defined for euclidean space");
  }
  return {m};
}

/// Reference submanifold xi_0 through the base point.
template <typename Scalar = double>
Geodesic<Scalar> reference_geodesic(const Space& space) {
  const int dim = space.ambient();
  Geodesic<Scalar> xi;
  switch (space.kind) {
    case SpaceKind::euclidean:
      xi.basis = MatrixX<Scalar>::Identity(dim, space.k);
      xi.offset = VectorX<Scalar>::Zero(dim);
      break;
    case SpaceKind::sphere:
      xi.basis = MatrixX<Scalar>::Identity(dim, space.k + 1);
      break;
    case SpaceKind::hyperbolic:
      xi.basis = MatrixX<Scalar>::Zero(dim, space.k + 1);
      for (int i = 0; i <= space.k; ++i) xi.basis(space.n - space.k + i, i) = 1;
      break;
  }
  return xi;
}

/// Submanifold at rho-distance r from x, in the orientation selected by g.
template <typename Scalar>
Geodesic<Scalar> geodesic_at_distance(const Space& space, const Point<Scalar>& x, Scalar r,
                                      const Rotation<Scalar>& g) {
  using std::asin;
  using std::asinh;
  validate_point(space, x);
  if (r < 0) throw std::invalid_argument("geodesic_at_distance: r must be >= 0");
  const Geodesic<Scalar> ref = reference_geodesic<Scalar>(space);
  switch (space.kind) {
    case SpaceKind::euclidean: {
      Geodesic<Scalar> xi;
      xi.basis = g.matrix.leftCols(space.k);
      const VectorX<Scalar> p = x.coords + r * g.matrix.col(space.n - 1);
      xi.offset = p - xi.basis * (xi.basis.transpose() * p);
      return xi;
    }
    case SpaceKind::sphere: {
      if (r >= 1) throw std::invalid_argument("geodesic_at_distance: sphere needs r < 1");
      const MatrixX<Scalar> m = transport(space, x).matrix * g.matrix *
                                g_theta(space, asin(r)).matrix.transpose();
      return {m * ref.basis, {}};
    }
    case SpaceKind::hyperbolic: {
      const MatrixX<Scalar> m =
          transport(space, x).matrix * g.matrix * g_theta(space, -asinh(r)).matrix;
      return {m * ref.basis, {}};
    }
  }
  return ref;
}

/// Point at geodesic distance s from x in unit direction theta (length n).
template <typename Scalar, typename Dir>
Point<Scalar> point_at_distance(const Space& space, const Point<Scalar>& x,
                                const Rotation<Scalar>& rx, Scalar s,
                                const Eigen::MatrixBase<Dir>& theta) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  switch (space.kind) {
    case SpaceKind::euclidean: return {x.coords + s * theta};
    case SpaceKind::sphere: {
      VectorX<Scalar> y(space.n + 1);
      y.head(space.n) = sin(s) * theta;
      y[space.n] = cos(s);
      return {rx.matrix * y};
    }
    case SpaceKind::hyperbolic: {
      VectorX<Scalar> y(space.n + 1);
      y.head(space.n) = sinh(s) * theta;
      y[space.n] = cosh(s);
      return {rx.matrix * y};
    }
  }
  return x;
}

}  // namespace mader
