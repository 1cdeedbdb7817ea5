#include "mader/transforms.hpp"

#include "mader/constants.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace mader {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailTol = 1e-8;

Eigen::VectorXd phantom_center(const Space& space, const PhantomOptions& opts) {
  if (opts.center.empty()) return base_point<double>(space).coords;
  Point<double> c{Eigen::Map<const Eigen::VectorXd>(opts.center.data(),
                                                   static_cast<Eigen::Index>(opts.center.size()))};
  validate_point(space, c);
  return c.coords;
}

}  // namespace

std::vector<std::string> phantom_ids(const Space& space) {
  switch (space.kind) {
    case SpaceKind::euclidean: return {"gaussian", "constant"};
    case SpaceKind::sphere: return {"constant", "zonal"};
    case SpaceKind::hyperbolic: return {"radial", "constant"};
  }
  return {};
}

ScalarField make_phantom(const Space& space, const std::string& id, const PhantomOptions& opts) {
  const Eigen::VectorXd c = phantom_center(space, opts);
  const double amp = opts.amplitude;
  ScalarField f;
  f.name = id;
  f.center = c;
  if (id == "constant") {
    f.eval = [amp](const Eigen::VectorXd&) { return amp; };
    f.decay_scale = space.kind == SpaceKind::sphere ? kPi : std::numeric_limits<double>::infinity();
    return f;
  }
  if (id == "gaussian" && space.kind == SpaceKind::euclidean) {
    f.eval = [amp, c](const Eigen::VectorXd& y) { return amp * std::exp(-(y - c).squaredNorm()); };
    f.decay_scale = 6.5;
    f.parity_even = false;
    return f;
  }
  if (id == "zonal" && space.kind == SpaceKind::sphere) {
    const double kappa = opts.shape > 0 ? opts.shape : 2.0;
    f.eval = [amp, c, kappa](const Eigen::VectorXd& y) {
      const double d = y.dot(c);
      return amp * std::exp(-kappa * (1.0 - d * d));
    };
    f.decay_scale = kPi;
    return f;
  }
  if (id == "radial" && space.kind == SpaceKind::hyperbolic) {
    const double p = opts.shape > 0 ? opts.shape : 6.0;
    if (p <= space.n - 1) {
      throw std::invalid_argument("radial phantom: power must exceed n - 1 for integrability");
    }
    f.eval = [amp, c, p](const Eigen::VectorXd& y) {
      return amp * std::pow(lorentz<double>(y, c), -p);
    };
    // cosh^{-p}(T) e^{(n-1)T} < 1e-14
    f.decay_scale = (std::log(1e14) + p * std::log(2.0)) / (p - space.n + 1) + 1.0;
    f.parity_even = false;
    return f;
  }
  std::string known;
  for (const auto& name : phantom_ids(space)) known += (known.empty() ? "" : ", ") + name;
  throw std::invalid_argument("unknown phantom '" + id + "' for " + to_string(space.kind) +
                              " space (available: " + known + ")");
}

int direction_order_for(int m, int order) { return m <= 3 ? order : std::min(order, 20); }

namespace {

DirectionRule build_direction_rule(int m, int order) {
  DirectionRule rule;
  if (m == 1) {
    rule.dirs = Eigen::MatrixXd(1, 2);
    rule.dirs << -1.0, 1.0;
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (m == 2) {
    const int count = 2 * order;
    rule.dirs.resize(2, count);
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * kPi * j / count;
      rule.dirs(0, j) = std::cos(phi);
      rule.dirs(1, j) = std::sin(phi);
    }
    rule.weights.assign(count, 2.0 * kPi / count);
    return rule;
  }
  const auto& gl = cached_gauss_legendre(order);
  const DirectionRule& sub = direction_rule(m - 1, order);
  const auto subcount = static_cast<int>(sub.weights.size());
  rule.dirs.resize(m, order * subcount);
  rule.weights.resize(static_cast<std::size_t>(order * subcount));
  for (int i = 0; i < order; ++i) {
    double cos_polar = 0.0;
    double sin_polar = 0.0;
    double w = 0.0;
    if (m == 3) {
      // uniform in cos(polar) for S^2
      cos_polar = gl.nodes[i];
      sin_polar = std::sqrt((1.0 - cos_polar) * (1.0 + cos_polar));
      w = gl.weights[i];
    } else {
      const double phi = 0.5 * kPi * (gl.nodes[i] + 1.0);
      cos_polar = std::cos(phi);
      sin_polar = std::sin(phi);
      w = 0.5 * kPi * gl.weights[i] * std::pow(sin_polar, m - 2);
    }
    for (int j = 0; j < subcount; ++j) {
      const int col = i * subcount + j;
      rule.dirs(0, col) = cos_polar;
      rule.dirs.block(1, col, m - 1, 1) = sin_polar * sub.dirs.col(j);
      rule.weights[col] = w * sub.weights[j];
    }
  }
  return rule;
}

}  // namespace

const DirectionRule& direction_rule(int m, int order) {
  if (m < 1) throw std::invalid_argument("direction_rule: m must be >= 1");
  if (order < 1) throw std::invalid_argument("direction_rule: order must be >= 1");
  static std::recursive_mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const DirectionRule>> cache;
  std::lock_guard<std::recursive_mutex> lock(mutex);
  const auto key = std::make_pair(m, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<const DirectionRule>(build_direction_rule(m, order)))
             .first;
  }
  return *it->second;
}

namespace {

int radial_nodes(int order) { return std::max(16, order / 2); }

// Spacelike orthonormal frame of the tangent space of xi at c (hyperbolic).
Eigen::MatrixXd tangent_frame(const Eigen::MatrixXd& basis, const Eigen::VectorXd& c, int k) {
  Eigen::MatrixXd frame(basis.rows(), k);
  int found = 0;
  for (Eigen::Index i = 0; i < basis.cols() && found < k; ++i) {
    Eigen::VectorXd w = basis.col(i) - lorentz<double>(basis.col(i), c) * c;
    for (int j = 0; j < found; ++j) w += lorentz<double>(w, frame.col(j)) * frame.col(j);
    const double q = -lorentz<double>(w, w);
    if (q < 1e-10) continue;
    frame.col(found++) = w / std::sqrt(q);
  }
  if (found < k) throw std::runtime_error("radon_forward: degenerate hyperbolic frame");
  return frame;
}

void check_tail(double tail) {
  if (!(tail <= kTailTol)) {
    throw std::runtime_error("radon_forward: truncation tail estimate " + std::to_string(tail) +
                             " exceeds 1e-8; field is not integrable on this submanifold");
  }
}

}  // namespace

double radon_forward(const Space& space, const ScalarField& f, const Geodesic<double>& xi,
                     int order) {
  validate_geodesic(space, xi);
  const int k = space.k;
  if (space.kind == SpaceKind::sphere) {
    const DirectionRule& rule = direction_rule(k + 1, direction_order_for(k + 1, order));
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.weights.size(); ++j) {
      sum += rule.weights[j] * f.eval(xi.basis * rule.dirs.col(static_cast<Eigen::Index>(j)));
    }
    return sum;
  }
  if (!std::isfinite(f.decay_scale)) {
    throw std::runtime_error("radon_forward: field '" + f.name + "' does not decay; not integrable");
  }
  const DirectionRule& rule = direction_rule(k, direction_order_for(k, order));
  const double reach = f.decay_scale;
  Eigen::VectorXd origin;
  Eigen::MatrixXd frame;
  if (space.kind == SpaceKind::euclidean) {
    frame = xi.basis;
    const Eigen::VectorXd v0 = xi.basis.transpose() * (f.center - xi.offset);
    origin = xi.offset + xi.basis * v0;
  } else {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(xi.basis.rows());
    for (Eigen::Index i = 0; i < xi.basis.cols(); ++i) {
      const auto col = xi.basis.col(i);
      p += (lorentz<double>(f.center, col) / lorentz<double>(col, col)) * col;
    }
    origin = p / std::sqrt(lorentz<double>(p, p));
    frame = tangent_frame(xi.basis, origin, k);
  }
  const bool flat = space.kind == SpaceKind::euclidean;
  auto ring = [&](double rho) {
    const double radial = flat ? rho : std::sinh(rho);
    const double axial = flat ? 1.0 : std::cosh(rho);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.weights.size(); ++j) {
      const Eigen::VectorXd y =
          axial * origin + radial * (frame * rule.dirs.col(static_cast<Eigen::Index>(j)));
      sum += rule.weights[j] * f.eval(y);
    }
    return std::pow(radial, k - 1) * sum;
  };
  check_tail(std::abs(ring(reach)));
  return integrate_panels(ring, 0.0, reach, 1.0, radial_nodes(order));
}

double sphere_average(const Space& space, const ScalarField& f, const Point<double>& x, double s,
                      int order) {
  validate_point(space, x);
  if (s == 0.0) return f(x);
  const DirectionRule& rule = direction_rule(space.n, direction_order_for(space.n, order));
  const Rotation<double> rx = transport(space, x);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.weights.size(); ++j) {
    sum += rule.weights[j] *
           f(point_at_distance(space, x, rx, s, rule.dirs.col(static_cast<Eigen::Index>(j))));
  }
  return sum / sphere_area(space.n - 1);
}

double spherical_mean(const Space& space, const ScalarField& f, const Point<double>& x, double t,
                      int order) {
  switch (space.kind) {
    case SpaceKind::euclidean:
      if (!(t >= 0)) throw std::invalid_argument("spherical_mean: euclidean needs t >= 0");
      return sphere_average(space, f, x, t, order);
    case SpaceKind::sphere:
      if (!(t > -1 && t < 1)) throw std::invalid_argument("spherical_mean: sphere needs -1 < t < 1");
      return sphere_average(space, f, x, std::acos(t), order);
    case SpaceKind::hyperbolic:
      if (!(t >= 1)) throw std::invalid_argument("spherical_mean: hyperbolic needs t >= 1");
      return sphere_average(space, f, x, std::acosh(t), order);
  }
  return 0.0;
}

double tilde_mean(const Space& space, const ScalarField& f, const Point<double>& x, double t,
                  int order) {
  if (!(t >= 0)) throw std::invalid_argument("tilde_mean: t must be >= 0");
  switch (space.kind) {
    case SpaceKind::euclidean: return sphere_average(space, f, x, t, order);
    case SpaceKind::sphere:
      if (t >= 1) throw std::invalid_argument("tilde_mean: sphere needs t < 1");
      return sphere_average(space, f, x, std::asin(t), order) / std::sqrt((1.0 - t) * (1.0 + t));
    case SpaceKind::hyperbolic:
      return sphere_average(space, f, x, std::asinh(t), order) / std::sqrt(1.0 + t * t);
  }
  return 0.0;
}

MeanProfile mean_profile(const Space& space, const ScalarField& f, const Point<double>& x,
                         const std::vector<double>& grid, MeanVariant variant, int order) {
  MeanProfile out{space, x, grid, {}, variant};
  out.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("mean_profile: grid must be increasing");
    }
    out.values.push_back(variant == MeanVariant::plain ? spherical_mean(space, f, x, grid[i], order)
                                                       : tilde_mean(space, f, x, grid[i], order));
  }
  return out;
}

}  // namespace mader
