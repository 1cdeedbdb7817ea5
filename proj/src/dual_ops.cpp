#include "mader/dual_ops.hpp"

#include "mader/constants.hpp"
#include "mader/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mader {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelNodes = 24;
constexpr double kSingularTol = 1e-13;

double sign_pow(int e) { return e % 2 == 0 ? 1.0 : -1.0; }

// Running mean and variance (Welford).
struct Accumulator {
  double mean = 0.0;
  double m2 = 0.0;
  int count = 0;

  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / count;
    m2 += d * (v - mean);
  }
  McEstimate result() const {
    const double var = count > 1 ? m2 / (count - 1) : 0.0;
    return {mean, std::sqrt(var / std::max(count, 1)), count};
  }
};

// Composite Gauss-Legendre on panels of length at most 0.5.
template <typename F>
double integrate_smooth(F&& f, double a, double b, int nodes) {
  if (!(b > a)) return 0.0;
  return integrate_panels(f, a, b, 0.5, nodes);
}

}  // namespace

void DualConfig::validate() const {
  if (mc_samples < 100) throw std::invalid_argument("dual config: mc_samples must be >= 100");
  if (quad_nodes < 1 || forward_nodes < 1) {
    throw std::invalid_argument("dual config: quadrature orders must be positive");
  }
  if (!(truncation_T >= 0.0)) throw std::invalid_argument("dual config: truncation_T must be >= 0");
}

RadialMeans::RadialMeans(const Space& space, const ScalarField& f, const Point<double>& x,
                         const DualConfig& cfg)
    : space_(space), x_(x) {
  validate_point(space, x);
  cfg.validate();
  if (space.kind == SpaceKind::sphere) {
    s_max_ = 0.5 * kPi;
  } else if (cfg.truncation_T > 0.0) {
    s_max_ = cfg.truncation_T;
  } else {
    if (!std::isfinite(f.decay_scale)) {
      throw std::invalid_argument("field '" + f.name + "' does not decay on " +
                                  to_string(space.kind) + " space");
    }
    s_max_ = f.decay_scale + point_distance(space, x, Point<double>{f.center});
  }
  const int count = std::max(1, static_cast<int>(std::ceil(s_max_ / panel_)));
  panel_ = s_max_ / count;
  panels_.reserve(count);
  const int order = cfg.quad_nodes;
  for (int i = 0; i < count; ++i) {
    panels_.emplace_back([&](double s) { return sphere_average(space, f, x, s, order); },
                         i * panel_, (i + 1) * panel_, kPanelNodes);
  }
}

double RadialMeans::A(double s) const {
  s = std::abs(s);
  if (s > s_max_) {
    if (space_.kind == SpaceKind::sphere && s <= s_max_ * (1 + 1e-12)) s = s_max_;
    else return 0.0;
  }
  const auto i = std::min(static_cast<std::size_t>(s / panel_), panels_.size() - 1);
  return panels_[i](s);
}

double RadialMeans::tau(double s) const {
  switch (space_.kind) {
    case SpaceKind::euclidean: return s;
    case SpaceKind::sphere: return std::sin(s);
    case SpaceKind::hyperbolic: return std::sinh(s);
  }
  return s;
}

double RadialMeans::dtau(double s) const {
  switch (space_.kind) {
    case SpaceKind::euclidean: return 1.0;
    case SpaceKind::sphere: return std::cos(s);
    case SpaceKind::hyperbolic: return std::cosh(s);
  }
  return 1.0;
}

double RadialMeans::tau_gap(double s0, double d) const {
  switch (space_.kind) {
    case SpaceKind::euclidean: return d;
    case SpaceKind::sphere: return 2.0 * std::cos(s0 + 0.5 * d) * std::sin(0.5 * d);
    case SpaceKind::hyperbolic: return 2.0 * std::cosh(s0 + 0.5 * d) * std::sinh(0.5 * d);
  }
  return d;
}

double RadialMeans::s_of(double r) const {
  switch (space_.kind) {
    case SpaceKind::euclidean: return r;
    case SpaceKind::sphere: return std::asin(r);
    case SpaceKind::hyperbolic: return std::asinh(r);
  }
  return r;
}

double RadialMeans::r_max() const {
  return space_.kind == SpaceKind::sphere ? 1.0 : tau(s_max_);
}

double RadialMeans::tilde(double t) const {
  const double s = s_of(t);
  return A(s) / dtau(s);
}

McEstimate dual_shifted_mc(const Space& space,
                           const std::function<double(const Geodesic<double>&)>& phi,
                           const Point<double>& x, double r, const DualConfig& cfg) {
  cfg.validate();
  validate_point(space, x);
  if (r < 0) throw std::invalid_argument("dual_shifted_mc: r must be >= 0");
  if (space.kind == SpaceKind::sphere && r >= 1) {
    throw std::invalid_argument("dual_shifted_mc: sphere needs r < 1");
  }
  Accumulator acc;
  for (int i = 0; i < cfg.mc_samples; ++i) {
    const Rotation<double> g = haar_rotation<double>(space, sub_seed(cfg.seed, i));
    acc.add(phi(geodesic_at_distance(space, x, r, g)));
  }
  return acc.result();
}

namespace {

double dual_constant(const Space& space) {
  return (space.kind == SpaceKind::sphere ? 2.0 : 1.0) * sphere_area(space.k - 1);
}

// lambda(r) R*_r Rf(x) with r = tau(s_r).
double weighted_dual_at(const RadialMeans& m, double s_r) {
  const int k = m.space().k;
  const double smax = m.s_max();
  if (s_r >= smax) return 0.0;
  const double r = m.tau(s_r);
  double integral = 0.0;
  if (k % 2 == 0) {
    auto g = [&](double s) {
      const double t = m.tau(s);
      return m.A(s) * std::pow((t - r) * (t + r), k / 2 - 1) * t;
    };
    integral = integrate_smooth(g, s_r, smax, 32);
  } else {
    const double near = std::min(s_r + 1.0, smax);
    integral = integrate_endpoint_singular(
        [&](double s, double from_sr, double) {
          const double t = m.tau(s);
          const double gap = m.tau_gap(s_r, from_sr);
          // separate powers: gap * (t + r) underflows near s_r = 0
          const double e = 0.5 * k - 1.0;
          return m.A(s) * std::pow(gap, e) * std::pow(t + r, e) * t;
        },
        s_r, near, kSingularTol);
    integral += integrate_smooth(
        [&](double s) {
          const double t = m.tau(s);
          return m.A(s) * std::pow((t - r) * (t + r), 0.5 * k - 1.0) * t;
        },
        near, smax, 32);
  }
  return dual_constant(m.space()) * integral;
}

void check_r(const RadialMeans& m, double r) {
  if (!(r >= 0)) throw std::invalid_argument("r must be >= 0");
  if (m.space().kind == SpaceKind::sphere && r >= 1) {
    throw std::invalid_argument("sphere needs r < 1, got r=" + std::to_string(r));
  }
}

}  // namespace

double weighted_shifted_dual(const RadialMeans& means, double r) {
  check_r(means, r);
  return weighted_dual_at(means, means.s_of(r));
}

double dual_shifted_mean(const RadialMeans& means, double r) {
  return weighted_shifted_dual(means, r) / lambda_weight(means.space(), r);
}

double dual_shifted_mean(const Space& space, const ScalarField& f, const Point<double>& x, double r,
                         const DualConfig& cfg) {
  return dual_shifted_mean(RadialMeans(space, f, x, cfg), r);
}

SampledGeodesic sample_geodesic(const Space& space, const ScalarField& f, std::uint64_t seed) {
  const int n = space.n;
  const int k = space.k;
  const int m = n - k;
  std::mt19937_64 rng(sub_seed(seed, 2));
  std::normal_distribution<double> normal(0.0, 1.0);
  SampledGeodesic out;
  if (space.kind == SpaceKind::sphere) {
    out.xi.basis = haar_orthogonal<double>(n + 1, sub_seed(seed, 1)).leftCols(k + 1);
    return out;
  }
  const Eigen::MatrixXd q = haar_orthogonal<double>(n, sub_seed(seed, 1));
  const Eigen::MatrixXd zeta = q.leftCols(k);
  const Eigen::MatrixXd perp = q.rightCols(m);
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) z[i] = normal(rng);
  if (space.kind == SpaceKind::euclidean) {
    // Gaussian offset in zeta-perp around the projection of the field center
    const double spread = f.scale;
    const Eigen::VectorXd u = perp * (perp.transpose() * f.center + spread * z);
    out.xi.basis = zeta;
    out.xi.offset = u;
    const double log_pdf = -0.5 * m * std::log(2.0 * kPi * spread * spread) - 0.5 * z.squaredNorm();
    out.weight = std::exp(-log_pdf);
    return out;
  }
  // Klein model about the field center: xi meets the ball in the affine plane
  // u + zeta, and dxi = (1 - |u|^2)^{-(n+1)/2} dzeta du with u uniform in the ball.
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double radius = std::pow(uniform(rng), 1.0 / m);
  const Eigen::VectorXd u = perp * (radius * z / z.norm());
  const double gap = (1.0 - radius) * (1.0 + radius);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n + 1, k + 1);
  basis.topLeftCorner(n, k) = zeta;
  basis.col(k).head(n) = u / std::sqrt(gap);
  basis(n, k) = 1.0 / std::sqrt(gap);
  out.xi.basis = transport(space, Point<double>{f.center}).matrix * basis;
  const double ball = sphere_area(m - 1) / m;
  out.weight = ball * std::pow(gap, -0.5 * (n + 1));
  return out;
}

WeightedDual weighted_dual_both_sides(const Space& space, const ScalarField& f,
                                      const std::function<double(double)>& a,
                                      const Point<double>& x, const DualConfig& cfg,
                                      const std::vector<double>& breaks) {
  cfg.validate();
  WeightedDual out;
  Accumulator acc;
  for (int i = 0; i < cfg.mc_samples; ++i) {
    const SampledGeodesic sample = sample_geodesic(space, f, sub_seed(cfg.seed, i));
    const double weight = a(distance_rho(space, x, sample.xi));
    acc.add(weight == 0.0 ? 0.0
                          : sample.weight * weight * radon_forward(space, f, sample.xi, cfg.forward_nodes));
  }
  out.lhs = acc.result();

  const RadialMeans means(space, f, x, cfg);
  const int n = space.n;
  const int k = space.k;
  const double cw = space.kind == SpaceKind::sphere
                        ? sphere_area(n - k - 1) * sphere_area(k) / sphere_area(n)
                        : sphere_area(n - k - 1);
  auto integrand = [&](double theta) {
    const double r = means.tau(theta);
    const double v = std::pow(r, n - k - 1) * a(r) * weighted_dual_at(means, theta) * means.dtau(theta);
    return std::isfinite(v) ? v : 0.0;
  };
  std::vector<double> cuts{0.0};
  for (double b : breaks) {
    if (b > 0 && b < means.r_max()) cuts.push_back(means.s_of(b));
  }
  if (space.kind != SpaceKind::sphere) {
    for (double c = 1.0; c < means.s_max(); c += 1.0) cuts.push_back(c);
  }
  cuts.push_back(means.s_max());
  std::sort(cuts.begin(), cuts.end());
  double rhs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    rhs += integrate_endpoint_singular([&](double theta, double, double) { return integrand(theta); },
                                       cuts[i], cuts[i + 1], 1e-11);
  }
  out.rhs = cw * rhs;
  return out;
}

namespace {

double mader_prefactor(const Space& space) {
  const int n = space.n;
  const int k = space.k;
  if (space.kind == SpaceKind::sphere) {
    return 2.0 * sphere_area(n - k - 1) * sphere_area(k) * sphere_area(k - 1) / sphere_area(n);
  }
  return sphere_area(n - k - 1) * sphere_area(k - 1);
}

// psi_k on [0, inf); the closed form covers u != 1, continuity covers u = 1.
double psi_k_any(int k, double u) {
  if (u <= 1.0) return poly_part(KernelParams{0.5 * k - 1.0, k - 2}, u);
  return psi_k_closed(k, u);
}

}  // namespace

double L_star(const RadialMeans& m, double r) {
  const int k = m.space().k;
  if (k % 2 != 0) throw std::invalid_argument("L_star: k must be even");
  check_r(m, r);
  const double ck = c_k_value(k);
  const double smax = m.s_max();
  const double s_r = std::min(m.s_of(r), smax);
  const double inside = -ck * integrate_smooth([&](double s) { return m.A(s) * std::pow(m.tau(s), k); },
                                               0.0, s_r, 32);
  const double sign = 2.0 * sign_pow(k / 2);
  const double outside = integrate_smooth(
      [&](double s) {
        const double t = m.tau(s);
        return m.A(s) * std::pow(t, k) * (-ck + sign * theta_poly(k, r / t));
      },
      s_r, smax, 32);
  return mader_prefactor(m.space()) * (inside + outside);
}

double L_star(const Space& space, const ScalarField& f, const Point<double>& x, double r,
              const DualConfig& cfg) {
  if (space.k % 2 != 0) throw std::invalid_argument("L_star: k must be even");
  return L_star(RadialMeans(space, f, x, cfg), r);
}

double L_tilde_star(const RadialMeans& m, double r) {
  const int k = m.space().k;
  if (k % 2 == 0) throw std::invalid_argument("L_tilde_star: k must be odd");
  check_r(m, r);
  const double smax = m.s_max();
  const double head = std::min(1.0, smax);
  // r-independent part: 2 c_k int A tau^k log tau
  double a_term = integrate_endpoint_singular(
      [&](double s, double, double) {
        const double t = m.tau(s);
        return m.A(s) * std::pow(t, k) * std::log(t);
      },
      0.0, head, kSingularTol);
  a_term += integrate_smooth(
      [&](double s) {
        const double t = m.tau(s);
        return m.A(s) * std::pow(t, k) * std::log(t);
      },
      head, smax, 32);
  a_term *= 2.0 * c_k_value(k);

  const double s_r = std::min(m.s_of(r), smax);
  double b_term = 0.0;
  if (s_r > 0.0) {
    b_term += integrate_endpoint_singular(
        [&](double s, double, double) {
          const double t = m.tau(s);
          return t > 0.0 ? m.A(s) * std::pow(t, k) * psi_k_any(k, r / t) : 0.0;
        },
        0.0, s_r, kSingularTol);
  }
  b_term += integrate_smooth(
      [&](double s) {
        const double t = m.tau(s);
        return m.A(s) * std::pow(t, k) * psi_k_any(k, std::min(r / t, 1.0));
      },
      s_r, smax, 32);
  return mader_prefactor(m.space()) * (a_term + b_term);
}

double L_tilde_star(const Space& space, const ScalarField& f, const Point<double>& x, double r,
                    const DualConfig& cfg) {
  if (space.k % 2 == 0) throw std::invalid_argument("L_tilde_star: k must be odd");
  return L_tilde_star(RadialMeans(space, f, x, cfg), r);
}

double Lambda_r(const RadialMeans& m, double r, int k) {
  if (k < 1) throw std::invalid_argument("Lambda_r: k must be >= 1");
  check_r(m, r);
  if (r == 0.0) return 0.0;
  // t = r sin(w) removes the (r^2 - t^2)^{k/2-1} endpoint factor
  const double integral = integrate_gl(
      [&](double w) {
        return m.tilde(r * std::sin(w)) * std::pow(std::cos(w), k - 1) * std::sin(w);
      },
      0.0, 0.5 * kPi, 64);
  return std::pow(r, k) * integral;
}

double Lambda_r(const Space& space, const ScalarField& f, const Point<double>& x, double r, int k,
                const DualConfig& cfg) {
  return Lambda_r(RadialMeans(space, f, x, cfg), r, k);
}

}  // namespace mader
