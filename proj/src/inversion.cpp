#include "mader/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mader {

std::optional<double> InversionReport::rel_error() const {
  if (!truth) return std::nullopt;
  const double denom = std::abs(*truth) > 0 ? std::abs(*truth) : 1.0;
  return std::abs(estimate - *truth) / denom;
}

int default_fit_degree(int order, const InversionConfig& cfg) {
  return cfg.fit_degree > 0 ? cfg.fit_degree : order + 6;
}

namespace {

double step_for(const InversionConfig& cfg, double scale) {
  const double h = cfg.grid_h > 0 ? cfg.grid_h : 0.02 * scale;
  if (!(h > 0) || cfg.grid_j < 1) throw std::invalid_argument("inversion: grid must be positive");
  return h;
}

// Fits the profile, fills derivative, residual and conditioning.
void fit_profile(InversionReport& rep, int order, FitBasis basis, const InversionConfig& cfg) {
  const int degree = default_fit_degree(order, cfg);
  const DerivativeEstimate main = endpoint_derivative(rep.profile, order, degree, basis);
  rep.derivative_order = order;
  rep.derivative = main.value;
  rep.residual = main.residual;
  if (degree - 2 >= order + 1) {
    const DerivativeEstimate lower = endpoint_derivative(rep.profile, order, degree - 2, basis);
    rep.conditioning = std::abs(main.value - lower.value) / std::max(std::abs(main.value), 1e-300);
  }
}

std::string describe(const char* pipeline, const Space& space, const ScalarField& f, double h,
                     int j) {
  std::ostringstream os;
  os << pipeline << " space=" << to_string(space.kind) << " n=" << space.n << " k=" << space.k
     << " phantom=" << f.name << " h=" << h << " J=" << j;
  return os.str();
}

}  // namespace

InversionReport invert_thm1(const Space& space, const ScalarField& f, const Point<double>& x,
                            const InversionConfig& cfg) {
  if (space.kind == SpaceKind::sphere && !f.parity_even) {
    throw std::invalid_argument("invert_thm1: sphere data must come from an even function");
  }
  const double h = step_for(cfg, f.scale);
  const bool even_k = space.k % 2 == 0;
  const RadialMeans means(space, f, x, cfg.dual);
  InversionReport rep;
  rep.truth = f(x);
  rep.constant_used = inversion_constant(space, even_k ? Theorem::thm1_even : Theorem::thm1_odd,
                                         cfg.sphere_convention);
  rep.profile.meta = describe(even_k ? "L_star" : "L_tilde_star", space, f, h, cfg.grid_j);
  for (int j = 0; j <= cfg.grid_j; ++j) {
    const double r = j * h;
    rep.profile.grid.push_back(r);
    rep.profile.values.push_back(even_k ? L_star(means, r) : L_tilde_star(means, r));
  }
  // L* is a constant plus an odd function of r; L~* is even
  const FitBasis basis = !cfg.use_parity ? FitBasis::full
                         : even_k        ? FitBasis::odd_offset
                                         : FitBasis::even;
  fit_profile(rep, space.k + 1, basis, cfg);
  rep.estimate = rep.derivative / rep.constant_used.value;
  return rep;
}

InversionReport invert_thm2(const Space& space, const ScalarField& f, const Point<double>& x,
                            const InversionConfig& cfg) {
  if (space.k % 2 != 0) throw std::invalid_argument("invert_thm2: k must be even");
  const double h = step_for(cfg, f.scale);
  const RadialMeans means(space, f, x, cfg.dual);
  InversionReport rep;
  rep.truth = f(x);
  rep.constant_used = inversion_constant(space, Theorem::thm2);
  rep.profile.meta = describe("lambda_dual", space, f, h, cfg.grid_j);
  for (int j = 0; j <= cfg.grid_j; ++j) {
    const double r = j * h;
    rep.profile.grid.push_back(r);
    rep.profile.values.push_back(weighted_shifted_dual(means, r));
  }
  fit_profile(rep, space.k, cfg.use_parity ? FitBasis::even : FitBasis::full, cfg);
  rep.estimate = rep.derivative / rep.constant_used.value;
  return rep;
}

HyperplaneData gaussian_hyperplane_data(int n, const Eigen::VectorXd& center, double amplitude) {
  if (center.size() != n) throw std::invalid_argument("gaussian data: center has wrong length");
  const double mass = amplitude * std::pow(std::numbers::pi, 0.5 * (n - 1));
  return [center, mass](const Eigen::VectorXd& theta, double s) {
    const double d = s - center.dot(theta);
    return mass * std::exp(-d * d);
  };
}

HyperplaneData hyperplane_data_from_field(int n, const ScalarField& f, int order) {
  const Space space(SpaceKind::euclidean, n, n - 1);
  return [space, f, order](const Eigen::VectorXd& theta, double s) {
    // orthonormal complement of theta from the Householder QR of theta
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(theta);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(space.n, space.n);
    Geodesic<double> xi{q.rightCols(space.n - 1), s * theta};
    return radon_forward(space, f, xi, order);
  };
}

double mader_radial_average(int n, const HyperplaneData& g, const Eigen::VectorXd& x, double s,
                            int order) {
  if (x.size() != n) throw std::invalid_argument("mader_radial_average: x has wrong length");
  const DirectionRule& rule = direction_rule(n, direction_order_for(n, order));
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.weights.size(); ++j) {
    const Eigen::VectorXd theta = rule.dirs.col(static_cast<Eigen::Index>(j));
    sum += rule.weights[j] * g(theta, s + x.dot(theta));
  }
  return sum / sphere_area(n - 1);
}

InversionReport mader_classical(int n, const HyperplaneData& g, const Eigen::VectorXd& x,
                                const InversionConfig& cfg, double data_scale,
                                std::optional<double> truth) {
  if (n < 2) throw std::invalid_argument("mader_classical: n must be >= 2");
  const double h = step_for(cfg, data_scale);
  const double reach = cfg.mader_truncation * data_scale + x.norm();
  const int order_q = cfg.dual.quad_nodes;
  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * reach / 0.5)));
  const double width = 2.0 * reach / panels;
  std::vector<ChebyshevInterpolant> pieces;
  pieces.reserve(panels);
  for (int i = 0; i < panels; ++i) {
    pieces.emplace_back([&](double s) { return mader_radial_average(n, g, x, s, order_q); },
                        -reach + i * width, -reach + (i + 1) * width, 24);
  }
  auto G = [&](double s) {
    const int i = std::clamp(static_cast<int>((s + reach) / width), 0, panels - 1);
    return pieces[i](s);
  };
  const double tail = std::abs(G(-reach)) + std::abs(G(reach));
  if (tail > 1e-8) {
    throw std::runtime_error("mader_classical: data not negligible at the truncation radius");
  }

  const bool even_n = n % 2 == 0;
  InversionReport rep;
  rep.truth = truth;
  rep.constant_used.value = even_n ? mader_A0(n) : mader_A1(n, cfg.mader_convention);
  rep.constant_used.kind = SpaceKind::euclidean;
  rep.constant_used.n = n;
  rep.constant_used.k = n - 1;
  std::ostringstream meta;
  meta << (even_n ? "F0" : "F1") << " n=" << n << " h=" << h << " J=" << cfg.grid_j
       << " truncation=" << reach;
  rep.profile.meta = meta.str();
  for (int j = -cfg.grid_j; j <= cfg.grid_j; ++j) {
    const double t = j * h;
    double value = 0.0;
    if (even_n) {
      auto integrand = [&](double s) { return s == t ? 0.0 : G(s) * std::log(std::abs(s - t)); };
      value = quad_log_singular(integrand, -reach, reach, t, 1e-12);
    } else {
      value = integrate_panels(G, t, reach, 0.5, 32) - integrate_panels(G, -reach, t, 0.5, 32);
    }
    rep.profile.grid.push_back(t);
    rep.profile.values.push_back(value);
  }
  fit_profile(rep, n, FitBasis::full, cfg);
  rep.estimate = rep.constant_used.value * rep.derivative;
  return rep;
}

}  // namespace mader
