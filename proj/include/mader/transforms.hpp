#pragma once

#include "mader/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mader {

/// Test function on X together with the facts the integrators need about it.
struct ScalarField {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> eval;
  /// Ambient point around which f is concentrated.
  Eigen::VectorXd center;
  /// Geodesic distance from center beyond which f (times volume growth) is
  /// below 1e-14; infinity for fields that do not decay.
  double decay_scale = 0.0;
  /// Feature width, used to choose differentiation steps.
  double scale = 1.0;
  bool parity_even = true;

  double operator()(const Point<double>& x) const { return eval(x.coords); }
};

struct PhantomOptions {
  /// Ambient coordinates of the phantom center; empty means the base point.
  std::vector<double> center;
  double amplitude = 1.0;
  /// Zonal sharpness kappa on the sphere, power p for the hyperbolic phantom.
  double shape = 0.0;
};

/// Registry:
///   gaussian  euclidean   A exp(-|y - c|^2)
///   constant  any space   A
///   zonal     sphere      A exp(-kappa (1 - (y.c)^2)), kappa = 2 by default
///   radial    hyperbolic  A [y, c]^{-p} = A cosh(d(y, c))^{-p}, p = 6 by default
ScalarField make_phantom(const Space& space, const std::string& id, const PhantomOptions& opts = {});

std::vector<std::string> phantom_ids(const Space& space);

/// Quadrature rule on the unit sphere S^{m-1} in R^m. Directions are the
/// columns of dirs; the weights sum to sigma_{m-1}.
struct DirectionRule {
  Eigen::MatrixXd dirs;
  std::vector<double> weights;
};

/// m = 1: {-1, +1}. m = 2: 2*order equispaced angles. m = 3: order
/// Gauss-Legendre nodes in cos(polar) times 2*order azimuths. m >= 4:
/// Gauss-Legendre in the polar angle with weight sin^{m-2}, recursively.
const DirectionRule& direction_rule(int m, int order);

/// Nodes per 1-D factor used by the means and the forward transform.
inline constexpr int kDefaultOrder = 64;

/// Integral of f over xi with the induced Riemannian measure.
double radon_forward(const Space& space, const ScalarField& f, const Geodesic<double>& xi,
                     int order = kDefaultOrder);

/// Mean of f over the geodesic sphere of radius s about x.
double sphere_average(const Space& space, const ScalarField& f, const Point<double>& x, double s,
                      int order = kDefaultOrder);

/// Plain mean: euclidean M_t (t >= 0), sphere section y.x = t (-1 < t < 1),
/// hyperbolic section [y, x] = t (t >= 1).
double spherical_mean(const Space& space, const ScalarField& f, const Point<double>& x, double t,
                      int order = kDefaultOrder);

/// Reparameterized mean: (1 - t^2)^{-1/2} M_{sqrt(1 - t^2)} on the sphere,
/// (1 + t^2)^{-1/2} M_{sqrt(1 + t^2)} on H^n, the plain mean on R^n.
double tilde_mean(const Space& space, const ScalarField& f, const Point<double>& x, double t,
                  int order = kDefaultOrder);

enum class MeanVariant { plain, tilde };

struct MeanProfile {
  Space space;
  Point<double> center;
  std::vector<double> grid;
  std::vector<double> values;
  MeanVariant variant = MeanVariant::plain;
};

MeanProfile mean_profile(const Space& space, const ScalarField& f, const Point<double>& x,
                         const std::vector<double>& grid, MeanVariant variant,
                         int order = kDefaultOrder);

/// Number of polar nodes used for an (m-1)-sphere of directions: the full
/// order up to m = 3, capped for higher dimensions to bound the product size.
int direction_order_for(int m, int order);

}  // namespace mader
