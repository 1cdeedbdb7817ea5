#pragma once

#include "mader/constants.hpp"
#include "mader/dual_ops.hpp"

#include <functional>
#include <optional>
#include <string>

namespace mader {

struct InversionConfig {
  /// Grid step; 0 means 0.02 times the field (or data) scale.
  double grid_h = 0.0;
  int grid_j = 24;
  /// Least-squares degree; 0 means derivative order + 6.
  int fit_degree = 0;
  /// Fit only the monomials allowed by the profile's parity in r.
  bool use_parity = true;
  SphereConvention sphere_convention = SphereConvention::derived;
  MaderConvention mader_convention = MaderConvention::derived;
  /// Classical formula: |s| is truncated at this many data scales.
  double mader_truncation = 8.0;
  DualConfig dual;
};

struct InversionReport {
  double estimate = 0.0;
  std::optional<double> truth;
  RadialProfile profile;
  int derivative_order = 0;
  /// Raw endpoint derivative before division by the constant.
  double derivative = 0.0;
  InversionConstant constant_used;
  /// Normalized least-squares residual of the fit.
  double residual = 0.0;
  /// |d(deg) - d(deg - 2)| / |d(deg)|, a proxy for the derivative's relative error.
  double conditioning = 0.0;

  std::optional<double> rel_error() const;
};

/// Derivative of order k+1 at r = 0 of L*_r (k even) or L~*_r (k odd).
InversionReport invert_thm1(const Space& space, const ScalarField& f, const Point<double>& x,
                            const InversionConfig& cfg = {});

/// Derivative of order k at r = 0 of lambda(r) R*_r Rf(x), k even.
InversionReport invert_thm2(const Space& space, const ScalarField& f, const Point<double>& x,
                            const InversionConfig& cfg = {});

/// Hyperplane data g(theta, s): integral of f over {y : y.theta = s}.
using HyperplaneData = std::function<double(const Eigen::VectorXd& theta, double s)>;

/// Closed-form data of A exp(-|y - c|^2): A pi^{(n-1)/2} exp(-(s - c.theta)^2).
HyperplaneData gaussian_hyperplane_data(int n, const Eigen::VectorXd& center, double amplitude = 1.0);

/// Data computed by radon_forward on hyperplanes of R^n.
HyperplaneData hyperplane_data_from_field(int n, const ScalarField& f, int order = kDefaultOrder);

/// G(x, s) = (1 / sigma_{n-1}) int_{S^{n-1}} g(theta, s + x.theta) dtheta.
double mader_radial_average(int n, const HyperplaneData& g, const Eigen::VectorXd& x, double s,
                            int order = kDefaultOrder);

/// Classical hyperplane inversion: n-th t-derivative at 0 of
/// F_0 = int G log|s - t| ds (n even) or F_1 = int G sgn(s - t) ds (n odd).
InversionReport mader_classical(int n, const HyperplaneData& g, const Eigen::VectorXd& x,
                                const InversionConfig& cfg = {}, double data_scale = 1.0,
                                std::optional<double> truth = std::nullopt);

/// Profile fit settings shared by the pipelines.
int default_fit_degree(int order, const InversionConfig& cfg);

}  // namespace mader
