#pragma once

#include "mader/transforms.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mader {

struct DualConfig {
  int mc_samples = 10000;
  /// Nodes per 1-D factor for means and reduced integrals.
  int quad_nodes = kDefaultOrder;
  /// Nodes per factor for the forward transforms inside Monte Carlo loops.
  int forward_nodes = 24;
  /// Upper limit of the distance integrals on R^n and H^n; 0 picks it from the
  /// field's decay_scale and its distance to x.
  double truncation_T = 0.0;
  std::uint64_t seed = 20240611;

  void validate() const;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

/// Radial data of f about x in the geodesic-distance variable s:
/// A(s) is the mean of f over the geodesic sphere of radius s, and
/// tau(s) = s, sin s or sinh s. Every tilde mean satisfies M~_t dt = A(s) ds
/// with t = tau(s). A is sampled once on Chebyshev panels.
class RadialMeans {
 public:
  RadialMeans(const Space& space, const ScalarField& f, const Point<double>& x,
              const DualConfig& cfg = {});

  const Space& space() const { return space_; }
  const Point<double>& point() const { return x_; }
  double A(double s) const;
  double tau(double s) const;
  double dtau(double s) const;
  /// tau(s0 + d) - tau(s0), accurate for small d.
  double tau_gap(double s0, double d) const;
  /// Inverse of tau.
  double s_of(double r) const;
  double s_max() const { return s_max_; }
  /// Largest admissible r: tau(s_max), or 1 on the sphere (exclusive).
  double r_max() const;
  /// M~_t f(x) from the cached profile.
  double tilde(double t) const;

 private:
  Space space_;
  Point<double> x_;
  double s_max_ = 0.0;
  double panel_ = 0.5;
  std::vector<ChebyshevInterpolant> panels_;
};

/// Average of phi over the submanifolds at rho-distance r from x, by Monte
/// Carlo over Haar rotations.
McEstimate dual_shifted_mc(const Space& space, const std::function<double(const Geodesic<double>&)>& phi,
                           const Point<double>& x, double r, const DualConfig& cfg);

/// lambda_X(r) (R*_r Rf)(x) from the mean-value reduction.
double weighted_shifted_dual(const RadialMeans& means, double r);

/// (R*_r Rf)(x) from the mean-value reduction.
double dual_shifted_mean(const RadialMeans& means, double r);
double dual_shifted_mean(const Space& space, const ScalarField& f, const Point<double>& x, double r,
                         const DualConfig& cfg);

struct WeightedDual {
  McEstimate lhs;
  double rhs = 0.0;
};

/// Both sides of int_Xi Rf(xi) a(rho(x, xi)) dxi = C int lambda(r) r^{n-k-1} a(r) R*_r Rf(x) dr.
/// The left side samples xi from the invariant measure independently of x;
/// breaks lists r-values where a jumps or is log-singular.
WeightedDual weighted_dual_both_sides(const Space& space, const ScalarField& f,
                                      const std::function<double(double)>& a,
                                      const Point<double>& x, const DualConfig& cfg,
                                      const std::vector<double>& breaks = {});

/// One draw of xi from the invariant measure on Xi, with importance weight.
struct SampledGeodesic {
  Geodesic<double> xi;
  double weight = 1.0;
};
SampledGeodesic sample_geodesic(const Space& space, const ScalarField& f, std::uint64_t seed);

/// Mader operator for even k: int Rf(xi) rho^{k+1-n} sgn(rho^2 - r^2) dxi,
/// evaluated through the psi-kernel reduction.
double L_star(const RadialMeans& means, double r);
double L_star(const Space& space, const ScalarField& f, const Point<double>& x, double r,
              const DualConfig& cfg);

/// Mader operator for odd k: int Rf(xi) rho^{k+1-n} log|rho^2 - r^2| dxi,
/// evaluated through the psi_k reduction.
double L_tilde_star(const RadialMeans& means, double r);
double L_tilde_star(const Space& space, const ScalarField& f, const Point<double>& x, double r,
                    const DualConfig& cfg);

/// Lambda_r f(x) = int_0^r M~_t f(x) (r^2 - t^2)^{k/2-1} t dt with the given k.
double Lambda_r(const RadialMeans& means, double r, int k);
double Lambda_r(const Space& space, const ScalarField& f, const Point<double>& x, double r, int k,
                const DualConfig& cfg);

}  // namespace mader
