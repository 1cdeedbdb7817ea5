#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mader {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Interpolatory rule on [-1, 1].
template <typename Scalar = double>
struct QuadRule {
  VectorX<Scalar> nodes;
  VectorX<Scalar> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// (P_n(z), P_n'(z)) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_derivative(int n, Scalar z) {
  Scalar p1 = 1;
  Scalar p2 = 0;
  for (int j = 0; j < n; ++j) {
    const Scalar p3 = p2;
    p2 = p1;
    p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
  }
  const Scalar dp = n * (z * p1 - p2) / (z * z - 1);
  return {p1, dp};
}

}  // namespace detail

/// Gauss-Legendre rule with n nodes, found by Newton iteration on P_n from
/// the Tricomi initial guesses. Nodes are returned in increasing order and are
/// exactly antisymmetric about 0.
template <typename Scalar = double>
QuadRule<Scalar> gauss_legendre(int n) {
  if (n < 1 || n > 512) {
    throw std::invalid_argument("gauss_legendre: node count must lie in [1, 512], got " +
                                std::to_string(n));
  }
  using std::abs;
  using std::cos;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  QuadRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar z = cos(pi * (i + Scalar(0.75)) / (n + Scalar(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(n, z);
      const Scalar dz = p / dp;
      z -= dz;
      if (abs(dz) <= 2 * eps) break;
    }
    if (n % 2 == 1 && i == n / 2) z = 0;
    const Scalar dp = detail::legendre_with_derivative(n, z).second;
    const Scalar w = 2 / ((1 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Shared immutable double-precision rule; built once per n.
const QuadRule<double>& cached_gauss_legendre(int n);

/// Single-panel Gauss-Legendre integral of f over [a, b].
template <typename F>
double integrate_gl(F&& f, double a, double b, int n = 64) {
  const auto& rule = cached_gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

/// Composite Gauss-Legendre over equal panels no longer than max_panel.
template <typename F>
double integrate_panels(F&& f, double a, double b, double max_panel = 1.0, int n = 32) {
  if (b == a) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) sum += integrate_gl(f, a + p * width, a + (p + 1) * width, n);
  return sum;
}

/// Adaptive Gauss-Legendre by interval halving. A panel is accepted once the
/// 20-point value and the sum over its two halves differ by less than its
/// share of `tol`. Throws std::runtime_error if refinement does not settle.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12);

/// Integral over [a, b] of f with at worst a logarithmic singularity at s.
/// Each side of s is mapped by distance = w^2 and integrated adaptively.
double quad_log_singular(const std::function<double(double)>& f, double a, double b, double s,
                         double tol = 1e-10);

/// Double-exponential (tanh-sinh) integral over [a, b] for integrands with
/// algebraic or logarithmic endpoint singularities. The integrand receives
/// (x, x - a, b - x) with both distances accurate near their endpoint.
template <typename F>
double integrate_endpoint_singular(F&& f, double a, double b, double tol = 1e-13) {
  if (b == a) return 0.0;
  if (b < a) return -integrate_endpoint_singular(f, b, a, tol);
  // the two-argument overload is not const-qualified in Boost 1.74
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  const double width = b - a;
  auto g = [&](double x, double xc) {
    if (xc < 0) return f(x, -xc, width + xc);
    return f(x, width - xc, xc);
  };
  return integrator.integrate(g, a, b, tol);
}

/// Samples r -> value on an increasing grid; the input to endpoint_derivative.
struct RadialProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::string meta;

  std::size_t size() const { return grid.size(); }
  /// Throws std::invalid_argument unless the grid is strictly increasing and
  /// every value is finite.
  void validate() const;
};

/// Which monomials enter the least-squares fit.
enum class FitBasis {
  full,        ///< 1, r, r^2, ..., r^d
  even,        ///< 1, r^2, r^4, ...
  odd_offset,  ///< 1, r, r^3, r^5, ...
};

struct DerivativeEstimate {
  double value = 0.0;
  /// RMS fit residual divided by max |value| on the grid.
  double residual = 0.0;
};

/// order-th derivative at r = 0 from a least-squares polynomial fit of degree
/// fit_degree in the scaled variable r / max|r|. Works for one-sided grids
/// starting at 0 and for grids symmetric about 0.
DerivativeEstimate endpoint_derivative(const RadialProfile& profile, int order, int fit_degree,
                                       FitBasis basis = FitBasis::full);

/// Barycentric interpolant on Chebyshev points of the second kind.
class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant() = default;
  ChebyshevInterpolant(const std::function<double(double)>& f, double a, double b, int nodes);

  double operator()(double x) const;
  double lower() const { return a_; }
  double upper() const { return b_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> points_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

}  // namespace mader
