#pragma once

#include <vector>

namespace mader {

/// Exponents of the weight (1 + xi)^alpha (1 - xi)^{m - alpha}.
/// Valid when -1 < alpha < m + 1 and alpha is not an integer; m = -1 is
/// allowed (it occurs for the k = 1 kernel).
struct KernelParams {
  double alpha = 0.5;
  int m = 0;

  void validate() const;
  bool symmetric() const;
};

/// Generalized binomial a (a-1) ... (a-p+1) / p! as a falling-factorial product.
double binomial(double a, int p);

/// lambda_1 .. lambda_{m+1}. The inner sum runs from l = lower; only
/// lower = 0 reproduces the kernel, lower = 1 is kept for comparison.
std::vector<double> lambda_coeffs(const KernelParams& p, int lower = 0);

/// -pi cot(alpha pi) for 0 < u < 1, (-1)^m pi csc(alpha pi) for u > 1.
double mu_alpha(const KernelParams& p, double u);

/// int_1^u (1 + xi)^alpha (xi - 1)^{m - alpha} dxi, u >= 1.
double theta_alpha(const KernelParams& p, double u);

/// int_u^1 (1 + xi)^alpha (1 - xi)^{m - alpha} dxi, -1 < u <= 1; the
/// companion of theta_alpha on the inside of the interval.
double theta_alpha_interior(const KernelParams& p, double u);

/// P_{m+1}(u) = phi(1) - (-1)^m pi csc(alpha pi) sum_r lambda_r (u^r - 1).
double poly_part(const KernelParams& p, double u);

/// phi(u) from the closed form mu_alpha Theta_alpha + P_{m+1}.
double phi_closed(const KernelParams& p, double u);

/// phi(u) = int_{-1}^1 (1 + xi)^alpha (1 - xi)^{m - alpha} log|xi - u| dxi by
/// double-exponential quadrature split at xi = u.
double phi_oracle(const KernelParams& p, double u);

/// phi(1), memoised per (alpha, m).
double phi_at_one(const KernelParams& p);

/// psi_k(u) = int_0^1 (1 - v^2)^{k/2 - 1} log|u^2 - v^2| dv, k odd.
double psi_k_closed(int k, double u);

/// Same integral by direct quadrature.
double psi_k_oracle(int k, double u);

/// Theta(u) = int_1^u (v^2 - 1)^{k/2 - 1} dv as a polynomial, k even, any u.
double theta_poly(int k, double u);

/// psi(u) = int_0^1 sgn(v - u) (1 - v^2)^{k/2 - 1} dv, k even.
double psi_sign(int k, double u);

/// Same integral by direct quadrature.
double psi_sign_oracle(int k, double u);

}  // namespace mader
