#pragma once

#include "mader/geometry.hpp"

#include <string>

namespace mader {

/// Lanczos Gamma (g = 7, 9 terms), relative error below 1e-14 on [0.5, 50].
double gamma_lanczos(double x);

/// Gamma with an exact recurrence path for integer and half-integer
/// arguments; other arguments fall back to gamma_lanczos.
double gamma_fn(double x);

/// sigma_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2), area of the unit m-sphere.
double sphere_area(int m);

enum class Theorem { thm1_even, thm1_odd, thm2 };

std::string to_string(Theorem theorem);

/// Which version of the sphere even-k constant of the first inversion theorem.
/// derived: 2 (-1)^{(k+2)/2} c (k-1)!, c = 2 sigma_{n-k-1} sigma_k sigma_{k-1} / sigma_n,
///          the value the reduction actually produces (checked on S^4, k = 2).
/// printed: c (k-1)!, unsigned and without the leading factor 2.
enum class SphereConvention { derived, printed };

struct InversionConstant {
  double value = 0.0;
  Theorem theorem = Theorem::thm2;
  SpaceKind kind = SpaceKind::euclidean;
  int n = 0;
  int k = 0;
};

InversionConstant inversion_constant(const Space& space, Theorem theorem,
                                     SphereConvention convention = SphereConvention::derived);

/// lambda_X(r): 1, (1 - r^2)^{(k-1)/2} or (1 + r^2)^{(k-1)/2}.
double lambda_weight(const Space& space, double r);

/// c_k = int_0^1 (1 - v^2)^{k/2 - 1} dv = sqrt(pi) Gamma(k/2) / (2 Gamma((k+1)/2)).
double c_k_value(int k);

/// Theta(u) = int_1^u (v^2 - 1)^{k/2 - 1} dv for u >= 1.
double theta_k(double u, int k);

/// Sign convention for the odd-n classical constant A_1.
/// derived: (-1)^{(n+1)/2} / (2 (n-2)! sigma_{n-2}), the value for which the
///          hyperplane formula reproduces f with F_1 = int G sgn(s - t) ds.
/// printed: (-1)^{(n-1)/2} / (2 (n-2)! sigma_{n-2}).
enum class MaderConvention { derived, printed };

/// A_0 = (-1)^{(n-2)/2} / (pi (n-2)! sigma_{n-2}), n even.
double mader_A0(int n);
double mader_A1(int n, MaderConvention convention = MaderConvention::derived);

double factorial(int m);

}  // namespace mader
