#include "mader/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mader {

namespace {

constexpr double kPi = std::numbers::pi;

int parity_sign(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

double gamma_lanczos(double x) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double gamma_fn(double x) {
  const double twice = 2.0 * x;
  if (x > 0 && x <= 170 && twice == std::round(twice)) {
    // Gamma(1) = 1, Gamma(1/2) = sqrt(pi), then Gamma(y + 1) = y Gamma(y)
    const bool half = static_cast<long>(std::round(twice)) % 2 == 1;
    double y = half ? 0.5 : 1.0;
    double g = half ? std::sqrt(kPi) : 1.0;
    while (y < x - 0.25) {
      g *= y;
      y += 1.0;
    }
    return g;
  }
  return gamma_lanczos(x);
}

double factorial(int m) {
  if (m < 0) throw std::invalid_argument("factorial of a negative integer");
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

double sphere_area(int m) {
  if (m < 0) throw std::invalid_argument("sphere_area: m must be >= 0, got " + std::to_string(m));
  return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / gamma_fn(0.5 * (m + 1));
}

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::thm1_even: return "thm1_even";
    case Theorem::thm1_odd: return "thm1_odd";
    case Theorem::thm2: return "thm2";
  }
  return "?";
}

InversionConstant inversion_constant(const Space& space, Theorem theorem,
                                     SphereConvention convention) {
  const int n = space.n;
  const int k = space.k;
  const bool even = k % 2 == 0;
  if ((theorem == Theorem::thm1_odd) == even) {
    throw std::invalid_argument("inversion_constant: " + to_string(theorem) +
                                " does not apply to k = " + std::to_string(k));
  }
  const bool sphere = space.kind == SpaceKind::sphere;
  const double fact = factorial(k - 1);
  // sphere measure factor; the flat and hyperbolic formulas use sigma_{n-k-1} sigma_{k-1}
  const double spread = sphere ? 2.0 * sphere_area(n - k - 1) * sphere_area(k) *
                                     sphere_area(k - 1) / sphere_area(n)
                               : sphere_area(n - k - 1) * sphere_area(k - 1);
  double value = 0.0;
  switch (theorem) {
    case Theorem::thm1_even:
      if (sphere && convention == SphereConvention::printed) {
        value = spread * fact;
      } else {
        value = 2.0 * parity_sign((k + 2) / 2) * spread * fact;
      }
      break;
    case Theorem::thm1_odd:
      value = kPi * parity_sign((k - 1) / 2) * spread * fact;
      break;
    case Theorem::thm2:
      value = parity_sign(k / 2) * fact * sphere_area(k - 1) * (sphere ? 2.0 : 1.0);
      break;
  }
  return {value, theorem, space.kind, n, k};
}

double lambda_weight(const Space& space, double r) {
  if (r < 0) throw std::invalid_argument("lambda_weight: r must be >= 0");
  const double e = 0.5 * (space.k - 1);
  switch (space.kind) {
    case SpaceKind::euclidean: return 1.0;
    case SpaceKind::sphere:
      if (r >= 1) throw std::invalid_argument("lambda_weight: sphere needs r < 1");
      return std::pow((1.0 - r) * (1.0 + r), e);
    case SpaceKind::hyperbolic: return std::pow(1.0 + r * r, e);
  }
  return 1.0;
}

double c_k_value(int k) {
  if (k < 1) throw std::invalid_argument("c_k_value: k must be >= 1");
  return std::sqrt(kPi) * gamma_fn(0.5 * k) / (2.0 * gamma_fn(0.5 * (k + 1)));
}

double theta_k(double u, int k) {
  if (k < 1) throw std::invalid_argument("theta_k: k must be >= 1");
  if (!(u >= 1.0)) throw std::invalid_argument("theta_k: u must be >= 1");
  const double s = std::sqrt((u - 1.0) * (u + 1.0));
  switch (k) {
    case 1: return std::acosh(u);
    case 2: return u - 1.0;
    case 3: return 0.5 * (u * s - std::acosh(u));
    case 4: return u * u * u / 3.0 - u + 2.0 / 3.0;
    default: break;
  }
  // v = cosh w turns the integrand into sinh^{k-1} w
  return integrate_adaptive([k](double w) { return std::pow(std::sinh(w), k - 1); }, 0.0,
                            std::acosh(u), 1e-13);
}

double mader_A0(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("mader_A0: n must be even and >= 2");
  return parity_sign((n - 2) / 2) / (kPi * factorial(n - 2) * sphere_area(n - 2));
}

double mader_A1(int n, MaderConvention convention) {
  if (n < 3 || n % 2 != 1) throw std::invalid_argument("mader_A1: n must be odd and >= 3");
  const int e = convention == MaderConvention::derived ? (n + 1) / 2 : (n - 1) / 2;
  return parity_sign(e) / (2.0 * factorial(n - 2) * sphere_area(n - 2));
}

}  // namespace mader
