#include "mader/kernels.hpp"

#include "mader/constants.hpp"
#include "mader/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mader {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-14;

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

void KernelParams::validate() const {
  if (m < -1) throw std::invalid_argument("kernel: m must be >= -1, got " + std::to_string(m));
  if (!(alpha > -1.0 && alpha < m + 1.0)) {
    throw std::invalid_argument("kernel: alpha must lie in (-1, m+1), got alpha=" +
                                std::to_string(alpha));
  }
  if (std::abs(alpha - std::round(alpha)) < 1e-6) {
    throw std::invalid_argument("kernel: alpha is within 1e-6 of an integer");
  }
}

bool KernelParams::symmetric() const { return std::abs(2.0 * alpha - m) < 1e-12; }

double binomial(double a, int p) {
  if (p < 0) return 0.0;
  double c = 1.0;
  for (int i = 0; i < p; ++i) c *= (a - i) / (i + 1);
  return c;
}

std::vector<double> lambda_coeffs(const KernelParams& p, int lower) {
  p.validate();
  if (lower < 0) throw std::invalid_argument("lambda_coeffs: lower limit must be >= 0");
  std::vector<double> lambda(static_cast<std::size_t>(p.m + 1));
  for (int r = 1; r <= p.m + 1; ++r) {
    double sum = 0.0;
    for (int l = lower; l <= p.m + 1 - r; ++l) {
      sum += sign_pow(l) * binomial(p.m - p.alpha, l) * binomial(p.alpha, p.m + 1 - r - l);
    }
    lambda[r - 1] = sum / r;
  }
  return lambda;
}

double mu_alpha(const KernelParams& p, double u) {
  p.validate();
  if (!(u > 0.0) || u == 1.0) throw std::invalid_argument("mu_alpha: need u > 0, u != 1");
  if (u < 1.0) return -kPi / std::tan(p.alpha * kPi);
  return sign_pow(p.m < 0 ? -p.m : p.m) * kPi / std::sin(p.alpha * kPi);
}

double theta_alpha(const KernelParams& p, double u) {
  p.validate();
  if (!(u >= 1.0)) throw std::invalid_argument("theta_alpha: u must be >= 1");
  if (u == 1.0) return 0.0;
  const double beta = p.m - p.alpha;
  // the distance to xi = 1 is passed exactly, so (xi - 1)^beta stays accurate for beta < 0
  return integrate_endpoint_singular(
      [&](double xi, double to_one, double) {
        return std::pow(1.0 + xi, p.alpha) * std::pow(to_one, beta);
      },
      1.0, u, kQuadTol);
}

double theta_alpha_interior(const KernelParams& p, double u) {
  p.validate();
  if (!(u > -1.0 && u <= 1.0)) throw std::invalid_argument("theta_alpha_interior: need -1 < u <= 1");
  if (u == 1.0) return 0.0;
  const double beta = p.m - p.alpha;
  return integrate_endpoint_singular(
      [&](double xi, double, double to_one) {
        return std::pow(1.0 + xi, p.alpha) * std::pow(to_one, beta);
      },
      u, 1.0, kQuadTol);
}

double phi_oracle(const KernelParams& p, double u) {
  p.validate();
  if (!(u > 0.0)) throw std::invalid_argument("phi_oracle: u must be > 0");
  const double a = p.alpha;
  const double beta = p.m - p.alpha;
  if (u >= 1.0) {
    const double gap = u - 1.0;
    return integrate_endpoint_singular(
        [&](double, double from_left, double to_right) {
          return std::pow(from_left, a) * std::pow(to_right, beta) * std::log(gap + to_right);
        },
        -1.0, 1.0, kQuadTol);
  }
  // [-1, u]: weight singular on the left, log on the right
  const double left = integrate_endpoint_singular(
      [&](double, double from_left, double to_u) {
        return std::pow(from_left, a) * std::pow((1.0 - u) + to_u, beta) * std::log(to_u);
      },
      -1.0, u, kQuadTol);
  const double right = integrate_endpoint_singular(
      [&](double, double from_u, double to_one) {
        return std::pow((1.0 + u) + from_u, a) * std::pow(to_one, beta) * std::log(from_u);
      },
      u, 1.0, kQuadTol);
  return left + right;
}

double phi_at_one(const KernelParams& p) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, double> memo;
  const auto key = std::make_pair(p.alpha, p.m);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const double value = phi_oracle(p, 1.0);
  std::lock_guard<std::mutex> lock(mutex);
  memo.emplace(key, value);
  return value;
}

double poly_part(const KernelParams& p, double u) {
  const std::vector<double> lambda = lambda_coeffs(p);
  const double csc = 1.0 / std::sin(p.alpha * kPi);
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t r = 0; r < lambda.size(); ++r) {
    power *= u;
    sum += lambda[r] * (power - 1.0);
  }
  return phi_at_one(p) - sign_pow(p.m < 0 ? -p.m : p.m) * kPi * csc * sum;
}

double phi_closed(const KernelParams& p, double u) {
  p.validate();
  if (!(u > 0.0) || u == 1.0) throw std::invalid_argument("phi_closed: need u > 0, u != 1");
  const double theta = u < 1.0 ? theta_alpha_interior(p, u) : theta_alpha(p, u);
  return mu_alpha(p, u) * theta + poly_part(p, u);
}

namespace {

KernelParams symmetric_params(int k) { return {0.5 * k - 1.0, k - 2}; }

}  // namespace

double psi_k_closed(int k, double u) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("psi_k_closed: k must be odd");
  if (!(u > 0.0) || u == 1.0) throw std::invalid_argument("psi_k_closed: need u > 0, u != 1");
  const KernelParams p = symmetric_params(k);
  const double poly = poly_part(p, u);
  if (u < 1.0) return poly;
  return poly + kPi * sign_pow((k - 1) / 2) * theta_k(u, k);
}

double psi_k_oracle(int k, double u) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("psi_k_oracle: k must be odd");
  return phi_oracle(symmetric_params(k), u);
}

double theta_poly(int k, double u) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("theta_poly: k must be even");
  const int j = k / 2 - 1;
  double sum = 0.0;
  for (int i = 0; i <= j; ++i) {
    sum += binomial(j, i) * sign_pow(j - i) * (std::pow(u, 2 * i + 1) - 1.0) / (2 * i + 1);
  }
  return sum;
}

double psi_sign(int k, double u) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("psi_sign: k must be even");
  if (!(u > 0.0)) throw std::invalid_argument("psi_sign: u must be > 0");
  const double ck = c_k_value(k);
  if (u >= 1.0) return -ck;
  return -ck + 2.0 * sign_pow(k / 2) * theta_poly(k, u);
}

double psi_sign_oracle(int k, double u) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("psi_sign_oracle: k must be even");
  auto w = [k](double v) { return std::pow((1.0 - v) * (1.0 + v), 0.5 * k - 1.0); };
  if (u >= 1.0) return -integrate_adaptive(w, 0.0, 1.0, 1e-13);
  return integrate_adaptive(w, u, 1.0, 1e-13) - integrate_adaptive(w, 0.0, u, 1e-13);
}

}  // namespace mader
