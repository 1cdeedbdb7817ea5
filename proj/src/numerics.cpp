#include "mader/numerics.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace mader {

const QuadRule<double>& cached_gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadRule<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<const QuadRule<double>>(gauss_legendre<double>(n))).first;
  }
  return *it->second;
}

namespace {

constexpr int kPanelNodes = 20;
constexpr int kMaxDepth = 48;

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, double floor, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_gl(f, a, mid, kPanelNodes);
  const double right = integrate_gl(f, mid, b, kPanelNodes);
  const double diff = std::abs(left + right - whole);
  if (!std::isfinite(left + right)) {
    throw std::runtime_error("integrate_adaptive: non-finite integrand value");
  }
  if (diff <= std::max(tol, floor) || diff <= 1e-15 * std::abs(left + right)) return left + right;
  if (depth >= kMaxDepth) {
    throw std::runtime_error("integrate_adaptive: refinement did not converge (non-integrable?)");
  }
  return adaptive_step(f, a, mid, left, 0.5 * tol, floor, depth + 1) +
         adaptive_step(f, mid, b, right, 0.5 * tol, floor, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_adaptive(f, b, a, tol);
  const double whole = integrate_gl(f, a, b, kPanelNodes);
  // roundoff floor: panels cannot resolve below a few ulps of the whole integral
  const double floor = 1e-15 * std::abs(whole);
  return adaptive_step(f, a, b, whole, tol, floor, 0);
}

double quad_log_singular(const std::function<double(double)>& f, double a, double b, double s,
                         double tol) {
  if (b < a) return -quad_log_singular(f, b, a, s, tol);
  if (s < a || s > b) {
    throw std::invalid_argument("quad_log_singular: singular point outside [a, b]");
  }
  double sum = 0.0;
  if (s > a) {
    // x = s - w^2, dx = 2w dw
    auto g = [&](double w) { return w == 0.0 ? 0.0 : 2.0 * w * f(s - w * w); };
    sum += integrate_adaptive(g, 0.0, std::sqrt(s - a), 0.5 * tol);
  }
  if (b > s) {
    auto g = [&](double w) { return w == 0.0 ? 0.0 : 2.0 * w * f(s + w * w); };
    sum += integrate_adaptive(g, 0.0, std::sqrt(b - s), 0.5 * tol);
  }
  return sum;
}

void RadialProfile::validate() const {
  if (grid.size() != values.size()) {
    throw std::invalid_argument("RadialProfile: grid and values differ in length");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument("RadialProfile: non-finite entry at index " + std::to_string(i));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("RadialProfile: grid not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
}

namespace {

std::vector<int> fit_powers(FitBasis basis, int degree) {
  std::vector<int> powers;
  for (int p = 0; p <= degree; ++p) {
    switch (basis) {
      case FitBasis::full:
        powers.push_back(p);
        break;
      case FitBasis::even:
        if (p % 2 == 0) powers.push_back(p);
        break;
      case FitBasis::odd_offset:
        if (p == 0 || p % 2 == 1) powers.push_back(p);
        break;
    }
  }
  return powers;
}

}  // namespace

DerivativeEstimate endpoint_derivative(const RadialProfile& profile, int order, int fit_degree,
                                       FitBasis basis) {
  profile.validate();
  if (order < 0) throw std::invalid_argument("endpoint_derivative: negative order");
  if (fit_degree < order + 1) {
    throw std::invalid_argument("endpoint_derivative: fit_degree must be at least order + 1");
  }
  const auto npts = static_cast<int>(profile.size());
  if (npts < fit_degree + 4) {
    throw std::invalid_argument("endpoint_derivative: need at least fit_degree + 4 grid points");
  }
  const std::vector<int> powers = fit_powers(basis, fit_degree);
  const auto term = std::find(powers.begin(), powers.end(), order);
  if (term == powers.end()) {
    // the requested derivative vanishes identically in this basis
    return {0.0, 0.0};
  }

  double scale = 0.0;
  double ymax = 0.0;
  for (int i = 0; i < npts; ++i) {
    scale = std::max(scale, std::abs(profile.grid[i]));
    ymax = std::max(ymax, std::abs(profile.values[i]));
  }
  if (scale == 0.0) throw std::invalid_argument("endpoint_derivative: degenerate grid");

  Eigen::MatrixXd design(npts, static_cast<Eigen::Index>(powers.size()));
  Eigen::VectorXd rhs(npts);
  for (int i = 0; i < npts; ++i) {
    const double x = profile.grid[i] / scale;
    for (std::size_t j = 0; j < powers.size(); ++j) design(i, j) = std::pow(x, powers[j]);
    rhs[i] = profile.values[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols()) {
    throw std::invalid_argument("endpoint_derivative: rank-deficient design");
  }
  const Eigen::VectorXd coeffs = qr.solve(rhs);
  const double rms = (design * coeffs - rhs).norm() / std::sqrt(static_cast<double>(npts));

  double factorial = 1.0;
  for (int i = 2; i <= order; ++i) factorial *= i;
  const double c = coeffs[term - powers.begin()];
  return {factorial * c / std::pow(scale, order), ymax > 0.0 ? rms / ymax : rms};
}

ChebyshevInterpolant::ChebyshevInterpolant(const std::function<double(double)>& f, double a,
                                           double b, int nodes)
    : a_(a), b_(b) {
  if (nodes < 2) throw std::invalid_argument("ChebyshevInterpolant: need at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("ChebyshevInterpolant: empty interval");
  points_.resize(nodes);
  values_.resize(nodes);
  weights_.resize(nodes);
  const int last = nodes - 1;
  for (int j = 0; j < nodes; ++j) {
    const double c = std::cos(std::numbers::pi * j / last);
    // endpoints set exactly so f sees a and b
    const double x = j == 0 ? b : (j == last ? a : 0.5 * (a + b) + 0.5 * (b - a) * c);
    points_[j] = x;
    values_[j] = f(x);
    weights_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == last) ? 0.5 : 1.0);
  }
}

double ChebyshevInterpolant::operator()(double x) const {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const double d = x - points_[j];
    if (d == 0.0) return values_[j];
    const double w = weights_[j] / d;
    num += w * values_[j];
    den += w;
  }
  return num / den;
}

}  // namespace mader
