#include "accperc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "accperc/bounds.hpp"

namespace accperc {

namespace {

double log_growth(double alpha, double x) {
  const double X = 1.0 - x;
  return alpha * std::log(std::sinh(X)) + (1.0 - alpha) * std::log(std::cosh(X));
}

double log_sum_exp(std::span<const double> logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum);
}

}  // namespace

double growth_rate(double alpha, double x) {
  const double X = 1.0 - x;
  return std::pow(std::sinh(X), alpha) * std::pow(std::cosh(X), 1.0 - alpha);
}

CriticalPoint critical_x(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (alpha == 0.0) return {0.0, 1.0, 0.0, true};

  // f(0) > 0 and f -> -inf as x -> 1.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (log_growth(alpha, mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double f_lo = log_growth(alpha, lo);
  const double f_hi = log_growth(alpha, hi);
  double x = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  if (std::isfinite(f_hi) && f_lo != f_hi) {
    const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (secant >= lo && secant <= hi &&
        std::abs(log_growth(alpha, secant)) < std::abs(log_growth(alpha, x)))
      x = secant;
  }
  return {alpha, x, std::abs(growth_rate(alpha, x) - 1.0), false};
}

std::vector<CriticalPoint> critical_curve(std::span<const double> alphas) {
  std::vector<CriticalPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(critical_x(a));
  return out;
}

double minimal_path_expectation(int L, double x) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  return L * std::pow(1.0 - x, L - 1);
}

double x_c(int L) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (L == 1) return -std::expm1(-1.0);
  return -std::expm1(-std::log(double(L)) / (L - 1));
}

AveragedExpectation averaged_expectation(int L, double x) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  const double X = 1.0 - x;
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(L) + 1);
  const double log_pick_all = std::lgamma(L + 1.0) - L * std::log(2.0);
  for (int H = 0; H <= L; ++H) {
    const double log_weight = log_pick_all - std::lgamma(H + 1.0) - std::lgamma(L - H + 1.0);
    logs.push_back(log_weight + log_upper_derivative(L, H, X));
  }
  AveragedExpectation out;
  out.log_exact_sum = log_sum_exp(logs);
  out.log_closed_form = std::log(double(L)) + L * (X - std::log(2.0));
  out.exact_sum = std::exp(out.log_exact_sum);
  out.closed_form = std::exp(out.log_closed_form);
  return out;
}

LimitDiagnostic limit_diagnostic(int L, int H, double x) {
  const auto b = eval_bounds(L, H, x);
  LimitDiagnostic out;
  out.L = L;
  out.H = H;
  out.x = x;
  out.lower_root = std::exp(b.log_lower / L);
  out.upper_root = std::exp(b.log_upper / L);
  out.limit = growth_rate(double(H) / L, x);
  return out;
}

}  // namespace accperc
