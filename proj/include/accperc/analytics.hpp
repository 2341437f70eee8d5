#pragma once

#include <span>
#include <vector>

namespace accperc {

/// Root of sinh(1-x)^alpha cosh(1-x)^{1-alpha} = 1.
struct CriticalPoint {
  double alpha = 0.0;
  double x_star = 0.0;
  /// |sinh(1-x*)^alpha cosh(1-x*)^{1-alpha} - 1|
  double residual = 0.0;
  /// alpha == 0: x* = 1 is the limit of the root, not a root.
  bool degenerate = false;
};

/// Bisection on alpha ln sinh(1-x) + (1-alpha) ln cosh(1-x), strictly
/// decreasing in x, down to a bracket of width 1e-14, then one secant step.
CriticalPoint critical_x(double alpha);

std::vector<CriticalPoint> critical_curve(std::span<const double> alphas);

/// E^x(Theta~) = L (1-x)^{L-1}, the expected number of open shortest paths.
double minimal_path_expectation(int L, double x);

/// x_c(L) = 1 - exp(-ln L / (L-1)), where minimal_path_expectation(L, .)
/// crosses 1. For L = 1 the expectation is identically 1; the continuous
/// limit 1 - 1/e is returned.
double x_c(int L);

struct AveragedExpectation {
  double exact_sum = 0.0;    // sum_H 2^{-L} C(L,H) G'_{L,H}(1-x)
  double closed_form = 0.0;  // L (e^{1-x}/2)^L
  double log_exact_sum = 0.0;
  double log_closed_form = 0.0;
};

/// Upper bound on E^x(Theta) when the fittest site is uniform over the
/// hypercube, by two routes.
AveragedExpectation averaged_expectation(int L, double x);

struct LimitDiagnostic {
  int L = 0;
  int H = 0;
  double x = 0.0;
  double lower_root = 0.0;  // g'_{L,H}(1-x)^{1/L}
  double upper_root = 0.0;  // G'_{L,H}(1-x)^{1/L}
  double limit = 0.0;       // sinh(1-x)^a cosh(1-x)^{1-a}, a = H/L
};

LimitDiagnostic limit_diagnostic(int L, int H, double x);

/// sinh(1-x)^alpha cosh(1-x)^{1-alpha}
double growth_rate(double alpha, double x);

}  // namespace accperc
