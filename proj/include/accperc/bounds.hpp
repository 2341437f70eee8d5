#pragma once

#include <gmpxx.h>

#include <vector>

#include "accperc/count_table.hpp"
#include "accperc/polynomial.hpp"

namespace accperc {

/// Upper-bound counts M_{L,H,p}: walks of length H+2p from the origin to
/// the canonical endpoint with self-intersections allowed. Built by the
/// two-phase recurrence, first inside the H-cube
///   M_{l+1,p} = sum_q C(l+1+2p, 2q+1) M_{l,p-q},   M_{1,p} = 1,
/// then through the back directions
///   M_{l+1,H,p} = sum_q C(H+2p, 2q) M_{l,H,p-q}.
IntegerTable majo_table(int L, int H, int max_p);

/// Same numbers by inclusion-exclusion on sinh(X)^H cosh(X)^{L-H}:
///   M_{L,H,p} = 2^{-L} sum_{i,j} (-1)^i C(H,i) C(L-H,j) (L-2i-2j)^{H+2p}.
IntegerTable majo_table_expanded(int L, int H, int max_p);

/// Lower-bound counts m~_{L,H,p} from the damped recurrences, kept as exact
/// rationals. Entries with p > max_p are dropped; recursion only ever reads
/// lower p, so the kept entries are exact.
RationalTable mino_tilde_table(int L, int H, int max_p);

/// A truncated series and its first derivative at one point.
struct SeriesValue {
  double value;
  double derivative;
};

/// sinh_l(X) = sum_{2q<l} X^{2q+1}/(2q+1)! [1-(2q+1)/(l+1)]^{2q}.
SeriesValue sinh_truncated(int l, double X);

/// cosh_H(X) = sum_{2q<H+1} X^{2q}/(2q)! [1-2q/(H+1)]^{2q-1}.
SeriesValue cosh_truncated(int H, double X);

/// ln G'_{L,H}(X), G_{L,H} = sinh^H cosh^{L-H}. Accepts 0 <= H <= L;
/// -inf where the derivative vanishes.
double log_upper_derivative(int L, int H, double X);

/// ln g'_{L,H}(X), g_{L,H} = prod_{l<=H} sinh_l(X) cosh_H(X)^{L-H}.
double log_lower_derivative(int L, int H, double X);

struct BoundPair {
  int L = 0;
  int H = 0;
  double x = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double log_lower = 0.0;
  double log_upper = 0.0;
};

/// g'_{L,H}(1-x) <= E^x(Theta) <= G'_{L,H}(1-x), evaluated in log space.
/// `lower`/`upper` are +inf when the value leaves double range; the log
/// fields stay finite.
BoundPair eval_bounds(int L, int H, double x);

/// phi_L(X) = sum_p m_{L,p} X^{L+2p} through
///   phi_{L+1}(X) = (1+X)/2 phi_L(X+X^2) - (1-X)/2 phi_L(X-X^2).
/// Throws CapExceeded above `max_L` (default 16).
IntegerPolynomial phi_polynomial(int L, int max_L = 16);

/// phi_1, ..., phi_L.
std::vector<IntegerPolynomial> phi_sequence(int L, int max_L = 16);

/// d_L = (2^{L+1}-1)/3 for odd L, (2^{L+1}-2)/3 for even L.
long degree_formula(int L);

struct ALBounds {
  int L = 0;
  long d_prev = 0;    // d_{L-1}
  mpz_class lower;    // 2^{d_{L-1}}
  mpz_class upper;    // sum of M_{L,p} over L+2p <= 2^L
};

/// Bounds on the number a_L of self-avoiding paths between opposite
/// corners. Supports 2 <= L <= 20.
ALBounds aL_bounds(int L);

}  // namespace accperc
