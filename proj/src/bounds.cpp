#include "accperc/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "accperc/errors.hpp"
#include "accperc/hypercube.hpp"

namespace accperc {

namespace {

void check_table_args(int L, int H, int max_p) {
  check_dim(L);
  if (H < 1 || H > L) throw std::invalid_argument("H must lie in 1..L");
  if (max_p < 0) throw std::invalid_argument("max_p must be >= 0");
}

using IntVec = std::vector<mpz_class>;
using RatVec = std::vector<mpq_class>;

/// (num/den)^e for e >= 0.
mpq_class rational_pow(long num, long den, unsigned long e) {
  mpz_class n, d;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(num), e);
  mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(den), e);
  mpq_class out(n, d);
  out.canonicalize();
  return out;
}

}  // namespace

IntegerTable majo_table(int L, int H, int max_p) {
  check_table_args(L, H, max_p);
  const auto P = static_cast<std::size_t>(max_p);
  IntVec m(P + 1, mpz_class(1));  // M_{1,p} = 1
  for (long l = 1; l < H; ++l) {
    IntVec next(P + 1);
    for (std::size_t p = 0; p <= P; ++p)
      for (std::size_t q = 0; q <= p; ++q)
        next[p] += binomial(l + 1 + 2 * long(p), 2 * long(q) + 1) * m[p - q];
    m = std::move(next);
  }
  for (long l = H; l < L; ++l) {
    IntVec next(P + 1);
    for (std::size_t p = 0; p <= P; ++p)
      for (std::size_t q = 0; q <= p; ++q)
        next[p] += binomial(H + 2 * long(p), 2 * long(q)) * m[p - q];
    m = std::move(next);
  }
  return {L, H, CountKind::UpperM, std::move(m)};
}

IntegerTable majo_table_expanded(int L, int H, int max_p) {
  check_table_args(L, H, max_p);
  IntegerTable table{L, H, CountKind::UpperM, IntVec(static_cast<std::size_t>(max_p) + 1)};
  for (long i = 0; i <= H; ++i) {
    for (long j = 0; j <= L - H; ++j) {
      mpz_class weight = binomial(H, i) * binomial(L - H, j);
      if (i % 2) weight = -weight;
      const long rate = L - 2 * i - 2 * j;
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), mpz_class(rate).get_mpz_t(), static_cast<unsigned long>(H));
      const mpz_class step = rate * rate;
      for (auto& c : table.counts) {
        c += weight * power;
        power *= step;
      }
    }
  }
  for (auto& c : table.counts) mpz_tdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(L));
  return table;
}

RationalTable mino_tilde_table(int L, int H, int max_p) {
  check_table_args(L, H, max_p);
  const auto P = static_cast<std::size_t>(max_p);
  RatVec m(P + 1);
  m[0] = 1;  // m~_{1,p} = 1_{p=0}
  for (long l = 1; l < H; ++l) {
    RatVec next(P + 1);
    for (std::size_t q = 0; 2 * long(q) < l + 1 && q <= P; ++q) {
      const mpq_class damping = rational_pow(l + 1 - 2 * long(q), l + 2, 2 * q);
      for (std::size_t p = q; p <= P; ++p) {
        if (m[p - q] == 0) continue;
        next[p] += mpq_class(binomial(l + 1 + 2 * long(p), 2 * long(q) + 1)) * damping * m[p - q];
      }
    }
    m = std::move(next);
  }
  for (long l = H; l < L; ++l) {
    RatVec next(P + 1);
    for (std::size_t q = 0; 2 * long(q) < H + 1 && q <= P; ++q) {
      const mpq_class damping = q == 0 ? mpq_class(1) : rational_pow(H + 1 - 2 * long(q), H + 1, 2 * q - 1);
      for (std::size_t p = q; p <= P; ++p) {
        if (m[p - q] == 0) continue;
        next[p] += mpq_class(binomial(H + 2 * long(p), 2 * long(q))) * damping * m[p - q];
      }
    }
    m = std::move(next);
  }
  return {L, H, CountKind::LowerMTilde, std::move(m)};
}

SeriesValue sinh_truncated(int l, double X) {
  if (l < 1) throw std::invalid_argument("sinh_l needs l >= 1");
  if (X < 0) throw std::invalid_argument("sinh_l needs X >= 0");
  double value = 0.0, derivative = 0.0;
  double even = 1.0;  // X^{2q}/(2q)!
  for (long q = 0; 2 * q < l; ++q) {
    const double odd = even * X / double(2 * q + 1);  // X^{2q+1}/(2q+1)!
    const double damping = std::pow(double(l - 2 * q) / double(l + 1), double(2 * q));
    value += odd * damping;
    derivative += even * damping;
    if (odd == 0.0 || (double(2 * q + 2) > X && even < 1e-20 * derivative)) break;
    even = odd * X / double(2 * q + 2);
  }
  return {value, derivative};
}

SeriesValue cosh_truncated(int H, double X) {
  if (H < 0) throw std::invalid_argument("cosh_H needs H >= 0");
  if (X < 0) throw std::invalid_argument("cosh_H needs X >= 0");
  double value = 1.0, derivative = 0.0;
  double odd = X;  // X^{2q-1}/(2q-1)!, q = 1
  for (long q = 1; 2 * q < H + 1; ++q) {
    const double even = odd * X / double(2 * q);  // X^{2q}/(2q)!
    const double damping = std::pow(double(H + 1 - 2 * q) / double(H + 1), double(2 * q - 1));
    value += even * damping;
    derivative += odd * damping;
    if (even == 0.0 || (double(2 * q + 1) > X && odd < 1e-20 * derivative)) break;
    odd = even * X / double(2 * q + 1);
  }
  return {value, derivative};
}

double log_upper_derivative(int L, int H, double X) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (H < 0 || H > L) throw std::invalid_argument("H must lie in 0..L");
  if (X < 0) throw std::invalid_argument("X must be >= 0");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (X == 0.0) return H == 1 ? 0.0 : kNegInf;
  const double log_s = std::log(std::sinh(X));
  const double log_c = std::log(std::cosh(X));
  const double t = std::tanh(X);
  // sinh^{H-1} cosh^{L-H-1} (H cosh^2 + (L-H) sinh^2)
  return (H - 1) * log_s + (L - H + 1) * log_c + std::log(H + (L - H) * t * t);
}

double log_lower_derivative(int L, int H, double X) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (H < 0 || H > L) throw std::invalid_argument("H must lie in 0..L");
  if (X < 0) throw std::invalid_argument("X must be >= 0");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (X == 0.0) return H == 1 ? 0.0 : kNegInf;
  double log_g = 0.0, ratio_sum = 0.0;
  for (int l = 1; l <= H; ++l) {
    const auto s = sinh_truncated(l, X);
    log_g += std::log(s.value);
    ratio_sum += s.derivative / s.value;
  }
  if (L > H) {
    const auto c = cosh_truncated(H, X);
    log_g += (L - H) * std::log(c.value);
    ratio_sum += (L - H) * c.derivative / c.value;
  }
  if (ratio_sum == 0.0) return kNegInf;
  return log_g + std::log(ratio_sum);
}

BoundPair eval_bounds(int L, int H, double x) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (H < 1 || H > L) throw std::invalid_argument("H must lie in 1..L");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  BoundPair b{L, H, x, 0.0, 0.0, 0.0, 0.0};
  const double X = 1.0 - x;
  b.log_lower = log_lower_derivative(L, H, X);
  b.log_upper = log_upper_derivative(L, H, X);
  b.lower = std::exp(b.log_lower);
  b.upper = std::exp(b.log_upper);
  return b;
}

std::vector<IntegerPolynomial> phi_sequence(int L, int max_L) {
  if (L < 1) throw std::invalid_argument("phi_L needs L >= 1");
  if (L > max_L) throw CapExceeded("phi_L is limited to L <= " + std::to_string(max_L));
  const IntegerPolynomial plus{0, 1, 1};  // X + X^2
  const IntegerPolynomial one_plus{1, 1};
  const IntegerPolynomial one_minus{1, -1};
  std::vector<IntegerPolynomial> out{IntegerPolynomial{0, 1}};
  for (int l = 1; l < L; ++l) {
    const auto& phi = out.back();
    if (!phi.has_parity(l)) throw std::logic_error("phi_L lost its parity");
    // X - X^2 = -((-X) + (-X)^2) and phi_l(-Y) = (-1)^l phi_l(Y), so
    // phi_l(X - X^2) = (-1)^l psi(-X) with psi = phi_l(X + X^2).
    const auto psi = compose(phi, plus);
    auto psi_minus = psi.reflected();
    if (l % 2) psi_minus = IntegerPolynomial{} - psi_minus;
    const auto doubled = one_plus * psi - one_minus * psi_minus;
    out.push_back(doubled.divided_by_pow2(1));
  }
  return out;
}

IntegerPolynomial phi_polynomial(int L, int max_L) { return phi_sequence(L, max_L).back(); }

long degree_formula(int L) {
  if (L < 1 || L > 60) throw std::invalid_argument("degree_formula needs 1 <= L <= 60");
  const long pow2 = 1L << (L + 1);
  return L % 2 ? (pow2 - 1) / 3 : (pow2 - 2) / 3;
}

namespace {

/// sum_{p=0}^{P} r^{L+2p}
mpz_class power_run(long r, long L, long P) {
  mpz_class base;
  mpz_pow_ui(base.get_mpz_t(), mpz_class(r).get_mpz_t(), static_cast<unsigned long>(L));
  if (r == 0) return 0;
  if (r == 1 || r == -1) return base * (P + 1);
  mpz_class ratio_pow;
  mpz_pow_ui(ratio_pow.get_mpz_t(), mpz_class(r * r).get_mpz_t(), static_cast<unsigned long>(P + 1));
  mpz_class out = base * (ratio_pow - 1);
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), mpz_class(r * r - 1).get_mpz_t());
  return out;
}

}  // namespace

ALBounds aL_bounds(int L) {
  if (L < 1 || L > 20) throw CapExceeded("aL_bounds supports 1 <= L <= 20");
  ALBounds out;
  out.L = L;
  out.d_prev = L == 1 ? 0 : degree_formula(L - 1);
  mpz_ui_pow_ui(out.lower.get_mpz_t(), 2, static_cast<unsigned long>(out.d_prev));
  // Paths no longer than 2^L: p <= (2^L - L)/2. M_{L,p} summed over that
  // range through the inclusion-exclusion form of sinh^L.
  const long P = ((1L << L) - L) / 2;
  mpz_class sum = 0;
  for (long j = 0; j <= L; ++j) {
    mpz_class term = binomial(L, j) * power_run(L - 2 * j, L, P);
    if (j % 2) sum -= term;
    else sum += term;
  }
  mpz_tdiv_q_2exp(out.upper.get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(L));
  return out;
}

}  // namespace accperc
