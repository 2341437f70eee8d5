#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <vector>

namespace accperc {

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, indexed by degree. The zero polynomial has no
/// coefficients; trailing zeros are trimmed by every operation.
class IntegerPolynomial {
public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<mpz_class> coeffs);
  IntegerPolynomial(std::initializer_list<long> coeffs);

  static IntegerPolynomial monomial(const mpz_class& c, std::size_t degree);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  mpz_class coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : mpz_class(0);
  }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  mpz_class operator()(const mpz_class& at) const;

  IntegerPolynomial& operator+=(const IntegerPolynomial& rhs);
  IntegerPolynomial& operator-=(const IntegerPolynomial& rhs);

  friend IntegerPolynomial operator+(IntegerPolynomial lhs, const IntegerPolynomial& rhs) {
    return lhs += rhs;
  }
  friend IntegerPolynomial operator-(IntegerPolynomial lhs, const IntegerPolynomial& rhs) {
    return lhs -= rhs;
  }
  friend IntegerPolynomial operator*(const IntegerPolynomial& lhs, const IntegerPolynomial& rhs);
  friend bool operator==(const IntegerPolynomial& lhs, const IntegerPolynomial& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

  /// p(-X).
  IntegerPolynomial reflected() const;

  /// Exact division of every coefficient by 2^k; throws std::domain_error
  /// if some coefficient is not divisible.
  IntegerPolynomial divided_by_pow2(unsigned k) const;

  /// Every nonzero coefficient sits at a degree of the given parity.
  bool has_parity(int parity) const;

private:
  void trim();

  std::vector<mpz_class> coeffs_;
};

/// p(inner(X)) by Horner's scheme. `inner` must have a zero constant term,
/// which lets each Horner step update the accumulator in place.
IntegerPolynomial compose(const IntegerPolynomial& p, const IntegerPolynomial& inner);

}  // namespace accperc
