#include "accperc/polynomial.hpp"

#include <stdexcept>
#include <utility>

namespace accperc {

IntegerPolynomial::IntegerPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntegerPolynomial IntegerPolynomial::monomial(const mpz_class& c, std::size_t degree) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return IntegerPolynomial(std::move(v));
}

void IntegerPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntegerPolynomial::operator()(const mpz_class& at) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& lhs, const IntegerPolynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<mpz_class> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      if (rhs.coeffs_[j] != 0) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial IntegerPolynomial::reflected() const {
  auto out = *this;
  for (std::size_t k = 1; k < out.coeffs_.size(); k += 2) out.coeffs_[k] = -out.coeffs_[k];
  return out;
}

IntegerPolynomial IntegerPolynomial::divided_by_pow2(unsigned k) const {
  auto out = *this;
  for (auto& c : out.coeffs_) {
    if (!mpz_divisible_2exp_p(c.get_mpz_t(), k))
      throw std::domain_error("polynomial coefficient not divisible by 2^k");
    mpz_tdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), k);
  }
  return out;
}

bool IntegerPolynomial::has_parity(int parity) const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0 && static_cast<int>(k % 2) != (parity & 1)) return false;
  return true;
}

IntegerPolynomial compose(const IntegerPolynomial& p, const IntegerPolynomial& inner) {
  if (inner.coeff(0) != 0)
    throw std::invalid_argument("compose: inner polynomial must vanish at 0");
  if (p.is_zero()) return {};
  if (inner.is_zero()) return IntegerPolynomial({p.coeff(0)});

  // Sparse view of the inner polynomial.
  std::vector<std::pair<std::size_t, mpz_class>> terms;
  for (std::size_t j = 1; j < inner.coeffs().size(); ++j)
    if (inner.coeffs()[j] != 0) terms.emplace_back(j, inner.coeffs()[j]);

  const auto d = static_cast<std::size_t>(p.degree());
  const auto e = static_cast<std::size_t>(inner.degree());
  std::vector<mpz_class> acc(d * e + 1);
  std::size_t top = 0;  // current degree of acc
  acc[0] = p.coeffs()[d];
  mpz_class tmp;
  for (std::size_t k = d; k-- > 0;) {
    // acc <- acc * inner + c_k, in place from the top degree down: every
    // new coefficient reads only lower-degree entries.
    const std::size_t new_top = top + e;
    for (std::size_t i = new_top + 1; i-- > 0;) {
      tmp = 0;
      for (const auto& [j, c] : terms) {
        if (j > i) break;
        if (i - j > top) continue;
        if (c == 1)
          tmp += acc[i - j];
        else
          tmp += c * acc[i - j];
      }
      acc[i].swap(tmp);
    }
    acc[0] += p.coeffs()[k];
    top = new_top;
  }
  return IntegerPolynomial(std::move(acc));
}

}  // namespace accperc
