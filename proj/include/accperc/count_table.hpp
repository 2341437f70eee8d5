#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace accperc {

enum class CountKind { ExactA, UpperM, LowerMTilde, MSet };

std::string to_string(CountKind kind);

/// Path counts indexed by backstep number p for a fixed (L, H). Entries past
/// the stored range are zero.
template <typename Scalar>
struct CountTable {
  int dim = 0;
  int hamming = 0;
  CountKind kind = CountKind::ExactA;
  std::vector<Scalar> counts;

  Scalar at(int p) const {
    if (p < 0 || p >= static_cast<int>(counts.size())) return Scalar(0);
    return counts[static_cast<std::size_t>(p)];
  }

  Scalar total() const {
    Scalar sum = 0;
    for (const auto& c : counts) sum += c;
    return sum;
  }

  int max_p() const { return static_cast<int>(counts.size()) - 1; }
};

using IntegerTable = CountTable<mpz_class>;
using RationalTable = CountTable<mpq_class>;

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

/// Decimal string of an integer; rationals as "num/den" (or the integer
/// when the denominator is 1).
std::string decimal(const mpz_class& v);
std::string decimal(const mpq_class& v);

}  // namespace accperc
