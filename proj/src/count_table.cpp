#include "accperc/count_table.hpp"

namespace accperc {

std::string to_string(CountKind kind) {
  switch (kind) {
    case CountKind::ExactA: return "exact_a";
    case CountKind::UpperM: return "upper_M";
    case CountKind::LowerMTilde: return "lower_m_tilde";
    case CountKind::MSet: return "mset_m";
  }
  return "unknown";
}

mpz_class binomial(long n, long k) {
  mpz_class out;
  if (k < 0 || n < 0 || k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

std::string decimal(const mpz_class& v) { return v.get_str(10); }

std::string decimal(const mpq_class& v) {
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

}  // namespace accperc
