#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "accperc/errors.hpp"
#include "accperc/path_enumeration.hpp"
#include "oracles.hpp"

using namespace accperc;

namespace {

void check_against_naive(int L, int H, int max_p) {
  SearchOptions opt;
  opt.max_p = max_p;
  const auto fast = count_saw(L, H, opt);
  const auto slow = oracle::naive_saw_counts(L, H, max_p);
  for (int p = 0; p <= max_p; ++p) {
    const auto it = slow.find(p);
    const mpz_class expected(static_cast<unsigned long>(it == slow.end() ? 0 : it->second));
    INFO("L=" << L << " H=" << H << " p=" << p);
    CHECK(fast.at(p) == expected);
  }
}

}  // namespace

TEST_CASE("small exact totals") {
  CHECK(count_saw(1, 1).total() == 1);
  CHECK(count_saw(2, 2).total() == 2);
  CHECK(count_saw(3, 3).total() == 18);
  CHECK(count_saw(4, 4).total() == 6432);
  const auto a3 = count_saw(3, 3);
  CHECK(a3.at(0) == 6);
  CHECK(a3.at(1) == 6);
  CHECK(a3.at(2) == 6);
  CHECK(a3.max_p() == 2);
}

TEST_CASE("canonical search matches unreduced search") {
  for (int L = 1; L <= 4; ++L)
    for (int H = 1; H <= L; ++H) check_against_naive(L, H, ((1 << L) - 1 - H) / 2);
  for (int H = 1; H <= 5; ++H) check_against_naive(5, H, 3);
}

TEST_CASE("counts to the far corner are multiples of L!") {
  for (int L = 1; L <= 4; ++L) {
    const auto t = count_saw(L, L);
    for (int p = 0; p <= t.max_p(); ++p) CHECK(t.at(p) % factorial(L) == 0);
  }
}

TEST_CASE("no path is longer than the number of corners allows") {
  for (int L = 2; L <= 4; ++L)
    for (int H = 1; H <= L; ++H) {
      const auto t = count_saw(L, H);
      CHECK(H + 2 * t.max_p() <= (1 << L) - 1);
    }
}

TEST_CASE("closed forms for one and two backsteps") {
  CHECK(closed_form_p1(3) == 6);
  CHECK(closed_form_p1(2) == 0);
  CHECK(closed_form_p1(5) == 1200);
  CHECK(closed_form_p2(5) == 120 * 107);
  CHECK(closed_form_p2(2) == 0);
  for (int L = 3; L <= 5; ++L) {
    SearchOptions opt;
    opt.max_p = 2;
    const auto t = count_saw(L, L, opt);
    CHECK(t.at(1) == closed_form_p1(L));
    CHECK(t.at(2) == closed_form_p2(L));
  }
}

TEST_CASE("asymptotic form") {
  CHECK(asymptotic_p(7, 0).value == doctest::Approx(5040.0));
  CHECK(asymptotic_p(5, 1).value == doctest::Approx(2500.0));
  const double exact = closed_form_p1(40).get_d();
  CHECK(std::abs(exact / asymptotic_p(40, 1).value - 1.0) < 0.15);
  const auto huge = asymptotic_p(1000, 50);
  CHECK(std::isinf(huge.value));
  CHECK(huge.log_value > 700.0);
}

TEST_CASE("search guards") {
  CHECK_THROWS_AS(count_saw(7, 7), CapExceeded);
  SearchOptions tight;
  tight.budget_nodes = 100;
  CHECK_THROWS_AS(count_saw(5, 5, tight), BudgetExceeded);
  CHECK_THROWS_AS(count_saw(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(count_saw(3, 4), std::invalid_argument);
}

TEST_CASE("worker count does not change counts") {
  SearchOptions one, many;
  one.max_p = many.max_p = 4;
  many.workers = 4;
  for (int H = 1; H <= 5; ++H) CHECK(count_saw(5, H, one).counts == count_saw(5, H, many).counts);
}

TEST_CASE("truncated search at L = 7") {
  SearchOptions opt;
  opt.max_p = 1;
  const auto t = count_saw(7, 7, opt);
  CHECK(t.at(0) == 5040);
  CHECK(t.at(1) == closed_form_p1(7));
}

TEST_CASE("m-set listings") {
  auto listed = [](int L) {
    std::set<std::string> s;
    for (const auto& p : list_mset(L, L)) s.insert(p.to_string());
    return s;
  };
  CHECK(listed(1) == std::set<std::string>{"1"});
  CHECK(listed(2) == std::set<std::string>{"12", "21"});
  CHECK(listed(3) ==
        std::set<std::string>{"123", "132", "312", "213", "231", "321", "31323", "32313"});
  // "32132" has two 3s, so it ends at 100, not 111; the mirror of 31323
  // under 1 <-> 2 is 32313.
  CHECK_FALSE(endpoint_valid(PathCode::parse("32132", 3), EndpointSpec(3, 3)));
}

TEST_CASE("m-set paths are valid and counted consistently") {
  for (int L = 1; L <= 5; ++L)
    for (int H = 1; H <= L; ++H) {
      const auto result = enumerate_mset(L, H, true);
      const EndpointSpec spec(L, H);
      std::vector<mpz_class> bucket(result.counts.counts.size());
      for (const auto& path : result.paths) {
        REQUIRE(is_self_avoiding(path));
        REQUIRE(endpoint_valid(path, spec));
        const int p = backstep_count(path, spec);
        REQUIRE(p < static_cast<int>(bucket.size()));
        ++bucket[p];
      }
      INFO("L=" << L << " H=" << H);
      CHECK(bucket == result.counts.counts);
      CHECK(result.counts.counts == mset_counts(L, H).counts);
    }
}

TEST_CASE("m-set counts never exceed exact counts") {
  for (int L = 1; L <= 4; ++L)
    for (int H = 1; H <= L; ++H) {
      const auto m = mset_counts(L, H);
      const auto a = count_saw(L, H);
      for (int p = 0; p <= m.max_p(); ++p) CHECK(m.at(p) <= a.at(p));
    }
}

TEST_CASE("exact expected number of open paths") {
  CHECK(exact_expected_theta(3, 3, 1.0) == 0.0);
  CHECK(exact_expected_theta(1, 1, 0.3) == doctest::Approx(1.0));
  CHECK(exact_expected_theta(3, 3, 0.0) == doctest::Approx(3.0 + 0.25 + 1.0 / 120).epsilon(1e-14));
  // a_{2,1} = 2, a_{2,1,1}: paths 1,2 ... H=1 in L=2 is "1" and "212".
  const double x = 0.4;
  CHECK(exact_expected_theta(2, 1, x) == doctest::Approx(1.0 + std::pow(1 - x, 2) / 2).epsilon(1e-14));
}
