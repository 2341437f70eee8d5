#include <doctest.h>

#include <stdexcept>

#include "accperc/hypercube.hpp"

using namespace accperc;

namespace {

Genotype walk(const char* code, int L) { return apply_path(Genotype::zeros(L), PathCode::parse(code, L)); }

}  // namespace

TEST_CASE("apply_path toggles one bit per step") {
  CHECK(walk("123", 3) == Genotype::ones(3));
  CHECK(walk("", 3) == Genotype::zeros(3));
  CHECK(walk("12131", 3) == Genotype::ones(3));
  CHECK(walk("11", 2) == Genotype::zeros(2));
  CHECK_THROWS_AS(apply_path(Genotype::zeros(4), PathCode::parse("12", 3)), std::invalid_argument);
}

TEST_CASE("endpoint validity counts label parities") {
  CHECK(endpoint_valid(PathCode::parse("123", 3), EndpointSpec(3, 3)));
  CHECK(endpoint_valid(PathCode::parse("1213212", 3), EndpointSpec(3, 3)));
  CHECK_FALSE(endpoint_valid(PathCode::parse("12", 2), EndpointSpec(2, 1)));
  CHECK(endpoint_valid(PathCode::parse("1221", 2), EndpointSpec(2, 0)));
  CHECK(EndpointSpec(10, 5).target().bits == 0b0000011111u);
  CHECK_THROWS_AS(EndpointSpec(3, 4), std::invalid_argument);
}

TEST_CASE("self-avoidance on listed paths") {
  CHECK_FALSE(is_self_avoiding(PathCode::parse("11", 3)));
  CHECK_FALSE(is_self_avoiding(PathCode::parse("1212", 3)));
  CHECK_FALSE(is_self_avoiding(PathCode::parse("12313424", 4)));
  CHECK(is_self_avoiding(PathCode::parse("31323", 3)));
  CHECK(is_self_avoiding(PathCode::parse("1213212", 3)));
  CHECK(is_self_avoiding(PathCode(3)));
}

TEST_CASE("backstep counts") {
  CHECK(backstep_count(PathCode::parse("123", 3), EndpointSpec(3, 3)) == 0);
  CHECK(backstep_count(PathCode::parse("12131", 3), EndpointSpec(3, 3)) == 1);
  CHECK(backstep_count(PathCode::parse("1213212", 3), EndpointSpec(3, 3)) == 2);
  CHECK_THROWS_AS(backstep_count(PathCode::parse("12", 3), EndpointSpec(3, 3)), std::invalid_argument);
}

TEST_CASE("path code text forms") {
  const auto p = PathCode::parse("1213212", 3);
  CHECK(p.size() == 7);
  CHECK(p.label(1) == 2);
  CHECK(p.to_string() == "1213212");
  const auto q = PathCode::parse("1,2,13,2", 13);
  CHECK(q.size() == 4);
  CHECK(q.label(2) == 13);
  CHECK(q.to_string() == "1,2,13,2");
  CHECK(PathCode::parse(q.to_string(), 13) == q);
  CHECK_THROWS_AS(PathCode::parse("124", 3), std::invalid_argument);
  CHECK_THROWS_AS(PathCode::parse("1,0", 3), std::invalid_argument);
  CHECK_THROWS_AS(PathCode::parse("1x", 3), std::invalid_argument);
}

TEST_CASE("genotype bounds") {
  CHECK(Genotype::ones(62).weight() == 62);
  CHECK(Genotype::ones(7).bits == 0x7fu);
  CHECK_NOTHROW(check_dim(62));
  CHECK_THROWS_AS(check_dim(63), std::invalid_argument);
  CHECK_THROWS_AS(check_dim(0), std::invalid_argument);
}

TEST_CASE("both self-avoidance predicates agree on every short path") {
  for (int L = 1; L <= 4; ++L) {
    // All label strings of length 0..10, odometer style.
    for (int n = 0; n <= 10; ++n) {
      std::vector<std::uint8_t> steps(n, 0);
      for (;;) {
        const PathCode path(L, steps);
        const bool a = is_self_avoiding(path);
        const bool b = is_self_avoiding_by_substring(path);
        if (a != b) FAIL("predicates disagree on " << path.to_string() << " at L=" << L);
        const auto end = apply_path(Genotype::zeros(L), path);
        if (end.weight() % 2 != n % 2) FAIL("parity broken on " << path.to_string());
        int k = 0;
        while (k < n && ++steps[k] == L) steps[k++] = 0;
        if (k == n) break;
      }
    }
  }
}

TEST_CASE("valid paths reach the canonical endpoint and stay short") {
  for (int L = 1; L <= 3; ++L)
    for (int H = 0; H <= L; ++H)
      for (int n = 0; n <= 9; ++n) {
        std::vector<std::uint8_t> steps(n, 0);
        for (;;) {
          const PathCode path(L, steps);
          const EndpointSpec spec(L, H);
          if (endpoint_valid(path, spec)) {
            CHECK(apply_path(Genotype::zeros(L), path) == spec.target());
            if (is_self_avoiding(path)) CHECK(path.size() <= (std::size_t{1} << L) - 1);
          }
          int k = 0;
          while (k < n && ++steps[k] == L) steps[k++] = 0;
          if (k == n) break;
        }
      }
}
