#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <set>
#include <sstream>
#include <vector>

#include "accperc/errors.hpp"
#include "accperc/landscape.hpp"

using namespace accperc;

TEST_CASE("placement modes") {
  const auto ls = generate(3, PlacementMode::opposite_corner(), 0.5, {11, 3});
  CHECK(ls.fitness[0b111] == 1.0);
  CHECK(ls.fitness[0] == 0.5);
  CHECK(ls.start_fitness == 0.5);
  CHECK(hamming_to_fittest(ls) == 3);
  CHECK(generate(10, PlacementMode::fixed_hamming(5), 0.2, {1, 1}).fittest.bits == 0b0000011111u);
  CHECK(hamming_to_fittest(generate(7, PlacementMode::opposite_corner(), 0.1, {})) == 7);
  CHECK(hamming_to_fittest(generate(4, PlacementMode::fixed_hamming(2), 0.1, {})) == 2);
  CHECK(hamming_to_fittest(generate(4, PlacementMode::fixed_hamming(0), 1.0, {})) == 0);
}

TEST_CASE("site values") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto ls = generate(8, PlacementMode::uniform_random(), 0.4, {5, i});
    CHECK(ls.fitness[ls.fittest.bits] == 1.0);
    CHECK(ls.fittest.bits != 0);
    std::set<double> seen;
    for (std::uint64_t v = 0; v < ls.fitness.size(); ++v) {
      if (v == 0 || v == ls.fittest.bits) continue;
      CHECK(ls.fitness[v] > 0.0);
      CHECK(ls.fitness[v] < 1.0);
      seen.insert(ls.fitness[v]);
    }
    CHECK(seen.size() == ls.fitness.size() - 2);
  }
}

TEST_CASE("drawn start fitness") {
  const auto ls = generate(6, PlacementMode::opposite_corner(), std::nullopt, {2, 9});
  CHECK(ls.start_fitness > 0.0);
  CHECK(ls.start_fitness < 1.0);
  CHECK_FALSE(ls.requested_start.has_value());
}

TEST_CASE("same seed, same landscape") {
  const auto a = generate(12, PlacementMode::uniform_random(), 0.3, {77, 12345});
  const auto b = generate(12, PlacementMode::uniform_random(), 0.3, {77, 12345});
  CHECK(a.fitness == b.fitness);
  CHECK(a.fittest == b.fittest);
  const auto c = generate(12, PlacementMode::uniform_random(), 0.3, {77, 12346});
  CHECK(a.fitness != c.fitness);
  // Site values do not depend on placement or the start value.
  const auto d = generate(12, PlacementMode::opposite_corner(), 0.9, {77, 12345});
  for (std::uint64_t v = 1; v + 1 < a.fitness.size(); ++v)
    if (v != a.fittest.bits) CHECK(a.fitness[v] == d.fitness[v]);
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(generate(4, PlacementMode::fixed_hamming(0), 0.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(generate(4, PlacementMode::fixed_hamming(5), 0.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(generate(4, PlacementMode::opposite_corner(), 1.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(generate(27, PlacementMode::opposite_corner(), 0.5, {}), CapExceeded);
  CHECK_THROWS_AS(generate(20, PlacementMode::opposite_corner(), 0.5, {}, 16), CapExceeded);
  CHECK_THROWS_AS(PlacementMode::parse("diagonal", 0), std::invalid_argument);
  CHECK(PlacementMode::parse("fixedH", 3) == PlacementMode::fixed_hamming(3));
}

TEST_CASE("uniform placement: distance to the fittest site is binomial") {
  const int L = 16;
  const int n = 20000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double H = place_fittest(L, PlacementMode::uniform_random(), 0.3, {2024, std::uint64_t(i)}).weight();
    sum += H;
    sum_sq += H * H;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - L / 2.0) < 4.0 * std::sqrt(L / 4.0 / n));
  CHECK(std::abs(var / (L / 4.0) - 1.0) < 0.1);
}

TEST_CASE("uniform placement may choose the origin only at x = 1") {
  int origin = 0;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    CHECK(place_fittest(2, PlacementMode::uniform_random(), 0.99, {3, i}).bits != 0);
    origin += place_fittest(2, PlacementMode::uniform_random(), 1.0, {3, i}).bits == 0;
  }
  CHECK(origin > 800);
  CHECK(origin < 1200);
}

TEST_CASE("ranks of site values are uniform") {
  // The rank of one fixed site among the 15 non-fittest sites at L = 4 must
  // be uniform on 0..14. Chi-square with 14 degrees of freedom, 1% level.
  const int n = 30000;
  std::vector<int> hist(15, 0);
  for (int i = 0; i < n; ++i) {
    const auto ls = generate(4, PlacementMode::opposite_corner(), std::nullopt, {99, std::uint64_t(i)});
    int rank = 0;
    for (std::uint64_t v = 0; v < 15; ++v) rank += ls.fitness[v] < ls.fitness[5];
    ++hist[rank];
  }
  double chi2 = 0.0;
  const double expected = n / 15.0;
  for (int h : hist) chi2 += (h - expected) * (h - expected) / expected;
  CHECK(chi2 < 29.14);
}

TEST_CASE("dump round trip") {
  for (auto x : {StartFitness{0.25}, StartFitness{}}) {
    const auto ls = generate(9, PlacementMode::fixed_hamming(4), x, {8, 21});
    std::stringstream buf;
    write_landscape(buf, ls);
    CHECK(buf.str().size() == 4 + 4 * 4 + 8 * 4 + 8 * 512);
    const auto back = read_landscape(buf);
    CHECK(back.dim == ls.dim);
    CHECK(back.fitness == ls.fitness);
    CHECK(back.fittest == ls.fittest);
    CHECK(back.mode == ls.mode);
    CHECK(back.seed == ls.seed);
    CHECK(back.requested_start == ls.requested_start);
    CHECK(back.start_fitness == ls.start_fitness);
  }
  std::stringstream junk("XXXX");
  CHECK_THROWS(read_landscape(junk));
}
