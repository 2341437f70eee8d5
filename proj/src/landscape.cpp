#include "accperc/landscape.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "accperc/errors.hpp"

namespace accperc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string PlacementMode::name() const {
  switch (kind) {
    case Placement::OppositeCorner: return "corner";
    case Placement::FixedHamming: return "fixedH";
    case Placement::UniformRandom: return "uniform";
  }
  return "unknown";
}

PlacementMode PlacementMode::parse(const std::string& name, int hamming) {
  if (name == "corner") return opposite_corner();
  if (name == "fixedH") return fixed_hamming(hamming);
  if (name == "uniform") return uniform_random();
  throw std::invalid_argument("unknown placement mode '" + name + "'");
}

SiteStream::SiteStream(const Seed& seed, int L) {
  key_ = mix64(mix64(mix64(seed.root + kGolden) ^ seed.index) + static_cast<std::uint64_t>(L));
  aux_key_ = mix64(key_ ^ 0x5851f42d4c957f2dULL);
}

double SiteStream::uniform(std::uint64_t site) const {
  const std::uint64_t bits = mix64(key_ + (site + 1) * kGolden);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t SiteStream::below(std::uint64_t n, std::uint64_t slot) const {
  const std::uint64_t bits = mix64(aux_key_ + (slot + 1) * kGolden);
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * n) >> 64);
}

namespace {

void check_request(int L, const PlacementMode& mode, StartFitness x, int max_dim) {
  check_dim(L);
  if (L > max_dim)
    throw CapExceeded("landscape dimension " + std::to_string(L) + " exceeds the cap " +
                      std::to_string(max_dim));
  if (x && !(*x >= 0.0 && *x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  if (mode.kind == Placement::FixedHamming) {
    if (mode.hamming < 0 || mode.hamming > L)
      throw std::invalid_argument("fixed Hamming distance must lie in 0..L");
    if (mode.hamming == 0 && !(x && *x == 1.0))
      throw std::invalid_argument("H = 0 pins the origin as the fittest site, which needs x = 1");
  }
}

}  // namespace

Genotype place_fittest(int L, const PlacementMode& mode, StartFitness x, const Seed& seed) {
  switch (mode.kind) {
    case Placement::OppositeCorner: return Genotype::ones(L);
    case Placement::FixedHamming: return {corner_mask(mode.hamming), L};
    case Placement::UniformRandom: {
      const std::uint64_t corners = std::uint64_t{1} << L;
      // The origin cannot be the fittest unless its fitness is 1.
      const bool origin_allowed = x && *x == 1.0;
      const SiteStream stream(seed, L);
      const std::uint64_t pick = origin_allowed ? stream.below(corners, 0)
                                                : 1 + stream.below(corners - 1, 0);
      return {pick, L};
    }
  }
  throw std::logic_error("unreachable placement mode");
}

void generate_into(FitnessLandscape& out, int L, const PlacementMode& mode, StartFitness x,
                   const Seed& seed, int max_dim) {
  check_request(L, mode, x, max_dim);
  const SiteStream stream(seed, L);
  const std::uint64_t corners = std::uint64_t{1} << L;
  out.dim = L;
  out.mode = mode;
  out.requested_start = x;
  out.seed = seed;
  out.fitness.resize(corners);
  for (std::uint64_t v = 0; v < corners; ++v) out.fitness[v] = stream.uniform(v);
  if (x) out.fitness[0] = *x;
  out.start_fitness = out.fitness[0];
  out.fittest = place_fittest(L, mode, x, seed);
  out.fitness[out.fittest.bits] = 1.0;
}

FitnessLandscape generate(int L, const PlacementMode& mode, StartFitness x, const Seed& seed,
                          int max_dim) {
  FitnessLandscape out;
  generate_into(out, L, mode, x, seed, max_dim);
  return out;
}

int hamming_to_fittest(const FitnessLandscape& ls) { return ls.fittest.weight(); }

namespace {

constexpr char kMagic[4] = {'A', 'C', 'P', 'L'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value) {
  auto bits = static_cast<std::uint64_t>(value);
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
    throw std::runtime_error("truncated landscape dump");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{buf[i]} << (8 * i);
  return static_cast<T>(bits);
}

}  // namespace

void write_landscape(std::ostream& out, const FitnessLandscape& ls) {
  out.write(kMagic, 4);
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ls.dim));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ls.mode.kind));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ls.mode.hamming));
  const double x = ls.requested_start ? *ls.requested_start
                                      : std::numeric_limits<double>::quiet_NaN();
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(x));
  put_le<std::uint64_t>(out, ls.seed.root);
  put_le<std::uint64_t>(out, ls.seed.index);
  put_le<std::uint64_t>(out, ls.fittest.bits);
  for (double f : ls.fitness) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(f));
}

FitnessLandscape read_landscape(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
    throw std::runtime_error("not a landscape dump");
  if (get_le<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported dump version");
  FitnessLandscape ls;
  ls.dim = static_cast<int>(get_le<std::uint32_t>(in));
  check_dim(ls.dim);
  ls.mode.kind = static_cast<Placement>(get_le<std::uint32_t>(in));
  ls.mode.hamming = static_cast<int>(get_le<std::uint32_t>(in));
  const double x = std::bit_cast<double>(get_le<std::uint64_t>(in));
  if (!std::isnan(x)) ls.requested_start = x;
  ls.seed.root = get_le<std::uint64_t>(in);
  ls.seed.index = get_le<std::uint64_t>(in);
  ls.fittest = {get_le<std::uint64_t>(in), ls.dim};
  ls.fitness.resize(std::size_t{1} << ls.dim);
  for (auto& f : ls.fitness) f = std::bit_cast<double>(get_le<std::uint64_t>(in));
  ls.start_fitness = ls.fitness[0];
  return ls;
}

}  // namespace accperc
