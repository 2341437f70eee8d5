#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "accperc/hypercube.hpp"

namespace accperc {

inline constexpr int kDefaultMaxLandscapeDim = 26;

enum class Placement { OppositeCorner, FixedHamming, UniformRandom };

/// Where the fittest site goes.
struct PlacementMode {
  Placement kind = Placement::OppositeCorner;
  int hamming = 0;  // FixedHamming only

  static PlacementMode opposite_corner() { return {Placement::OppositeCorner, 0}; }
  static PlacementMode fixed_hamming(int H) { return {Placement::FixedHamming, H}; }
  static PlacementMode uniform_random() { return {Placement::UniformRandom, 0}; }

  /// "corner", "fixedH" or "uniform".
  std::string name() const;
  static PlacementMode parse(const std::string& name, int hamming);

  friend bool operator==(const PlacementMode&, const PlacementMode&) = default;
};

/// (root, index) names one reproducible random stream; trial i of a run
/// seeded with `root` uses Seed{root, i}.
struct Seed {
  std::uint64_t root = 0;
  std::uint64_t index = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Fitness of the origin: a fixed value, or nullopt for a uniform draw.
using StartFitness = std::optional<double>;

/// Counter-based source of the landscape's random numbers. Every site value
/// is a pure function of (seed, L, site), so landscapes do not depend on
/// how trials are distributed over threads.
class SiteStream {
public:
  SiteStream(const Seed& seed, int L);

  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t site) const;
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n, std::uint64_t slot) const;

private:
  std::uint64_t key_;
  std::uint64_t aux_key_;
};

/// House-of-Cards landscape: the fittest site has fitness 1, the origin has
/// fitness x, every other site an independent uniform value in (0,1).
struct FitnessLandscape {
  int dim = 0;
  std::vector<double> fitness;  // indexed by genotype bitmask
  Genotype fittest;
  double start_fitness = 0.0;
  PlacementMode mode;
  StartFitness requested_start;
  Seed seed;

  double operator[](std::uint64_t v) const { return fitness[v]; }
};

/// Throws std::invalid_argument for contradictory requests (origin pinned
/// as the fittest with x < 1, H out of range) and CapExceeded above
/// `max_dim`.
FitnessLandscape generate(int L, const PlacementMode& mode, StartFitness x, const Seed& seed,
                          int max_dim = kDefaultMaxLandscapeDim);

/// generate() into an existing landscape, reusing its storage.
void generate_into(FitnessLandscape& out, int L, const PlacementMode& mode, StartFitness x,
                   const Seed& seed, int max_dim = kDefaultMaxLandscapeDim);

/// Placement of the fittest site alone (no fitness values drawn).
Genotype place_fittest(int L, const PlacementMode& mode, StartFitness x, const Seed& seed);

int hamming_to_fittest(const FitnessLandscape& ls);

/// Debug dump: "ACPL" magic, u32 version, u32 L, u32 mode, u32 H, f64 x
/// (NaN for a drawn start), u64 root, u64 index, u64 fittest, then 2^L
/// f64 fitness values. All fields little-endian.
void write_landscape(std::ostream& out, const FitnessLandscape& ls);
FitnessLandscape read_landscape(std::istream& in);

}  // namespace accperc
