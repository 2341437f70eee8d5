#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "accperc/landscape.hpp"

namespace accperc {

/// Saturating 64-bit path count.
struct PathCount {
  std::uint64_t value = 0;
  bool saturated = false;
};

/// Exact numbers of fitness-increasing paths to the fittest site, by
/// memoised depth-first traversal of the move graph from the origin (strict
/// increase makes it acyclic). No path re-enters the origin. Buffers are
/// reused across landscapes.
class OpenPathCounter {
public:
  /// Traverses from the origin as if its fitness were `floor`. Afterwards
  /// full(v) is exact for the origin and every site it can step to; sites
  /// never reached read 0. With `direct`, shortest paths (moves that set a
  /// bit of the fittest site) are counted as well.
  void run(const FitnessLandscape& ls, double floor, bool direct);

  PathCount full(std::uint64_t v) const { return read(full_, v); }
  PathCount direct(std::uint64_t v) const { return read(direct_, v); }

private:
  struct Memo {
    std::vector<std::uint64_t> count;  // saturated iff == UINT64_MAX
    std::vector<std::uint64_t> done;   // one bit per site
  };
  struct Frame {
    std::uint64_t v;
    std::uint64_t moves;  // fitter neighbours not yet summed
    std::uint64_t sum;
  };

  static PathCount read(const Memo& m, std::uint64_t v);
  void traverse(Memo& m, const FitnessLandscape& ls, double floor, bool shortest);

  Memo full_, direct_;
  std::vector<Frame> stack_;
};

struct TrialOutcome {
  bool accessible = false;
  std::uint64_t theta = 0;
  bool saturated = false;
  std::optional<std::uint64_t> theta_direct;
  bool direct_saturated = false;
  int hamming = 0;
};

struct TrialOptions {
  bool direct = false;
  int max_dim = kDefaultMaxLandscapeDim;
};

TrialOutcome run_trial(int L, const PlacementMode& mode, StartFitness x, const Seed& seed,
                       const TrialOptions& options = {});

struct SimulationConfig {
  int L = 1;
  PlacementMode mode;
  StartFitness x;  // nullopt: origin fitness drawn per trial
  std::uint64_t n_trials = 1;
  std::uint64_t root_seed = 0;
  unsigned workers = 1;
  bool direct = false;
  int max_dim = kDefaultMaxLandscapeDim;
};

struct SimulationSummary {
  int L = 0;
  PlacementMode mode;
  StartFitness x;
  std::uint64_t n_trials = 0;
  std::uint64_t n_accessible = 0;
  double p_hat = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;  // Wilson 95%
  double ci_hi = 0.0;
  double mean_theta = 0.0;
  double theta_std_err = 0.0;
  double saturated_frac = 0.0;
  std::optional<double> mean_theta_direct;
  std::optional<double> theta_direct_std_err;
  std::uint64_t root_seed = 0;
  double wall_time = 0.0;  // seconds; not part of any reproducible output
};

/// P^x(Theta >= 1) over independent trials; trial i uses Seed{root, i}, so
/// the summary is identical for any worker count.
SimulationSummary estimate(const SimulationConfig& config);

/// estimate() for every x in `x_grid` on one shared set of trials. Only the
/// origin's fitness differs between grid points, so each trial runs one
/// traversal from the origin's neighbours. The rows equal what estimate()
/// returns for each x.
std::vector<SimulationSummary> sweep_start_fitness(const SimulationConfig& base,
                                                   std::span<const double> x_grid);

/// Opposite-corner placement for each L in `dims` over `x_grid`, rows
/// ordered by L then x.
std::vector<SimulationSummary> figure1_sweep(std::span<const int> dims,
                                             std::span<const double> x_grid,
                                             std::uint64_t n_trials, std::uint64_t root_seed,
                                             unsigned workers = 1, bool direct = false);

/// Fixed-Hamming placement for each H in `hammings` at one L.
std::vector<SimulationSummary> hamming_conditional_sweep(int L, std::span<const int> hammings,
                                                         std::span<const double> x_grid,
                                                         std::uint64_t n_trials,
                                                         std::uint64_t root_seed,
                                                         unsigned workers = 1,
                                                         bool direct = false);

}  // namespace accperc
