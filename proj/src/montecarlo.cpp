#include "accperc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace accperc {

namespace {

constexpr std::uint64_t kMaxCount = std::numeric_limits<std::uint64_t>::max();

void saturating_add(PathCount& acc, const PathCount& term) {
  acc.saturated = acc.saturated || term.saturated;
  if (acc.value > kMaxCount - term.value) {
    acc.value = kMaxCount;
    acc.saturated = true;
  } else {
    acc.value += term.value;
  }
}

}  // namespace

PathCount OpenPathCounter::read(const Memo& m, std::uint64_t v) {
  if (v >= m.count.size() || !((m.done[v >> 6] >> (v & 63)) & 1)) return {};
  return {m.count[v], m.count[v] == kMaxCount};
}

void OpenPathCounter::traverse(Memo& m, const FitnessLandscape& ls, double floor,
                               bool shortest) {
  const std::size_t corners = ls.fitness.size();
  const int L = ls.dim;
  const std::uint64_t target = ls.fittest.bits;
  const double* f = ls.fitness.data();
  if (m.count.size() < corners) m.count.resize(corners);
  m.done.assign((corners + 63) / 64, 0);
  std::uint64_t* count = m.count.data();
  std::uint64_t* done = m.done.data();

  auto is_done = [done](std::uint64_t v) { return (done[v >> 6] >> (v & 63)) & 1; };
  auto settle = [&](std::uint64_t v, std::uint64_t c) {
    count[v] = c;
    done[v >> 6] |= std::uint64_t{1} << (v & 63);
  };
  auto open = [&](std::uint64_t v, double fv) {
    if (v == target) {
      settle(v, 1);
      return;
    }
    std::uint64_t up = 0;
    for (int d = 0; d < L; ++d)
      up |= std::uint64_t{f[v ^ (std::uint64_t{1} << d)] > fv} << d;
    // Never step back onto the origin.
    if (std::has_single_bit(v)) up &= ~v;
    if (shortest) up &= target & ~v;
    stack_.push_back({v, up, 0});
  };

  stack_.clear();
  open(0, floor);
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    const std::uint64_t v = top.v;
    std::uint64_t moves = top.moves;
    std::uint64_t sum = top.sum;
    bool descended = false;
    while (moves) {
      const std::uint64_t w = v ^ (moves & -moves);
      if (!is_done(w)) {
        top.moves = moves;
        top.sum = sum;
        open(w, f[w]);
        descended = true;
        break;
      }
      if (__builtin_add_overflow(sum, count[w], &sum)) sum = kMaxCount;
      moves &= moves - 1;
    }
    if (descended) continue;
    stack_.pop_back();
    settle(v, sum);
  }
}

void OpenPathCounter::run(const FitnessLandscape& ls, double floor, bool direct) {
  traverse(full_, ls, floor, false);
  if (direct) {
    traverse(direct_, ls, floor, true);
  } else {
    direct_.done.assign(direct_.done.size(), 0);
  }
}

namespace {

struct TrialRunner {
  FitnessLandscape landscape;
  OpenPathCounter counter;

  TrialOutcome run(int L, const PlacementMode& mode, StartFitness x, const Seed& seed,
                   const TrialOptions& options) {
    generate_into(landscape, L, mode, x, seed, options.max_dim);
    counter.run(landscape, landscape.start_fitness, options.direct);
    TrialOutcome out;
    const auto theta = counter.full(0);
    out.theta = theta.value;
    out.saturated = theta.saturated;
    out.accessible = theta.value >= 1;
    out.hamming = hamming_to_fittest(landscape);
    if (options.direct) {
      const auto direct = counter.direct(0);
      out.theta_direct = direct.value;
      out.direct_saturated = direct.saturated;
    }
    return out;
  }
};

constexpr std::uint64_t kBlock = 1u << 14;
constexpr std::uint64_t kChunk = 16;

/// Calls fn(state, i) for i in [begin, end) across `workers` threads, each
/// with its own state.
template <class State, class Fn>
void parallel_trials(std::uint64_t begin, std::uint64_t end, unsigned workers,
                     std::vector<State>& states, Fn&& fn) {
  workers = std::max(1u, workers);
  if (states.size() < workers) states.resize(workers);
  std::atomic<std::uint64_t> next{begin};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t lo = next.fetch_add(kChunk);
        if (lo >= end) return;
        const std::uint64_t hi = std::min(end, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) fn(states[w], i);
      }
    } catch (...) {
      errors[w] = std::current_exception();
      failed = true;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Folds trial outcomes in trial order.
class Accumulator {
public:
  void add(const TrialOutcome& t) {
    ++n_;
    if (t.accessible) ++accessible_;
    if (t.saturated) ++saturated_;
    const double theta = static_cast<double>(t.theta);
    sum_ += theta;
    sum_sq_ += theta * theta;
    if (t.theta_direct) {
      has_direct_ = true;
      const double d = static_cast<double>(*t.theta_direct);
      direct_sum_ += d;
      direct_sum_sq_ += d * d;
    }
  }

  SimulationSummary finish(const SimulationConfig& cfg, StartFitness x) const {
    SimulationSummary s;
    s.L = cfg.L;
    s.mode = cfg.mode;
    s.x = x;
    s.n_trials = n_;
    s.n_accessible = accessible_;
    s.root_seed = cfg.root_seed;
    const double n = static_cast<double>(n_);
    s.p_hat = accessible_ / n;
    s.std_err = std::sqrt(s.p_hat * (1.0 - s.p_hat) / n);
    constexpr double z = 1.959963984540054;
    const double z2n = z * z / n;
    const double centre = (s.p_hat + z2n / 2.0) / (1.0 + z2n);
    const double half = z / (1.0 + z2n) * std::sqrt(s.p_hat * (1.0 - s.p_hat) / n + z2n / (4.0 * n));
    s.ci_lo = accessible_ == 0 ? 0.0 : std::max(0.0, centre - half);
    s.ci_hi = accessible_ == n_ ? 1.0 : std::min(1.0, centre + half);
    s.mean_theta = sum_ / n;
    s.theta_std_err = sample_std_err(sum_, sum_sq_);
    s.saturated_frac = saturated_ / n;
    if (has_direct_) {
      s.mean_theta_direct = direct_sum_ / n;
      s.theta_direct_std_err = sample_std_err(direct_sum_, direct_sum_sq_);
    }
    return s;
  }

private:
  double sample_std_err(double sum, double sum_sq) const {
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
  }

  std::uint64_t n_ = 0, accessible_ = 0, saturated_ = 0;
  double sum_ = 0.0, sum_sq_ = 0.0;
  bool has_direct_ = false;
  double direct_sum_ = 0.0, direct_sum_sq_ = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_config(const SimulationConfig& cfg) {
  if (cfg.n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
}

}  // namespace

TrialOutcome run_trial(int L, const PlacementMode& mode, StartFitness x, const Seed& seed,
                       const TrialOptions& options) {
  TrialRunner runner;
  return runner.run(L, mode, x, seed, options);
}

SimulationSummary estimate(const SimulationConfig& cfg) {
  check_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const TrialOptions options{cfg.direct, cfg.max_dim};
  std::vector<TrialRunner> runners;
  std::vector<TrialOutcome> outcomes;
  Accumulator acc;
  for (std::uint64_t begin = 0; begin < cfg.n_trials; begin += kBlock) {
    const std::uint64_t end = std::min(cfg.n_trials, begin + kBlock);
    outcomes.assign(end - begin, {});
    parallel_trials(begin, end, cfg.workers, runners, [&](TrialRunner& r, std::uint64_t i) {
      outcomes[i - begin] = r.run(cfg.L, cfg.mode, cfg.x, {cfg.root_seed, i}, options);
    });
    for (const auto& t : outcomes) acc.add(t);
  }
  auto summary = acc.finish(cfg, cfg.x);
  summary.wall_time = seconds_since(t0);
  return summary;
}

namespace {

struct NeighbourCounts {
  std::vector<double> fitness;  // f(origin ^ e_d)
  std::vector<PathCount> full;
  std::vector<PathCount> direct;
  int hamming = 0;
  bool at_target = false;  // the origin is the fittest site
};

struct SweepRunner {
  FitnessLandscape landscape;
  OpenPathCounter counter;

  NeighbourCounts run(const SimulationConfig& cfg, StartFitness placement_x, double min_x,
                      const Seed& seed) {
    generate_into(landscape, cfg.L, cfg.mode, placement_x, seed, cfg.max_dim);
    counter.run(landscape, min_x, cfg.direct);
    NeighbourCounts out;
    out.hamming = hamming_to_fittest(landscape);
    out.at_target = landscape.fittest.bits == 0;
    const auto L = static_cast<std::size_t>(cfg.L);
    out.fitness.resize(L);
    out.full.resize(L);
    if (cfg.direct) out.direct.resize(L);
    for (std::size_t d = 0; d < L; ++d) {
      const std::uint64_t w = std::uint64_t{1} << d;
      out.fitness[d] = landscape[w];
      out.full[d] = counter.full(w);
      if (cfg.direct && ((landscape.fittest.bits >> d) & 1)) out.direct[d] = counter.direct(w);
    }
    return out;
  }
};

TrialOutcome outcome_at(const NeighbourCounts& nc, double x, bool direct) {
  TrialOutcome t;
  PathCount theta, theta_direct;
  if (nc.at_target) theta = theta_direct = {1, false};
  for (std::size_t d = 0; d < nc.fitness.size() && !nc.at_target; ++d) {
    if (!(nc.fitness[d] > x)) continue;
    saturating_add(theta, nc.full[d]);
    if (direct) saturating_add(theta_direct, nc.direct[d]);
  }
  t.theta = theta.value;
  t.saturated = theta.saturated;
  t.accessible = theta.value >= 1;
  t.hamming = nc.hamming;
  if (direct) {
    t.theta_direct = theta_direct.value;
    t.direct_saturated = theta_direct.saturated;
  }
  return t;
}

}  // namespace

std::vector<SimulationSummary> sweep_start_fitness(const SimulationConfig& base,
                                                   std::span<const double> x_grid) {
  check_config(base);
  for (double x : x_grid)
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x grid values must lie in [0,1]");

  std::vector<std::size_t> shared;  // grid points sharing one traversal
  std::vector<SimulationSummary> rows(x_grid.size());
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    // Uniform placement may put the fittest site on the origin only when
    // x = 1, so that point draws different landscapes.
    if (base.mode.kind == Placement::UniformRandom && x_grid[k] == 1.0) {
      auto cfg = base;
      cfg.x = 1.0;
      rows[k] = estimate(cfg);
    } else {
      shared.push_back(k);
    }
  }
  if (shared.empty()) return rows;

  double min_x = 1.0;
  for (auto k : shared) min_x = std::min(min_x, x_grid[k]);
  if (base.mode.kind == Placement::FixedHamming && base.mode.hamming == 0 && min_x < 1.0)
    throw std::invalid_argument("H = 0 pins the origin as the fittest site, which needs x = 1");
  const StartFitness placement_x = min_x;

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepRunner> runners;
  std::vector<NeighbourCounts> block;
  std::vector<Accumulator> accs(shared.size());
  for (std::uint64_t begin = 0; begin < base.n_trials; begin += kBlock) {
    const std::uint64_t end = std::min(base.n_trials, begin + kBlock);
    block.assign(end - begin, {});
    parallel_trials(begin, end, base.workers, runners, [&](SweepRunner& r, std::uint64_t i) {
      block[i - begin] = r.run(base, placement_x, min_x, {base.root_seed, i});
    });
    for (const auto& nc : block)
      for (std::size_t s = 0; s < shared.size(); ++s)
        accs[s].add(outcome_at(nc, x_grid[shared[s]], base.direct));
  }
  const double elapsed = seconds_since(t0);
  for (std::size_t s = 0; s < shared.size(); ++s) {
    auto& row = rows[shared[s]];
    row = accs[s].finish(base, x_grid[shared[s]]);
    row.wall_time = elapsed;
  }
  return rows;
}

std::vector<SimulationSummary> figure1_sweep(std::span<const int> dims,
                                             std::span<const double> x_grid,
                                             std::uint64_t n_trials, std::uint64_t root_seed,
                                             unsigned workers, bool direct) {
  std::vector<SimulationSummary> rows;
  for (int L : dims) {
    SimulationConfig cfg;
    cfg.L = L;
    cfg.mode = PlacementMode::opposite_corner();
    cfg.n_trials = n_trials;
    cfg.root_seed = root_seed;
    cfg.workers = workers;
    cfg.direct = direct;
    auto part = sweep_start_fitness(cfg, x_grid);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<SimulationSummary> hamming_conditional_sweep(int L, std::span<const int> hammings,
                                                         std::span<const double> x_grid,
                                                         std::uint64_t n_trials,
                                                         std::uint64_t root_seed,
                                                         unsigned workers, bool direct) {
  std::vector<SimulationSummary> rows;
  for (int H : hammings) {
    SimulationConfig cfg;
    cfg.L = L;
    cfg.mode = PlacementMode::fixed_hamming(H);
    cfg.n_trials = n_trials;
    cfg.root_seed = root_seed;
    cfg.workers = workers;
    cfg.direct = direct;
    auto part = sweep_start_fitness(cfg, x_grid);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace accperc
