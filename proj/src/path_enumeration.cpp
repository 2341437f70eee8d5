#include "accperc/path_enumeration.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "accperc/errors.hpp"

namespace accperc {

namespace {

constexpr int kMaskCubeDim = 6;  // 2^6 corners fit one machine word

void check_endpoint_args(int L, int H) {
  check_dim(L);
  if (H < 1 || H > L) throw std::invalid_argument("H must lie in 1..L");
}

/// Canonical DFS on hypercubes with at most 64 corners. The visited set is
/// one word; the component of the endpoint in the unvisited subgraph is
/// recomputed at each node and moves leaving it are dropped.
class MaskCube {
public:
  struct State {
    std::uint64_t cur;
    std::uint64_t visited;
    std::uint8_t fwd;   // forward labels introduced so far
    std::uint8_t back;  // back labels introduced so far
    std::uint16_t len;
  };

  MaskCube(int L, int H, int limit_len)
      : L_(L), H_(H), back_labels_(L - H), limit_len_(limit_len),
        all_(L == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << L)) - 1),
        end_(corner_mask(H)) {
    for (int i = 0; i < L_; ++i) {
      std::uint64_t lo = 0;
      for (int v = 0; v < (1 << L_); ++v)
        if (!((v >> i) & 1)) lo |= std::uint64_t{1} << v;
      low_[static_cast<std::size_t>(i)] = lo;
    }
  }

  State root() const { return {0, 1, 0, 0, 0}; }

  template <class Child, class Leaf>
  void expand(const State& s, Child&& child, Leaf&& leaf) const {
    const std::uint64_t reach = component_of_end(all_ & ~s.visited);
    auto move = [&](int j, int fwd, int back) {
      const std::uint64_t w = s.cur ^ (std::uint64_t{1} << j);
      if (!((reach >> w) & 1)) return;
      const int len = s.len + 1;
      if (len + std::popcount(w ^ end_) > limit_len_) return;
      if (w == end_) {
        leaf(len, back);
        return;
      }
      child(State{w, s.visited | (std::uint64_t{1} << w), static_cast<std::uint8_t>(fwd),
                  static_cast<std::uint8_t>(back), static_cast<std::uint16_t>(len)});
    };
    for (int j = 0; j < s.fwd; ++j) move(j, s.fwd, s.back);
    for (int j = H_; j < H_ + s.back; ++j) move(j, s.fwd, s.back);
    if (s.fwd < H_) move(s.fwd, s.fwd + 1, s.back);
    if (s.back < back_labels_) move(H_ + s.back, s.fwd, s.back + 1);
  }

private:
  std::uint64_t neighbours(std::uint64_t set) const {
    std::uint64_t out = 0;
    for (int i = 0; i < L_; ++i) {
      const int stride = 1 << i;
      const std::uint64_t lo = low_[static_cast<std::size_t>(i)];
      out |= ((set & lo) << stride) | ((set >> stride) & lo);
    }
    return out;
  }

  std::uint64_t component_of_end(std::uint64_t free) const {
    std::uint64_t reach = std::uint64_t{1} << end_;
    for (;;) {
      const std::uint64_t grown = reach | (neighbours(reach) & free);
      if (grown == reach) return reach;
      reach = grown;
    }
  }

  int L_, H_, back_labels_, limit_len_;
  std::uint64_t all_, end_;
  std::array<std::uint64_t, kMaskCubeDim> low_{};
};

/// Canonical DFS for larger hypercubes with a bounded path length; the
/// visited set is the path itself.
class PathCube {
public:
  struct State {
    std::vector<std::uint64_t> path;  // visited corners, last = current
    std::uint8_t fwd;
    std::uint8_t back;
  };

  PathCube(int L, int H, int limit_len)
      : H_(H), back_labels_(L - H), limit_len_(limit_len), end_(corner_mask(H)) {}

  State root() const { return {{0}, 0, 0}; }

  template <class Child, class Leaf>
  void expand(const State& s, Child&& child, Leaf&& leaf) const {
    const std::uint64_t cur = s.path.back();
    auto move = [&](int j, int fwd, int back) {
      const std::uint64_t w = cur ^ (std::uint64_t{1} << j);
      const int len = static_cast<int>(s.path.size());
      if (len + std::popcount(w ^ end_) > limit_len_) return;
      if (std::find(s.path.begin(), s.path.end(), w) != s.path.end()) return;
      if (w == end_) {
        leaf(len, back);
        return;
      }
      State next{s.path, static_cast<std::uint8_t>(fwd), static_cast<std::uint8_t>(back)};
      next.path.push_back(w);
      child(std::move(next));
    };
    for (int j = 0; j < s.fwd; ++j) move(j, s.fwd, s.back);
    for (int j = H_; j < H_ + s.back; ++j) move(j, s.fwd, s.back);
    if (s.fwd < H_) move(s.fwd, s.fwd + 1, s.back);
    if (s.back < back_labels_) move(H_ + s.back, s.fwd, s.back + 1);
  }

private:
  int H_, back_labels_, limit_len_;
  std::uint64_t end_;
};

/// Canonical leaf counts indexed by (p, number of back labels used).
class LeafCounts {
public:
  LeafCounts(int H, int max_p, int back_labels)
      : H_(H), width_(back_labels + 1),
        counts_(static_cast<std::size_t>((max_p + 1) * (back_labels + 1)), 0) {}

  void record(int len, int back) {
    ++counts_[static_cast<std::size_t>(((len - H_) / 2) * width_ + back)];
  }

  void merge(const LeafCounts& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  }

  std::uint64_t at(int p, int back) const {
    return counts_[static_cast<std::size_t>(p * width_ + back)];
  }

private:
  int H_, width_;
  std::vector<std::uint64_t> counts_;
};

template <class Cube>
class SearchDriver {
public:
  SearchDriver(const Cube& cube, int H, int max_p, int back_labels, const SearchOptions& opt)
      : cube_(cube), H_(H), max_p_(max_p), back_labels_(back_labels), opt_(opt) {}

  LeafCounts run() {
    LeafCounts total(H_, max_p_, back_labels_);
    const unsigned workers = std::max(1u, opt_.workers);

    // Split the tree breadth-first until there is enough work to share.
    std::vector<typename Cube::State> frontier{cube_.root()};
    const std::size_t target = workers == 1 ? 1 : 64 * workers;
    while (!frontier.empty() && frontier.size() < target) {
      std::vector<typename Cube::State> next;
      for (const auto& s : frontier) {
        cube_.expand(
            s, [&](typename Cube::State c) { next.push_back(std::move(c)); },
            [&](int len, int back) { total.record(len, back); });
      }
      charge(frontier.size());
      frontier = std::move(next);
    }

    std::vector<LeafCounts> partial(workers, LeafCounts(H_, max_p_, back_labels_));
    std::atomic<std::size_t> next_task{0};
    auto work = [&](unsigned w) {
      Walker walker{*this, partial[w]};
      for (std::size_t i = next_task++; i < frontier.size() && !aborted_; i = next_task++)
        walker.dfs(frontier[i]);
      walker.flush();
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    if (aborted_)
      throw BudgetExceeded("path search exceeded the budget of " +
                           std::to_string(opt_.budget_nodes) + " search nodes");
    for (const auto& p : partial) total.merge(p);
    return total;
  }

private:
  struct Walker {
    SearchDriver& driver;
    LeafCounts& counts;
    std::uint64_t pending = 0;

    void dfs(const typename Cube::State& s) {
      if (++pending == 4096) flush();
      if (driver.aborted_) return;
      driver.cube_.expand(
          s, [&](const typename Cube::State& c) { dfs(c); },
          [&](int len, int back) { counts.record(len, back); });
    }

    void flush() {
      driver.charge(pending);
      pending = 0;
    }
  };

  void charge(std::uint64_t nodes) {
    const auto seen = nodes_.fetch_add(nodes) + nodes;
    if (opt_.budget_nodes != 0 && seen > opt_.budget_nodes) aborted_ = true;
  }

  const Cube& cube_;
  int H_, max_p_, back_labels_;
  SearchOptions opt_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
};

}  // namespace

IntegerTable count_saw(int L, int H, const SearchOptions& options) {
  check_endpoint_args(L, H);
  if (options.max_p && *options.max_p < 0) throw std::invalid_argument("max_p must be >= 0");
  const bool mask_cube = L <= kMaskCubeDim;
  if (!mask_cube && !options.max_p)
    throw CapExceeded("unbounded path search is limited to L <= 6; pass max_p");

  // A self-avoiding path visits at most 2^L corners.
  const long longest = mask_cube ? (1L << L) - 1 : (1L << std::min(L, 40)) - 1;
  int max_p = static_cast<int>((longest - H) / 2);
  if (options.max_p) max_p = std::min(max_p, *options.max_p);
  const int limit_len = H + 2 * max_p;
  const int back_labels = L - H;

  LeafCounts leaves = mask_cube
      ? SearchDriver<MaskCube>(MaskCube(L, H, limit_len), H, max_p, back_labels, options).run()
      : SearchDriver<PathCube>(PathCube(L, H, limit_len), H, max_p, back_labels, options).run();

  IntegerTable table{L, H, CountKind::ExactA, {}};
  const mpz_class fwd_perms = factorial(H);
  for (int p = 0; p <= max_p; ++p) {
    mpz_class sum = 0;
    mpz_class back_perms = 1;  // (L-H)!/(L-H-k)!
    for (int k = 0; k <= back_labels; ++k) {
      sum += back_perms * mpz_class(static_cast<unsigned long>(leaves.at(p, k)));
      back_perms *= back_labels - k;
    }
    table.counts.push_back(fwd_perms * sum);
  }
  if (!options.max_p)
    while (table.counts.size() > 1 && table.counts.back() == 0) table.counts.pop_back();
  return table;
}

mpz_class closed_form_p1(int L) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  const mpz_class l = L;
  return factorial(L) * (l * (l - 1) * (l - 2) / 6);
}

mpz_class closed_form_p2(int L) {
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  const mpz_class l = L;
  const mpz_class quartic = 5 * l * l * l * l + 3 * l * l * l + 34 * l * l - 264 * l + 180;
  return factorial(L) * ((l - 1) * (l - 2) * quartic / 360);
}

LogReal asymptotic_p(int L, int p) {
  if (L < 1 || p < 0) throw std::invalid_argument("asymptotic_p needs L >= 1 and p >= 0");
  const double log_value = std::lgamma(L + 1.0) + 3.0 * p * std::log(double(L)) -
                           p * std::log(6.0) - std::lgamma(p + 1.0);
  return {std::exp(log_value), log_value};
}

namespace {

constexpr int kMSetCountCap = 12;

/// Appends the table obtained by inserting one more label `r` times into
/// the gaps of strings of length base_len(p'), with r = 2q+1 (odd) or 2q.
std::vector<mpz_class> insert_label(const std::vector<mpz_class>& base, int base_len0, bool odd) {
  std::vector<mpz_class> next;
  for (std::size_t pp = 0; pp < base.size(); ++pp) {
    if (base[pp] == 0) continue;
    const long n = base_len0 + 2 * static_cast<long>(pp);
    for (long q = 0;; ++q) {
      const long r = odd ? 2 * q + 1 : 2 * q;
      if (r > n + 1) break;
      const std::size_t p = pp + static_cast<std::size_t>(q);
      if (next.size() <= p) next.resize(p + 1);
      next[p] += binomial(n + 1, r) * base[pp];
    }
  }
  return next;
}

}  // namespace

IntegerTable mset_counts(int L, int H) {
  check_endpoint_args(L, H);
  if (L > kMSetCountCap)
    throw CapExceeded("m-set counting is limited to L <= " + std::to_string(kMSetCountCap));
  std::vector<mpz_class> m{1};  // m_1 = {"1"}
  for (int l = 1; l < H; ++l) m = insert_label(m, l, true);
  for (int l = H; l < L; ++l) m = insert_label(m, H, false);
  return {L, H, CountKind::MSet, std::move(m)};
}

namespace {

void for_each_gap_choice(int gaps, int r, std::vector<int>& chosen, int from,
                         const auto& emit) {
  if (static_cast<int>(chosen.size()) == r) {
    emit(chosen);
    return;
  }
  for (int g = from; g <= gaps - (r - static_cast<int>(chosen.size())); ++g) {
    chosen.push_back(g);
    for_each_gap_choice(gaps, r, chosen, g + 1, emit);
    chosen.pop_back();
  }
}

std::vector<std::vector<std::uint8_t>> insert_label_strings(
    const std::vector<std::vector<std::uint8_t>>& base, std::uint8_t label, bool odd,
    std::size_t max_paths) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<int> chosen;
  for (const auto& s : base) {
    const int gaps = static_cast<int>(s.size()) + 1;
    for (int r = odd ? 1 : 0; r <= gaps; r += 2) {
      for_each_gap_choice(gaps, r, chosen, 0, [&](const std::vector<int>& pick) {
        if (out.size() >= max_paths)
          throw CapExceeded("m-set listing exceeds " + std::to_string(max_paths) + " paths");
        std::vector<std::uint8_t> t;
        t.reserve(s.size() + pick.size());
        std::size_t next_pick = 0;
        for (int i = 0; i < gaps; ++i) {
          if (next_pick < pick.size() && pick[next_pick] == i) {
            t.push_back(label);
            ++next_pick;
          }
          if (i < static_cast<int>(s.size())) t.push_back(s[static_cast<std::size_t>(i)]);
        }
        out.push_back(std::move(t));
      });
    }
  }
  return out;
}

}  // namespace

std::vector<PathCode> list_mset(int L, int H, std::size_t max_paths) {
  check_endpoint_args(L, H);
  std::vector<std::vector<std::uint8_t>> strings{{0}};
  for (int l = 1; l < H; ++l)
    strings = insert_label_strings(strings, static_cast<std::uint8_t>(l), true, max_paths);
  for (int l = H; l < L; ++l)
    strings = insert_label_strings(strings, static_cast<std::uint8_t>(l), false, max_paths);
  std::vector<PathCode> out;
  out.reserve(strings.size());
  for (auto& s : strings) out.emplace_back(L, std::move(s));
  return out;
}

MSetResult enumerate_mset(int L, int H, bool list_paths, std::size_t max_paths) {
  MSetResult result;
  if (list_paths) {
    result.paths = list_mset(L, H, max_paths);
    result.counts = {L, H, CountKind::MSet, {}};
    for (const auto& path : result.paths) {
      const auto p = (path.size() - static_cast<std::size_t>(H)) / 2;
      if (result.counts.counts.size() <= p) result.counts.counts.resize(p + 1);
      ++result.counts.counts[p];
    }
  } else {
    result.counts = mset_counts(L, H);
  }
  return result;
}

double expected_theta_from_counts(const IntegerTable& a, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  const double X = 1.0 - x;
  std::vector<double> terms;
  for (int p = 0; p <= a.max_p(); ++p) {
    const auto& count = a.counts[static_cast<std::size_t>(p)];
    if (count == 0) continue;
    const int k = a.hamming + 2 * p - 1;  // interior sites
    double weight = 1.0;                  // X^k / k!
    for (int i = 1; i <= k; ++i) weight *= X / i;
    terms.push_back(count.get_d() * weight);
  }
  std::sort(terms.begin(), terms.end(), [](double l, double r) { return l > r; });
  // Neumaier compensated summation
  double sum = 0.0, carry = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    carry += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return sum + carry;
}

double exact_expected_theta(int L, int H, double x, const SearchOptions& options) {
  return expected_theta_from_counts(count_saw(L, H, options), x);
}

}  // namespace accperc
