#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accperc/count_table.hpp"
#include "accperc/hypercube.hpp"

namespace accperc {

struct SearchOptions {
  /// Only paths with at most this many backsteps are counted.
  std::optional<int> max_p;
  /// Upper bound on visited search nodes; 0 disables the budget.
  std::uint64_t budget_nodes = 0;
  unsigned workers = 1;
};

/// Self-avoiding path counts a_{L,H,p} from the origin to the canonical
/// endpoint at distance H, by exhaustive depth-first search over canonical
/// paths (first occurrences of labels appear in increasing order within the
/// forward class 1..H and within the back class H+1..L). Each canonical
/// path stands for H! (L-H)!/(L-H-k)! paths, k being the number of back
/// labels it uses.
///
/// Hypercubes with at most 64 corners keep the visited set in one word and
/// prune every node whose endpoint is cut off by the visited set. Larger
/// hypercubes require `max_p`.
///
/// Throws BudgetExceeded when the node budget runs out and CapExceeded for
/// an unbounded search on L > 6.
IntegerTable count_saw(int L, int H, const SearchOptions& options = {});

/// a_{L,1} = L! L(L-1)(L-2)/6.
mpz_class closed_form_p1(int L);

/// a_{L,2} = L! (L-1)(L-2)(5L^4 + 3L^3 + 34L^2 - 264L + 180)/360.
mpz_class closed_form_p2(int L);

struct LogReal {
  double value;      // +inf when out of double range
  double log_value;  // natural log
};

/// Leading large-L behaviour of a_{L,p}: L! L^{3p}/(6^p p!).
LogReal asymptotic_p(int L, int p);

/// Counts of the recursively built path set m_{L,H,p}, via the binomial
/// recurrence (odd, non-adjacent insertions of each new forward label;
/// even, non-adjacent insertions of each back label). Supports L <= 12.
IntegerTable mset_counts(int L, int H);

/// Explicit members of m_{L,H}, built by inserting each new label into the
/// gaps of the previous strings. Throws CapExceeded if more than
/// `max_paths` strings would be produced.
std::vector<PathCode> list_mset(int L, int H, std::size_t max_paths = 1u << 22);

struct MSetResult {
  IntegerTable counts;
  std::vector<PathCode> paths;  // empty unless listing was requested
};

MSetResult enumerate_mset(int L, int H, bool list_paths, std::size_t max_paths = 1u << 22);

/// Sum_p a_p (1-x)^{H+2p-1} / (H+2p-1)! for an exact count table.
double expected_theta_from_counts(const IntegerTable& a, double x);

/// Exact E^x(Theta) from count_saw(L, H).
double exact_expected_theta(int L, int H, double x, const SearchOptions& options = {});

}  // namespace accperc
