#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace accperc {

inline constexpr int kMaxDim = 62;

/// A corner of the L-hypercube. Bit i holds the state of site i+1
/// (0 = wild, 1 = mutant).
struct Genotype {
  std::uint64_t bits = 0;
  int dim = 1;

  static Genotype zeros(int dim);
  static Genotype ones(int dim);

  int weight() const;
  friend bool operator==(const Genotype&, const Genotype&) = default;
};

inline std::uint64_t corner_mask(int dim) {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

void check_dim(int dim);

/// Canonical fittest site at Hamming distance H from the origin: bits 1..H
/// set, bits H+1..L clear.
struct EndpointSpec {
  int dim = 1;
  int hamming = 1;

  EndpointSpec(int dim, int hamming);
  Genotype target() const;
};

/// A walk from the origin coded as the sequence of flipped directions.
/// Labels are held 0-based; the textual form uses the 1-based labels.
class PathCode {
public:
  PathCode() = default;
  explicit PathCode(int dim);
  PathCode(int dim, std::vector<std::uint8_t> steps0);

  /// Parses either the digit-string form ("1213212", only for L <= 9) or
  /// the comma-separated form ("1,2,13,2").
  static PathCode parse(std::string_view text, int dim);

  /// Digit string for L <= 9, comma-separated labels otherwise.
  std::string to_string() const;

  int dim() const { return dim_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  std::span<const std::uint8_t> steps() const { return steps_; }
  /// 1-based label of step k.
  int label(std::size_t k) const { return steps_[k] + 1; }

  void push_back_label(int label1);

  friend bool operator==(const PathCode&, const PathCode&) = default;
  friend auto operator<=>(const PathCode&, const PathCode&) = default;

private:
  int dim_ = 1;
  std::vector<std::uint8_t> steps_;
};

Genotype apply_path(const Genotype& start, const PathCode& path);

/// Labels 1..H occur an odd number of times and H+1..L an even number.
bool endpoint_valid(const PathCode& path, const EndpointSpec& spec);

/// No genotype is visited twice along the walk from the origin
/// (visited-set simulation).
bool is_self_avoiding(const PathCode& path);

/// Same predicate through the string criterion: a walk revisits a site iff
/// some non-empty substring has every label occurring an even number of
/// times, i.e. two prefix parity masks coincide.
bool is_self_avoiding_by_substring(const PathCode& path);

/// Number of backsteps p of a valid path, length = H + 2p.
int backstep_count(const PathCode& path, const EndpointSpec& spec);

}  // namespace accperc
