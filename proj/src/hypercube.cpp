#include "accperc/hypercube.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>
#include <unordered_set>

namespace accperc {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("hypercube dimension must lie in 1.." +
                                std::to_string(kMaxDim) + ", got " +
                                std::to_string(dim));
}

Genotype Genotype::zeros(int dim) {
  check_dim(dim);
  return {0, dim};
}

Genotype Genotype::ones(int dim) {
  check_dim(dim);
  return {corner_mask(dim), dim};
}

int Genotype::weight() const { return std::popcount(bits); }

EndpointSpec::EndpointSpec(int dim_, int hamming_) : dim(dim_), hamming(hamming_) {
  check_dim(dim);
  if (hamming < 0 || hamming > dim)
    throw std::invalid_argument("Hamming distance must lie in 0..L");
}

Genotype EndpointSpec::target() const { return {corner_mask(hamming), dim}; }

PathCode::PathCode(int dim) : dim_(dim) { check_dim(dim); }

PathCode::PathCode(int dim, std::vector<std::uint8_t> steps0)
    : dim_(dim), steps_(std::move(steps0)) {
  check_dim(dim);
  for (auto s : steps_)
    if (s >= dim_) throw std::invalid_argument("path label out of range");
}

void PathCode::push_back_label(int label1) {
  if (label1 < 1 || label1 > dim_)
    throw std::invalid_argument("path label " + std::to_string(label1) +
                                " out of range 1.." + std::to_string(dim_));
  steps_.push_back(static_cast<std::uint8_t>(label1 - 1));
}

PathCode PathCode::parse(std::string_view text, int dim) {
  PathCode path(dim);
  if (text.empty()) return path;
  if (text.find(',') == std::string_view::npos && dim <= 9) {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("invalid character in path code");
      path.push_back_label(c - '0');
    }
    return path;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    auto token = text.substr(pos, next - pos);
    int label = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), label);
    if (ec != std::errc{} || end != token.data() + token.size() || token.empty())
      throw std::invalid_argument("invalid label '" + std::string(token) + "' in path code");
    path.push_back_label(label);
    pos = next + 1;
  }
  return path;
}

std::string PathCode::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    if (dim_ > 9 && k > 0) out += ',';
    out += std::to_string(steps_[k] + 1);
  }
  return out;
}

Genotype apply_path(const Genotype& start, const PathCode& path) {
  if (start.dim != path.dim())
    throw std::invalid_argument("path and genotype dimensions differ");
  Genotype g = start;
  for (auto s : path.steps()) g.bits ^= std::uint64_t{1} << s;
  return g;
}

namespace {

std::uint64_t parity_mask(const PathCode& path) {
  std::uint64_t mask = 0;
  for (auto s : path.steps()) mask ^= std::uint64_t{1} << s;
  return mask;
}

}  // namespace

bool endpoint_valid(const PathCode& path, const EndpointSpec& spec) {
  if (path.dim() != spec.dim)
    throw std::invalid_argument("path and endpoint dimensions differ");
  return parity_mask(path) == spec.target().bits;
}

bool is_self_avoiding(const PathCode& path) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(path.size() + 1);
  std::uint64_t g = 0;
  seen.insert(g);
  for (auto s : path.steps()) {
    g ^= std::uint64_t{1} << s;
    if (!seen.insert(g).second) return false;
  }
  return true;
}

bool is_self_avoiding_by_substring(const PathCode& path) {
  std::vector<std::uint64_t> prefix(path.size() + 1, 0);
  for (std::size_t k = 0; k < path.size(); ++k)
    prefix[k + 1] = prefix[k] ^ (std::uint64_t{1} << path.steps()[k]);
  for (std::size_t i = 0; i < prefix.size(); ++i)
    for (std::size_t j = i + 1; j < prefix.size(); ++j)
      if (prefix[i] == prefix[j]) return false;
  return true;
}

int backstep_count(const PathCode& path, const EndpointSpec& spec) {
  if (!endpoint_valid(path, spec))
    throw std::invalid_argument("path does not end at the requested endpoint");
  auto excess = static_cast<long>(path.size()) - spec.hamming;
  if (excess < 0 || excess % 2 != 0)
    throw std::invalid_argument("path length has the wrong parity for the endpoint");
  return static_cast<int>(excess / 2);
}

}  // namespace accperc
