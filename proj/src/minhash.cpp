#include <algorithm>
#include <limits>
#include <random>

#include "krho/heuristics.hpp"

namespace krho {

MinHashFilter::MinHashFilter(int c, double max_collision_fraction,
                             std::uint64_t seed)
    : max_fraction_(max_collision_fraction) {
  require(c >= 1, "minhash needs at least one hash function");
  require(max_collision_fraction >= 0.0 && max_collision_fraction <= 1.0,
          "max_collision_fraction must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  keys_.resize(static_cast<std::size_t>(c));
  for (auto& key : keys_) key = rng();
  seen_.resize(static_cast<std::size_t>(c));
}

std::vector<std::uint64_t> MinHashFilter::fingerprint(
    const std::vector<std::uint64_t>& elements) const {
  require(!elements.empty(), "cannot fingerprint an empty set");
  std::vector<std::uint64_t> fp(keys_.size(),
                                std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t x : elements)
    for (std::size_t j = 0; j < keys_.size(); ++j)
      fp[j] = std::min(fp[j], mix64(x ^ keys_[j]));
  return fp;
}

double MinHashFilter::collision_fraction(
    const std::vector<std::uint64_t>& fp) const {
  require(fp.size() == keys_.size(), "fingerprint width mismatch");
  int hits = 0;
  for (std::size_t j = 0; j < fp.size(); ++j)
    if (std::binary_search(seen_[j].begin(), seen_[j].end(), fp[j])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(keys_.size());
}

bool MinHashFilter::offer(const std::vector<std::uint64_t>& benefit) {
  if (benefit.empty()) return false;
  std::vector<std::uint64_t> fp = fingerprint(benefit);
  if (collision_fraction(fp) > max_fraction_) return false;
  for (std::size_t j = 0; j < fp.size(); ++j) {
    auto& bucket = seen_[j];
    auto it = std::lower_bound(bucket.begin(), bucket.end(), fp[j]);
    if (it == bucket.end() || *it != fp[j]) bucket.insert(it, fp[j]);
  }
  return true;
}

std::vector<int> minhash_filter(
    const std::vector<std::vector<std::uint64_t>>& benefit_sets, int c,
    double max_collision_fraction, std::uint64_t seed) {
  MinHashFilter mh(c, max_collision_fraction, seed);
  std::vector<int> accepted;
  for (std::size_t i = 0; i < benefit_sets.size(); ++i)
    if (mh.offer(benefit_sets[i])) accepted.push_back(static_cast<int>(i));
  return accepted;
}

}  // namespace krho
