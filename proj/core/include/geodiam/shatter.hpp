#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geodiam/oracle.hpp"
#include "geodiam/segments.hpp"

namespace geodiam {

// Fixed-size bitset whose size is chosen at run time.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  bool any() const;
  std::vector<int> elements() const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  friend bool operator==(const DynBitset&, const DynBitset&) = default;
  friend auto operator<=>(const DynBitset& a, const DynBitset& b) { return a.words_ <=> b.words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SetSystem {
  int ground_size = 0;
  std::vector<DynBitset> family;  // deduplicated
  std::string provenance;

  static SetSystem from_sets(int ground_size, const std::vector<std::vector<int>>& sets,
                             std::string provenance = "explicit");
};

struct ShatterReport {
  std::vector<int> witness;  // largest shattered subset found
  int size = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  long long checks = 0;
};

constexpr int kMaxShatterSize = 20;
constexpr int kMaxSystemVertices = 2000;

// True iff every one of the 2^|X| traces on X is realized by a member.
bool is_shattered(const std::vector<int>& x, const SetSystem& sys);

// Largest shattered subset of size <= k. A pruned depth-first enumeration
// (every shattered set extends a shattered set by its largest element) runs
// first; if it finishes within `budget` extension checks the result is
// exhaustive, otherwise randomized greedy extension uses the rest.
ShatterReport search_shattered(const SetSystem& sys, int k, long long budget,
                               std::uint64_t seed = 0x5eed);

// {N^r[v] : v in V, 0 <= r <= n}, deduplicated.
SetSystem neighborhood_system(const IntersectionGraph& g);

// Vertices reachable from v by a walk whose color sequence is a subsequence
// of S (product of the graph with greedy matching positions in S).
std::vector<int> rainbow_ball_bfs(const IntersectionGraph& g, const std::vector<int>& colors,
                                  const ColorSequence& s, int v);

// {B_S(v) : v in V}, deduplicated; empty balls are dropped.
SetSystem rainbow_system(const IntersectionGraph& g, const std::vector<int>& colors,
                         const ColorSequence& s);
// Colors taken from the slope classes of the graph's segments.
SetSystem rainbow_system(const IntersectionGraph& g, const ColorSequence& s);

}  // namespace geodiam
