#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodiam/geometry.hpp"

namespace geodiam {

struct OVInstance {
  int d = 0;
  std::vector<std::vector<int>> a;  // 0/1 vectors of length d
  std::vector<std::vector<int>> b;
};

// Parts A, B, C, D with vertices 1..k; one k x k bitmap per part pair.
struct FourPartiteGraph {
  enum Pair { AB = 0, CD, AC, AD, BC, BD };
  int k = 1;
  std::array<std::vector<char>, 6> edges;  // edges[p][(x - 1) * k + (y - 1)]

  explicit FourPartiteGraph(int k_ = 1);
  bool has(Pair p, int x, int y) const { return edges[p][(x - 1) * k + (y - 1)] != 0; }
  void set(Pair p, int x, int y, bool on = true) { edges[p][(x - 1) * k + (y - 1)] = on; }
  bool has_four_clique() const;
};

// Parts 0..5 (A..F) with vertices 1..k; one k^3 bitmap per part triple.
struct SixPartiteHypergraph {
  int k = 1;
  std::array<std::vector<char>, 20> triples;

  explicit SixPartiteHypergraph(int k_ = 1);
  // Index of the triple of distinct parts {p, q, r} in [0, 20).
  static int triple_index(int p, int q, int r);
  bool has(std::array<int, 3> parts, std::array<int, 3> values) const;
  void set(std::array<int, 3> parts, std::array<int, 3> values, bool on = true);
  bool has_hyperclique() const;
};

enum class ShapeRole { Left, Right, Crossing, Dummy, SideA, SideB };
const char* to_string(ShapeRole r) noexcept;

struct ExpectedAnswer {
  std::string question;  // "diam<=2" or "is-clique"
  int delta = 2;
  bool answer = false;
};

struct ValidationReport {
  bool passed = true;
  long long checks = 0;
  std::vector<std::string> issues;
};

struct GeneratedInstance {
  std::vector<Shape> shapes;
  std::vector<ShapeRole> roles;
  std::vector<std::string> labels;
  ExpectedAnswer expected;
  ValidationReport validation;
  double tau = 2.0;
};

// One polyline per vector: A-vectors at heights u_i - 1, B-vectors at 1 - v_i.
GeneratedInstance gen_ov_strings(const OVInstance& inst);

// Segments whose intersection graph has diameter <= 2 iff the graph has no
// 4-clique. On a failed crossing-segment check tau doubles up to 64.
GeneratedInstance gen_k4_segments(const FourPartiteGraph& g, double tau = 2.0);

struct ChainCoords {
  // Left chain v1..v6; the right chain is its reflection through the origin.
  std::array<Point, 6> left{Point{-3, 3}, Point{-2.6, 1.2}, Point{-2.5, 0.5},
                            Point{-2.5, -0.5}, Point{-2.6, -1.2}, Point{-3, -3}};
};

// Triangles whose intersection graph has diameter <= 2 iff the hypergraph has
// no 6-hyperclique. Every pairwise property the reduction relies on is checked.
GeneratedInstance gen_h6_triangles(const SixPartiteHypergraph& g, const ChainCoords& chain = {},
                                   double tau = 2.0);

// Variants whose constants are not pinned down; both throw UnsupportedConstruction.
GeneratedInstance gen_fat_triangles(const SixPartiteHypergraph& g, double epsilon);
GeneratedInstance gen_three_slope_segments(const OVInstance& inst);

// Random inputs for the generators.
OVInstance random_ov(int d, int size, std::uint64_t seed);
FourPartiteGraph random_four_partite(int k, double density, std::uint64_t seed);
SixPartiteHypergraph random_six_partite(int k, double density, std::uint64_t seed);

// n points uniform in [0, side]^2.
std::vector<Point> random_points(int n, double side, std::uint64_t seed);
// Slope class c has direction (c - 1) * pi / h.
SlopeTable uniform_slopes(int h);
// n segments with midpoints uniform in [0, side]^2, uniform class in [1..h]
// and length uniform in [min_len, max_len].
std::vector<Segment> random_segments(int n, int h, double side, double min_len, double max_len,
                                     std::uint64_t seed);

// Graph-oracle check: expected answer matches the BFS diameter decision, and
// no pair other than (Left, Right) sits at distance >= 3 unless a (Left,
// Right) pair does too. Returns issues found (empty when consistent).
std::vector<std::string> oracle_check(const GeneratedInstance& inst, const PredicateConfig& cfg = {});

}  // namespace geodiam
