#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geodiam/geometry.hpp"

namespace geodiam {

struct IntersectionGraph {
  int n = 0;
  std::vector<std::vector<int>> adjacency;  // sorted, symmetric, no self-loops
  std::vector<Shape> shapes;

  bool has_edge(int u, int v) const;
  std::size_t edge_count() const;
};

struct DiameterResult {
  std::optional<int> value;  // nullopt encodes INFINITE (disconnected)
  std::optional<std::pair<int, int>> witness;

  bool infinite() const { return !value.has_value(); }
};

// Disks and squares are bucketed in a uniform grid (cell 2 resp. 1); other
// kinds are filtered by bounding-box sweep. Same result as all-pairs testing.
IntersectionGraph build_graph(const std::vector<Shape>& shapes, const PredicateConfig& cfg = {});
IntersectionGraph build_graph_all_pairs(const std::vector<Shape>& shapes,
                                        const PredicateConfig& cfg = {});
IntersectionGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

inline constexpr int kUnreached = -1;

std::vector<int> bfs_distances(const IntersectionGraph& g, int source);
// N^r[v] as a sorted vertex list.
std::vector<int> ball(const IntersectionGraph& g, int v, int r);

DiameterResult exact_diameter(const IntersectionGraph& g);
bool diameter_at_most(const IntersectionGraph& g, int delta);

}  // namespace geodiam
