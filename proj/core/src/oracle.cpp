#include "geodiam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace geodiam {

bool IntersectionGraph::has_edge(int u, int v) const {
  const auto& a = adjacency[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t IntersectionGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& a : adjacency) m += a.size();
  return m / 2;
}

namespace {

void add_edge(IntersectionGraph& g, int u, int v) {
  g.adjacency[u].push_back(v);
  g.adjacency[v].push_back(u);
}

void finish(IntersectionGraph& g) {
  for (auto& a : g.adjacency) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

IntersectionGraph empty_graph(const std::vector<Shape>& shapes) {
  if (shapes.empty()) throw Error(ErrorKind::Parameter, "empty shape sequence");
  IntersectionGraph g;
  g.n = static_cast<int>(shapes.size());
  g.adjacency.assign(g.n, {});
  g.shapes = shapes;
  return g;
}

struct CellKey {
  long long x, y;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    return splitmix64(static_cast<std::uint64_t>(k.x) * 0x9e3779b97f4a7c15ULL ^
                      static_cast<std::uint64_t>(k.y));
  }
};

void grid_edges(IntersectionGraph& g, double cell, const PredicateConfig& cfg) {
  std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
  auto center = [&](int i) {
    if (auto* d = std::get_if<UnitDisk>(&g.shapes[i])) return d->center;
    return std::get<UnitSquare>(g.shapes[i]).center;
  };
  auto key = [&](Point p) {
    return CellKey{static_cast<long long>(std::floor(p.x / cell)),
                   static_cast<long long>(std::floor(p.y / cell))};
  };
  for (int i = 0; i < g.n; ++i) grid[key(center(i))].push_back(i);
  for (int i = 0; i < g.n; ++i) {
    CellKey k = key(center(i));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({k.x + dx, k.y + dy});
        if (it == grid.end()) continue;
        for (int j : it->second)
          if (j > i && intersects(g.shapes[i], g.shapes[j], cfg)) add_edge(g, i, j);
      }
  }
}

}  // namespace

IntersectionGraph build_graph_all_pairs(const std::vector<Shape>& shapes,
                                        const PredicateConfig& cfg) {
  IntersectionGraph g = empty_graph(shapes);
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (intersects(shapes[i], shapes[j], cfg)) add_edge(g, i, j);
  finish(g);
  return g;
}

IntersectionGraph build_graph(const std::vector<Shape>& shapes, const PredicateConfig& cfg) {
  IntersectionGraph g = empty_graph(shapes);
  ShapeKind k0 = kind_of(shapes[0]);
  bool uniform = std::all_of(shapes.begin(), shapes.end(),
                             [&](const Shape& s) { return kind_of(s) == k0; });
  if (uniform && k0 == ShapeKind::UnitDisk) {
    grid_edges(g, 2.0 + 2 * cfg.epsilon, cfg);
  } else if (uniform && k0 == ShapeKind::UnitSquare) {
    grid_edges(g, 1.0 + 2 * cfg.epsilon, cfg);
  } else {
    std::vector<Box> boxes;
    boxes.reserve(g.n);
    for (const auto& s : shapes) boxes.push_back(bounding_box(s));
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return boxes[a].xmin < boxes[b].xmin; });
    const double eps = cfg.epsilon;
    for (std::size_t a = 0; a < order.size(); ++a) {
      int i = order[a];
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        int j = order[b];
        if (boxes[j].xmin > boxes[i].xmax + eps) break;
        if (boxes[j].ymin > boxes[i].ymax + eps || boxes[i].ymin > boxes[j].ymax + eps) continue;
        if (intersects(shapes[i], shapes[j], cfg)) add_edge(g, i, j);
      }
    }
  }
  finish(g);
  return g;
}

IntersectionGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  IntersectionGraph g;
  g.n = n;
  g.adjacency.assign(n, {});
  for (auto [u, v] : edges)
    if (u != v) add_edge(g, u, v);
  finish(g);
  return g;
}

std::vector<int> bfs_distances(const IntersectionGraph& g, int source) {
  std::vector<int> d(g.n, kUnreached);
  std::vector<int> queue;
  queue.reserve(g.n);
  d[source] = 0;
  queue.push_back(source);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    for (int v : g.adjacency[u])
      if (d[v] == kUnreached) {
        d[v] = d[u] + 1;
        queue.push_back(v);
      }
  }
  return d;
}

std::vector<int> ball(const IntersectionGraph& g, int v, int r) {
  auto d = bfs_distances(g, v);
  std::vector<int> out;
  for (int u = 0; u < g.n; ++u)
    if (d[u] != kUnreached && d[u] <= r) out.push_back(u);
  return out;
}

namespace {

// Eccentricity of s; kUnreached when some vertex is unreachable. Stops early
// once the eccentricity exceeds `cap`.
std::pair<int, int> eccentricity(const IntersectionGraph& g, int s, int cap,
                                 std::vector<int>& d, std::vector<int>& queue) {
  std::fill(d.begin(), d.end(), kUnreached);
  queue.clear();
  d[s] = 0;
  queue.push_back(s);
  int far = s;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    if (d[u] > d[far]) far = u;
    if (d[u] > cap) return {d[u], u};
    for (int v : g.adjacency[u])
      if (d[v] == kUnreached) {
        d[v] = d[u] + 1;
        queue.push_back(v);
      }
  }
  if (static_cast<int>(queue.size()) < g.n) return {kUnreached, -1};
  return {d[far], far};
}

}  // namespace

DiameterResult exact_diameter(const IntersectionGraph& g) {
  DiameterResult r;
  if (g.n == 0) return r;
  std::vector<int> d(g.n), queue;
  queue.reserve(g.n);
  int best = -1;
  for (int s = 0; s < g.n; ++s) {
    auto [ecc, far] = eccentricity(g, s, g.n, d, queue);
    if (ecc == kUnreached) return DiameterResult{};
    if (ecc > best) {
      best = ecc;
      r.witness = std::make_pair(s, far);
    }
  }
  r.value = best;
  return r;
}

bool diameter_at_most(const IntersectionGraph& g, int delta) {
  if (delta < 0) throw Error(ErrorKind::Parameter, "delta must be >= 0");
  std::vector<int> d(g.n), queue;
  queue.reserve(g.n);
  for (int s = 0; s < g.n; ++s) {
    auto [ecc, far] = eccentricity(g, s, delta, d, queue);
    (void)far;
    if (ecc == kUnreached || ecc > delta) return false;
  }
  return true;
}

}  // namespace geodiam
