#include <doctest.h>

#include <random>

#include "geodiam/oracle.hpp"

using namespace geodiam;

namespace {

// All-pairs shortest paths by Floyd-Warshall; -1 when disconnected.
int floyd_warshall_diameter(const IntersectionGraph& g) {
  const int n = g.n;
  const int inf = 1 << 28;
  std::vector<int> d(n * n, inf);
  for (int i = 0; i < n; ++i) {
    d[i * n + i] = 0;
    for (int j : g.adjacency[i]) d[i * n + j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  int best = 0;
  for (int v : d) {
    if (v >= inf) return -1;
    best = std::max(best, v);
  }
  return best;
}

std::vector<Shape> disks(const std::vector<Point>& pts) {
  std::vector<Shape> s;
  for (Point p : pts) s.push_back(UnitDisk{p});
  return s;
}

}  // namespace

TEST_CASE("build_graph: three disks form a path") {
  auto g = build_graph(disks({{0, 0}, {1.9, 0}, {3.8, 0}}));
  CHECK(g.n == 3);
  CHECK(g.adjacency[0] == std::vector<int>{1});
  CHECK(g.adjacency[1] == std::vector<int>{0, 2});
  CHECK(g.adjacency[2] == std::vector<int>{1});
  auto d = exact_diameter(g);
  REQUIRE(d.value);
  CHECK(*d.value == 2);
  CHECK(d.witness == std::make_pair(0, 2));
  CHECK(diameter_at_most(g, 2));
  CHECK_FALSE(diameter_at_most(g, 1));
}

TEST_CASE("build_graph: single shape and disconnected pair") {
  auto g1 = build_graph(disks({{5, 5}}));
  CHECK(g1.n == 1);
  CHECK(g1.edge_count() == 0);
  CHECK(*exact_diameter(g1).value == 0);
  auto g2 = build_graph(disks({{0, 0}, {10, 0}}));
  CHECK(exact_diameter(g2).infinite());
  CHECK_FALSE(diameter_at_most(g2, 100));
  CHECK_THROWS_AS(build_graph({}), Error);
}

TEST_CASE("grid pruning equals all-pairs testing") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    std::uniform_real_distribution<double> u(-4, 4);
    std::vector<Shape> sq, dk, sg;
    int n = 50;
    for (int i = 0; i < n; ++i) {
      Point p{u(rng), u(rng)};
      sq.push_back(UnitSquare{p});
      dk.push_back(UnitDisk{p});
      Point q{u(rng), u(rng)};
      sg.push_back(Segment{p, q, 1});
    }
    for (const auto* set : {&sq, &dk, &sg}) {
      auto a = build_graph(*set), b = build_graph_all_pairs(*set);
      CHECK(a.adjacency == b.adjacency);
    }
    // The squares test explicitly against L_inf <= 1.
    auto a = build_graph(sq);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          CHECK(a.has_edge(i, j) ==
                (linf(std::get<UnitSquare>(sq[i]).center, std::get<UnitSquare>(sq[j]).center) <=
                 1.0 + 1e-9));
  }
}

TEST_CASE("exact_diameter equals Floyd-Warshall on random disks") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 3);
  for (int it = 0; it < 6; ++it) {
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({u(rng), u(rng)});
    auto g = build_graph(disks(pts));
    auto d = exact_diameter(g);
    int fw = floyd_warshall_diameter(g);
    if (fw < 0) {
      CHECK(d.infinite());
    } else {
      REQUIRE(d.value);
      CHECK(*d.value == fw);
      auto dist = bfs_distances(g, d.witness->first);
      CHECK(dist[d.witness->second] == fw);
    }
  }
}

TEST_CASE("diameter_at_most matches exact_diameter on segment graphs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 6), len(0.5, 3);
  for (int it = 0; it < 100; ++it) {
    std::vector<Shape> segs;
    int n = 10 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      Point a{u(rng), u(rng)};
      bool h = rng() & 1;
      double l = len(rng);
      segs.push_back(Segment{a, h ? Point{a.x + l, a.y} : Point{a.x, a.y + l}, h ? 1 : 2});
    }
    auto g = build_graph(segs);
    auto d = exact_diameter(g);
    for (int delta = 1; delta <= 4; ++delta)
      CHECK(diameter_at_most(g, delta) == (!d.infinite() && *d.value <= delta));
    if (!d.infinite()) CHECK(*d.value <= g.n - 1);
  }
}

TEST_CASE("BFS balls are monotone in r") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0, 5);
  std::vector<Point> pts;
  for (int i = 0; i < 80; ++i) pts.push_back({u(rng), u(rng)});
  auto g = build_graph(disks(pts));
  for (int v = 0; v < g.n; ++v) {
    CHECK(ball(g, v, 0) == std::vector<int>{v});
    for (int r = 0; r < 6; ++r) {
      auto a = ball(g, v, r), b = ball(g, v, r + 1);
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}
