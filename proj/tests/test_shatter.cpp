#include <doctest.h>

#include <random>
#include <set>

#include "geodiam/shatter.hpp"

using namespace geodiam;

namespace {

IntersectionGraph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return graph_from_edges(n, e);
}

// Largest shattered subset by trying every subset.
int brute_vc(const SetSystem& sys) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << sys.ground_size); ++mask) {
    std::vector<int> x;
    for (int i = 0; i < sys.ground_size; ++i)
      if (mask >> i & 1) x.push_back(i);
    if (static_cast<int>(x.size()) > best && is_shattered(x, sys)) best = static_cast<int>(x.size());
  }
  return best;
}

// Horizontal segments at distinct heights and vertical ones at distinct
// abscissae: intersections only occur across the two classes.
std::vector<Shape> bipartite_segments(std::mt19937_64& rng, int n, double box) {
  std::uniform_real_distribution<double> u(0, box), len(0.5, 0.5 * box);
  std::vector<Shape> out;
  for (int i = 0; i < n; ++i) {
    Point a{u(rng), u(rng)};
    if (i % 2 == 0) out.push_back(Segment{a, {a.x + len(rng), a.y}, 1});
    else out.push_back(Segment{a, {a.x, a.y + len(rng)}, 2});
  }
  return out;
}

}  // namespace

TEST_CASE("is_shattered examples") {
  auto path = neighborhood_system(graph_from_edges(2, {{0, 1}}));
  CHECK(is_shattered({0}, path));
  auto k3 = neighborhood_system(complete(3));
  CHECK(k3.family.size() == 4);
  CHECK_FALSE(is_shattered({0, 1, 2}, k3));
  CHECK(is_shattered({}, k3));
  CHECK(is_shattered({0, 1}, k3));
  std::vector<int> big(21);
  for (int i = 0; i < 21; ++i) big[i] = i;
  auto sys = SetSystem::from_sets(30, {{1}});
  try {
    is_shattered(big, sys);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Size);
  }
}

TEST_CASE("neighborhood_system examples") {
  auto empty3 = neighborhood_system(graph_from_edges(3, {}));
  CHECK(empty3.family.size() == 3);
  for (const auto& f : empty3.family) CHECK(f.count() == 1);
  auto k3 = neighborhood_system(complete(3));
  int singletons = 0, full = 0;
  for (const auto& f : k3.family) {
    singletons += f.count() == 1;
    full += f.count() == 3;
  }
  CHECK(singletons == 3);
  CHECK(full == 1);
  CHECK_THROWS_AS(neighborhood_system(graph_from_edges(2001, {})), Error);
}

TEST_CASE("search_shattered examples") {
  auto k3 = search_shattered(neighborhood_system(complete(3)), 3, 1000);
  CHECK(k3.size == 2);
  CHECK(k3.exhaustive);
  auto one = search_shattered(neighborhood_system(graph_from_edges(1, {})), 3, 1000);
  CHECK(one.size == 0);
  CHECK(one.exhaustive);
}

TEST_CASE("search_shattered equals brute force on small systems") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 150; ++it) {
    int n = 3 + static_cast<int>(rng() % 8);
    int m = 1 + static_cast<int>(rng() % 40);
    std::vector<std::vector<int>> sets;
    for (int i = 0; i < m; ++i) {
      std::vector<int> s;
      for (int e = 0; e < n; ++e)
        if (rng() % 2) s.push_back(e);
      sets.push_back(s);
    }
    auto sys = SetSystem::from_sets(n, sets);
    auto rep = search_shattered(sys, n, 1'000'000);
    CHECK(rep.exhaustive);
    CHECK(rep.size == brute_vc(sys));
    CHECK(is_shattered(rep.witness, sys));
    // Downward closure: dropping any element keeps the set shattered.
    for (std::size_t i = 0; i < rep.witness.size(); ++i) {
      auto sub = rep.witness;
      sub.erase(sub.begin() + static_cast<long>(i));
      CHECK(is_shattered(sub, sys));
    }
  }
}

TEST_CASE("randomized search finds valid witnesses under a tight budget") {
  std::mt19937_64 rng(73);
  std::vector<std::vector<int>> sets;
  const int n = 60;
  for (int i = 0; i < 400; ++i) {
    std::vector<int> s;
    for (int e = 0; e < n; ++e)
      if (rng() % 2) s.push_back(e);
    sets.push_back(s);
  }
  auto sys = SetSystem::from_sets(n, sets);
  auto rep = search_shattered(sys, 8, 2000, 99);
  CHECK_FALSE(rep.exhaustive);
  CHECK(rep.size >= 3);
  CHECK(rep.checks <= 2000);
  CHECK(is_shattered(rep.witness, sys));
  auto again = search_shattered(sys, 8, 2000, 99);
  CHECK(again.witness == rep.witness);
}

TEST_CASE("neighborhood family members are BFS balls") {
  std::mt19937_64 rng(79);
  auto shapes = bipartite_segments(rng, 60, 6.0);
  auto g = build_graph(shapes);
  auto sys = neighborhood_system(g);
  std::set<std::vector<int>> expect;
  for (int v = 0; v < g.n; ++v)
    for (int r = 0; r <= g.n; ++r) expect.insert(ball(g, v, r));
  std::set<std::vector<int>> got;
  for (const auto& f : sys.family) got.insert(f.elements());
  CHECK(got == expect);
}

TEST_CASE("rainbow systems on segment graphs") {
  std::mt19937_64 rng(83);
  auto shapes = bipartite_segments(rng, 40, 5.0);
  auto g = build_graph(shapes);
  auto sys = rainbow_system(g, {1, 2});
  for (const auto& f : sys.family) CHECK(f.any());
  // With S = [1, 2] a horizontal segment reaches its vertical neighbours; a
  // vertical one only matches the suffix [2] and reaches itself.
  std::set<std::vector<int>> expect;
  for (int v = 1; v < g.n; v += 2) expect.insert({v});
  for (int v = 0; v < g.n; v += 2) {
    std::vector<int> b{v};
    b.insert(b.end(), g.adjacency[v].begin(), g.adjacency[v].end());
    std::sort(b.begin(), b.end());
    expect.insert(b);
  }
  std::set<std::vector<int>> got;
  for (const auto& f : sys.family) got.insert(f.elements());
  CHECK(got == expect);
}

TEST_CASE("shattering stays within the known bounds on bipartite segment graphs") {
  std::mt19937_64 rng(89);
  for (int it = 0; it < 10; ++it) {
    auto shapes = bipartite_segments(rng, 80, 8.0);
    auto g = build_graph(shapes);
    auto rep = search_shattered(neighborhood_system(g), 9, 200'000, it);
    CHECK(rep.size <= 8);
    for (const auto& s : all_sequences(2, 3)) CHECK(search_shattered(rainbow_system(g, s), 5, 50'000, it).size <= 4);
  }
}
