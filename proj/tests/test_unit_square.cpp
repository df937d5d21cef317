#include <doctest.h>

#include <random>

#include "geodiam/oracle.hpp"
#include "geodiam/unit_square.hpp"

using namespace geodiam;

namespace {

bool touch(Point a, Point b) { return linf(a, b) <= 1.0 + 1e-9; }

// Layered chain search from p0 to pd; `allowed(i, p)` restricts level i.
template <class Allowed>
bool chain_exists(const PartiteInstance& inst, Point p0, Point pd, Allowed allowed) {
  const int delta = inst.delta();
  std::vector<Point> cur{p0};
  if (!allowed(0, p0)) return false;
  for (int i = 1; i <= delta; ++i) {
    std::vector<Point> next;
    const auto& lvl = i == delta ? std::vector<Point>{pd} : inst.levels[i];
    for (Point q : lvl) {
      if (!allowed(i, q)) continue;
      for (Point p : cur)
        if (touch(p, q)) {
          next.push_back(q);
          break;
        }
    }
    cur.swap(next);
    if (cur.empty()) return false;
  }
  return true;
}

// Chain with some consecutive pair crossing mu in x mod 1.
bool crossing_chain_exists(const PartiteInstance& inst, Point p0, Point pd, double mu) {
  const int delta = inst.delta();
  struct State {
    Point p;
    bool crossed;
  };
  auto side = [&](Point p) { return frac(p.x) > mu; };
  std::vector<State> cur{{p0, false}};
  for (int i = 1; i <= delta; ++i) {
    std::vector<State> next;
    const auto& lvl = i == delta ? std::vector<Point>{pd} : inst.levels[i];
    for (Point q : lvl) {
      bool any = false, any_crossed = false;
      for (const auto& s : cur)
        if (touch(s.p, q)) {
          any = true;
          if (s.crossed || side(s.p) != side(q)) any_crossed = true;
        }
      if (any) next.push_back({q, any_crossed});
    }
    cur.swap(next);
  }
  for (const auto& s : cur)
    if (s.crossed) return true;
  return false;
}

bool all_connected_oracle(const PartiteInstance& inst) {
  for (Point p0 : inst.levels.front())
    for (Point pd : inst.levels.back())
      if (!chain_exists(inst, p0, pd, [](int, Point) { return true; })) return false;
  return true;
}

PartiteInstance random_instance(std::mt19937_64& rng, int delta, int per_level, double lo,
                                double hi) {
  std::uniform_real_distribution<double> u(lo, hi), c(0.0, 1.0);
  PartiteInstance inst;
  inst.levels.resize(delta + 1);
  for (int i = 0; i < per_level; ++i) inst.levels[0].push_back({c(rng), c(rng)});
  for (int l = 1; l <= delta; ++l)
    for (int i = 0; i < per_level; ++i) inst.levels[l].push_back({u(rng), u(rng)});
  return inst;
}

RecursionNode trivial_node(PartiteInstance inst) {
  RecursionNode n;
  n.inst = std::move(inst);
  n.dim = 0;
  return n;
}

}  // namespace

TEST_CASE("chain_mapping_1d worked example") {
  PartiteInstance inst{{{{0.6, 0.5}}, {{0.3, 0.6}}, {{0.4, 1.2}}}};
  auto m = chain_mapping_1d(inst, 0, 0.5);
  CHECK(m.phi[0] == doctest::Approx(0.5));
  CHECK(m.psi[0] == doctest::Approx(1.6));
  CHECK(m.phi[0] < m.psi[0]);

  PartiteInstance no_mid{{{{0.6, 0.5}}, {}, {{0.4, 1.2}}}};
  auto e = chain_mapping_1d(no_mid, 0, 0.5);
  CHECK_FALSE(e.phi[0] < e.psi[0]);

  PartiteInstance outside{{{{0.6, 1.7}}, {{0.3, 0.6}}, {{0.4, 1.2}}}};
  auto o = chain_mapping_1d(outside, 0, 0.5);
  CHECK(o.phi[0] == kPosInf);
  CHECK_FALSE(o.phi[0] < o.psi[0]);

  CHECK_THROWS_AS(chain_mapping_1d(inst, 2, 0.5), Error);
  CHECK_THROWS_AS(chain_mapping_1d(inst, -1, 0.5), Error);
  CHECK_THROWS_AS(chain_mapping_1d(inst, 0, 1.0), Error);
}

TEST_CASE("chain_mapping_1d equivalence against chain enumeration") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> um(0.05, 0.95);
  for (int it = 0; it < 40; ++it) {
    int delta = 1 + static_cast<int>(rng() % 4);
    auto inst = random_instance(rng, delta, 12, -1.5, 2.5);
    double mu = um(rng);
    for (int j = 0; j < delta; ++j) {
      auto m = chain_mapping_1d(inst, j, mu);
      for (std::size_t a = 0; a < inst.levels[0].size(); ++a)
        for (std::size_t b = 0; b < inst.levels[delta].size(); ++b) {
          bool expect = chain_exists(inst, inst.levels[0][a], inst.levels[delta][b],
                                     [&](int i, Point p) {
                                       if (i == j) return p.x > mu && p.x < 1 && p.y > 0 && p.y < 1;
                                       if (i == j + 1)
                                         return ((p.x > 0 && p.x < mu) || (p.x > 1 && p.x < 1 + mu)) &&
                                                p.y > -1 && p.y < 1;
                                       return true;
                                     });
          CHECK(expect == (m.phi[a] < m.psi[b]));
        }
    }
  }
}

TEST_CASE("self-duality: reversing levels and negating y swaps phi and psi") {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 20; ++it) {
    int delta = 2 + static_cast<int>(rng() % 2);
    auto inst = random_instance(rng, delta, 10, -1.5, 2.5);
    PartiteInstance rev;
    for (int i = delta; i >= 0; --i) {
      rev.levels.push_back({});
      for (Point p : inst.levels[i]) rev.levels.back().push_back({p.x, -p.y});
    }
    for (int j = 0; j < delta; ++j) {
      auto fwd = component_mapping(inst, {0, 0, j, 1}, 0.4);
      auto dual = component_mapping(rev, {0, 0, delta - 1 - j, 4}, 0.4);
      REQUIRE(dual.phi.size() == fwd.psi.size());
      for (std::size_t i = 0; i < fwd.psi.size(); ++i) CHECK(dual.phi[i] == -fwd.psi[i]);
      for (std::size_t i = 0; i < fwd.phi.size(); ++i) CHECK(dual.psi[i] == -fwd.phi[i]);
    }
  }
}

TEST_CASE("chain_mapping_highdim: dimension and component order") {
  for (int d = 1; d <= 4; ++d) {
    auto keys = component_order(d);
    CHECK(static_cast<int>(keys.size()) == highdim_dimension(d));
    CHECK(keys.front() == ComponentKey{-d, -d, 0, 1});
    CHECK(keys.back() == ComponentKey{d, d, d - 1, 4});
  }
  CHECK(highdim_dimension(2) == 200);
  PartiteInstance bad{{{{1.5, 0.5}}, {{1.0, 1.0}}}};
  CHECK_THROWS_AS(chain_mapping_highdim(bad, 0.5), Error);
}

TEST_CASE("chain_mapping_highdim: delta=1 matches the direct pairwise check") {
  std::mt19937_64 rng(107);
  auto inst = random_instance(rng, 1, 50, -0.9, 1.9);
  const double mu = 0.5;
  auto m = chain_mapping_highdim(inst, mu);
  REQUIRE(m.dim == highdim_dimension(1));
  for (std::size_t a = 0; a < 50; ++a)
    for (std::size_t b = 0; b < 50; ++b) {
      Point p = inst.levels[0][a], q = inst.levels[1][b];
      bool crossing = touch(p, q) && ((frac(p.x) > mu) != (frac(q.x) > mu));
      CHECK(crossing == !dominates(m.phi_row(a), m.psi_row(b), m.dim));
    }
}

TEST_CASE("chain_mapping_highdim: no crossing possible means domination everywhere") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> hi(0.6, 0.99), y(0.0, 1.0);
  PartiteInstance inst;
  inst.levels.resize(3);
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 15; ++i) inst.levels[l].push_back({hi(rng) + (l ? (int)(rng() % 3) - 1 : 0), y(rng)});
  auto m = chain_mapping_highdim(inst, 0.5);
  for (std::size_t a = 0; a < 15; ++a)
    for (std::size_t b = 0; b < 15; ++b) CHECK(dominates(m.phi_row(a), m.psi_row(b), m.dim));
}

TEST_CASE("chain_mapping_highdim: equivalence with crossing-chain enumeration") {
  std::mt19937_64 rng(113);
  for (int rep = 0; rep < 3; ++rep) {
    auto inst = random_instance(rng, 2, 30, -1.8, 2.8);
    for (double mu : {0.5, 0.23}) {
      auto full = chain_mapping_highdim(inst, mu);
      auto pruned = chain_mapping_highdim_pruned(inst, mu);
      for (std::size_t a = 0; a < 30; ++a)
        for (std::size_t b = 0; b < 30; ++b) {
          bool expect = crossing_chain_exists(inst, inst.levels[0][a], inst.levels[2][b], mu);
          CHECK(expect == !dominates(full.phi_row(a), full.psi_row(b), full.dim));
          CHECK(expect == !dominates(pruned.phi_row(a), pruned.psi_row(b), pruned.dim));
        }
    }
  }
}

TEST_CASE("find_dominating_pair strategies agree") {
  std::mt19937_64 rng(127);
  std::uniform_int_distribution<int> v(0, 6);
  for (int it = 0; it < 200; ++it) {
    int dim = static_cast<int>(rng() % 6);
    int na = 1 + static_cast<int>(rng() % 90), nb = 1 + static_cast<int>(rng() % 90);
    std::vector<double> a(na * dim), b(nb * dim);
    for (auto& x : a) x = v(rng) == 6 ? kPosInf : v(rng);
    for (auto& x : b) x = v(rng) == 0 ? kNegInf : v(rng) + 1.5;
    std::vector<int> sa, sb;
    for (int i = 0; i < na; ++i)
      if (rng() % 3) sa.push_back(i);
    for (int i = 0; i < nb; ++i)
      if (rng() % 3) sb.push_back(i);
    auto x = find_dominating_pair(a, sa, b, sb, dim, DominanceStrategy::AllPairs);
    auto y = find_dominating_pair(a, sa, b, sb, dim, DominanceStrategy::BitsetSweep);
    CHECK(x.has_value() == y.has_value());
    if (y) CHECK(dominates(a.data() + y->first * dim, b.data() + y->second * dim, dim));
  }
}

TEST_CASE("partite_all_connected examples") {
  CHECK(partite_all_connected(trivial_node({{{{0.5, 0.5}}, {{0.7, 0.7}}}}), 2));
  CHECK_FALSE(partite_all_connected(trivial_node({{{{0.5, 0.5}}, {{2.0, 0.5}}}}), 2));
  RecursionNode bad = trivial_node({{{{0.5, 0.5}}, {{0.7, 0.7}}}});
  bad.dim = 2;
  bad.f = {0, 0};
  CHECK_THROWS_AS(partite_all_connected(bad, 2), Error);
}

TEST_CASE("partite_all_connected equals the product-graph oracle") {
  std::mt19937_64 rng(131);
  UnitSquareOptions opt;
  opt.base_case_size = 1;  // always recurse
  int yes = 0, no = 0;
  for (int it = 0; it < 30; ++it) {
    int delta = it < 10 ? 3 : 1 + static_cast<int>(rng() % 3);
    int per = it < 10 ? 60 : 8 + static_cast<int>(rng() % 25);
    double spread = 0.6 + 0.25 * delta;
    auto inst = random_instance(rng, delta, per, 0.5 - spread, 0.5 + spread);
    bool expect = all_connected_oracle(inst);
    (expect ? yes : no)++;
    for (int b : {2, 4}) {
      CHECK(partite_all_connected(trivial_node(inst), b, opt) == expect);
    }
    CHECK(partite_all_connected_direct(trivial_node(inst)) == expect);
  }
  MESSAGE("partite oracle outcomes: " << yes << " connected, " << no << " not");
}

TEST_CASE("monotonicity: adding interior points never breaks connectivity") {
  std::mt19937_64 rng(137);
  UnitSquareOptions opt;
  opt.base_case_size = 1;
  std::uniform_real_distribution<double> u(-1.5, 2.5);
  for (int it = 0; it < 30; ++it) {
    auto inst = random_instance(rng, 3, 12, -1.2, 2.2);
    bool before = partite_all_connected(trivial_node(inst), 3, opt);
    for (int add = 0; add < 5; ++add) {
      int lvl = 1 + static_cast<int>(rng() % 2);
      inst.levels[lvl].push_back({u(rng), u(rng)});
      bool after = partite_all_connected(trivial_node(inst), 3, opt);
      if (before) CHECK(after);
      before = after;
    }
  }
}

TEST_CASE("case exhaustiveness of the b-way split") {
  std::mt19937_64 rng(139);
  std::uniform_real_distribution<double> u(-2, 3);
  for (int it = 0; it < 2000; ++it) {
    int delta = 1 + static_cast<int>(rng() % 4);
    auto inst = random_instance(rng, delta, 6, -2, 3);
    int b = 2 + static_cast<int>(rng() % 5);
    auto mus = compute_quantiles(inst, b);
    int parts = static_cast<int>(mus.size()) - 1;
    int k = static_cast<int>(rng() % parts);
    std::vector<double> fr;
    for (int i = 0; i <= delta; ++i) fr.push_back(frac(inst.levels[i][rng() % 6].x));
    auto crosses = [&](double mu) {
      for (int i = 0; i < delta; ++i)
        if ((fr[i] < mu && fr[i + 1] > mu) || (fr[i] > mu && fr[i + 1] < mu)) return true;
      return false;
    };
    auto inside = [&](double v) { return v > mus[k] && v < mus[k + 1]; };
    bool all_in = std::all_of(fr.begin(), fr.end(), inside);
    bool all_out = std::none_of(fr.begin(), fr.end(), inside);
    CHECK((crosses(mus[k]) || crosses(mus[k + 1]) || all_in || all_out));
  }
}

TEST_CASE("unit_square_diam_at_most examples") {
  CHECK(unit_square_diam_at_most({{0, 0}, {0.9, 0}, {1.8, 0}}, 2));
  CHECK_FALSE(unit_square_diam_at_most({{0, 0}, {0.9, 0}, {1.8, 0}}, 1));
  CHECK_FALSE(unit_square_diam_at_most({{0, 0}, {3, 0}}, 2));
  CHECK(unit_square_diam_at_most({{0.3, 0.3}}, 0));
  CHECK_FALSE(unit_square_diam_at_most({{0.3, 0.3}, {0.4, 0.4}}, 0));
  CHECK_THROWS_AS(unit_square_diam_at_most({}, 2), Error);
}

TEST_CASE("unit_square_diam_at_most equals the BFS oracle") {
  std::mt19937_64 rng(149);
  std::uniform_real_distribution<double> u(0, 4);
  for (int delta : {2, 3, 4}) {
    for (int it = 0; it < 3; ++it) {
      std::vector<Point> pts;
      std::vector<Shape> shapes;
      for (int i = 0; i < 300; ++i) {
        pts.push_back({u(rng), u(rng)});
        shapes.push_back(UnitSquare{pts.back()});
      }
      bool expect = diameter_at_most(build_graph(shapes), delta);
      CHECK(unit_square_diam_at_most(pts, delta) == expect);
    }
  }
}
