#include "geodiam/shatter.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>

namespace geodiam {

std::size_t DynBitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool DynBitset::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::vector<int> DynBitset::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (test(i)) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

void dedup(std::vector<DynBitset>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

}  // namespace

SetSystem SetSystem::from_sets(int ground_size, const std::vector<std::vector<int>>& sets,
                               std::string provenance) {
  SetSystem sys{ground_size, {}, std::move(provenance)};
  for (const auto& s : sets) {
    DynBitset b(ground_size);
    for (int e : s) {
      if (e < 0 || e >= ground_size) throw Error(ErrorKind::Parameter, "SetSystem: element outside ground set");
      b.set(e);
    }
    sys.family.push_back(std::move(b));
  }
  dedup(sys.family);
  return sys;
}

bool is_shattered(const std::vector<int>& x, const SetSystem& sys) {
  if (x.size() > static_cast<std::size_t>(kMaxShatterSize))
    throw Error(ErrorKind::Size, "is_shattered: |X| exceeds 20");
  for (int e : x)
    if (e < 0 || e >= sys.ground_size) throw Error(ErrorKind::Parameter, "is_shattered: X not in ground set");
  if (x.empty()) return true;
  const std::size_t traces = std::size_t{1} << x.size();
  if (sys.family.size() < traces) return false;
  std::vector<char> seen(traces, 0);
  std::size_t found = 0;
  for (const DynBitset& f : sys.family) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (f.test(x[i])) code |= std::size_t{1} << i;
    if (!seen[code]) {
      seen[code] = 1;
      if (++found == traces) return true;
    }
  }
  return false;
}

namespace {

// Members grouped by their trace on the current set: one bitset over members
// per trace. Adding element e splits every group by membership of e.
class Searcher {
 public:
  Searcher(const SetSystem& sys, int k, long long budget)
      : n_(sys.ground_size), m_(sys.family.size()), k_(k), budget_(budget) {
    words_ = (m_ + 63) / 64;
    columns_.assign(n_, std::vector<std::uint64_t>(words_, 0));
    for (std::size_t i = 0; i < m_; ++i)
      for (int e : sys.family[i].elements()) columns_[e][i >> 6] |= std::uint64_t{1} << (i & 63);
    all_.assign(words_, ~std::uint64_t{0});
    if (m_ % 64) all_.back() = (std::uint64_t{1} << (m_ % 64)) - 1;
    if (m_ == 0) all_.clear();
  }

  using Groups = std::vector<std::vector<std::uint64_t>>;

  Groups root() const { return m_ == 0 ? Groups{} : Groups{all_}; }

  // Splits every group by column e; false when some part is empty.
  bool split(const Groups& groups, int e, Groups& out) {
    ++checks;
    if (groups.empty()) return false;
    out.assign(2 * groups.size(), std::vector<std::uint64_t>(words_));
    const auto& col = columns_[e];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      bool in = false, outside = false;
      auto& a = out[2 * g];
      auto& b = out[2 * g + 1];
      for (std::size_t w = 0; w < words_; ++w) {
        a[w] = groups[g][w] & ~col[w];
        b[w] = groups[g][w] & col[w];
        in |= b[w] != 0;
        outside |= a[w] != 0;
      }
      if (!in || !outside) return false;
    }
    return true;
  }

  bool exhausted() const { return checks >= budget_; }

  // Returns false when the budget ran out before the enumeration finished.
  bool dfs(std::vector<int>& x, const Groups& groups, int start) {
    Groups next;
    for (int e = start; e < n_; ++e) {
      if (exhausted()) return false;
      if (!split(groups, e, next)) continue;
      x.push_back(e);
      if (x.size() > best.size()) best = x;
      bool done = true;
      if (static_cast<int>(x.size()) < k_) done = dfs(x, next, e + 1);
      x.pop_back();
      if (!done) return false;
      if (static_cast<int>(best.size()) == k_) return true;
    }
    return true;
  }

  void randomized(std::mt19937_64& rng) {
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    Groups cur, next;
    while (!exhausted() && static_cast<int>(best.size()) < k_) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> x;
      cur = root();
      for (int e : perm) {
        if (exhausted() || static_cast<int>(x.size()) == k_) break;
        if (split(cur, e, next)) {
          x.push_back(e);
          cur.swap(next);
        }
      }
      if (x.size() > best.size()) best = x;
    }
  }

  long long checks = 0;
  std::vector<int> best;

 private:
  int n_;
  std::size_t m_;
  int k_;
  long long budget_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> columns_;
  std::vector<std::uint64_t> all_;
};

}  // namespace

ShatterReport search_shattered(const SetSystem& sys, int k, long long budget, std::uint64_t seed) {
  if (k > kMaxShatterSize) throw Error(ErrorKind::Size, "search_shattered: k exceeds 20");
  if (k < 0) throw Error(ErrorKind::Parameter, "search_shattered: k must be >= 0");
  ShatterReport rep;
  rep.seed = seed;
  Searcher s(sys, k, budget);
  std::vector<int> x;
  bool complete = k == 0 || s.dfs(x, s.root(), 0);
  if (complete) {
    rep.exhaustive = true;
  } else {
    std::mt19937_64 rng(seed);
    s.randomized(rng);
  }
  rep.witness = s.best;
  std::sort(rep.witness.begin(), rep.witness.end());
  rep.size = static_cast<int>(rep.witness.size());
  rep.checks = s.checks;
  if (!is_shattered(rep.witness, sys))
    throw Error(ErrorKind::Precondition, "search_shattered: witness failed re-verification");
  return rep;
}

SetSystem neighborhood_system(const IntersectionGraph& g) {
  if (g.n > kMaxSystemVertices) throw Error(ErrorKind::Size, "neighborhood_system: more than 2000 vertices");
  SetSystem sys{g.n, {}, "neighborhood-balls"};
  for (int v = 0; v < g.n; ++v) {
    auto d = bfs_distances(g, v);
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::erase_if(order, [&](int u) { return d[u] == kUnreached; });
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    DynBitset ball(g.n);
    std::size_t i = 0;
    while (i < order.size()) {
      int r = d[order[i]];
      for (; i < order.size() && d[order[i]] == r; ++i) ball.set(order[i]);
      sys.family.push_back(ball);
    }
  }
  dedup(sys.family);
  return sys;
}

std::vector<int> rainbow_ball_bfs(const IntersectionGraph& g, const std::vector<int>& colors,
                                  const ColorSequence& s, int v) {
  const int m = static_cast<int>(s.size());
  auto next_match = [&](int from, int color) {
    for (int k = from; k < m; ++k)
      if (s[k] == color) return k + 1;
    return -1;
  };
  int j0 = next_match(0, colors.at(v));
  if (j0 < 0) return {};
  std::vector<char> seen(static_cast<std::size_t>(g.n) * (m + 1), 0);
  std::vector<char> member(g.n, 0);
  std::queue<std::pair<int, int>> q;
  q.push({v, j0});
  seen[static_cast<std::size_t>(v) * (m + 1) + j0] = 1;
  while (!q.empty()) {
    auto [u, j] = q.front();
    q.pop();
    member[u] = 1;
    for (int w : g.adjacency[u]) {
      int k = next_match(j, colors[w]);
      if (k < 0) continue;
      auto& flag = seen[static_cast<std::size_t>(w) * (m + 1) + k];
      if (flag) continue;
      flag = 1;
      q.push({w, k});
    }
  }
  std::vector<int> out;
  for (int u = 0; u < g.n; ++u)
    if (member[u]) out.push_back(u);
  return out;
}

SetSystem rainbow_system(const IntersectionGraph& g, const std::vector<int>& colors,
                         const ColorSequence& s) {
  if (g.n > kMaxSystemVertices) throw Error(ErrorKind::Size, "rainbow_system: more than 2000 vertices");
  if (static_cast<int>(colors.size()) != g.n) throw Error(ErrorKind::Parameter, "rainbow_system: one color per vertex");
  SetSystem sys{g.n, {}, "rainbow-balls"};
  for (int v = 0; v < g.n; ++v) {
    auto ball = rainbow_ball_bfs(g, colors, s, v);
    if (ball.empty()) continue;
    DynBitset b(g.n);
    for (int u : ball) b.set(u);
    sys.family.push_back(std::move(b));
  }
  dedup(sys.family);
  return sys;
}

SetSystem rainbow_system(const IntersectionGraph& g, const ColorSequence& s) {
  std::vector<int> colors;
  for (const Shape& sh : g.shapes) {
    const auto* seg = std::get_if<Segment>(&sh);
    if (!seg) throw Error(ErrorKind::Parameter, "rainbow_system: colors come from segment slope classes");
    colors.push_back(seg->slope_class);
  }
  return rainbow_system(g, colors, s);
}

}  // namespace geodiam
