#include "geodiam/unit_square.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace geodiam {

namespace {

class MinTree {
 public:
  explicit MinTree(int n) : size_(1) {
    while (size_ < n) size_ <<= 1;
    t_.assign(2 * size_, kPosInf);
  }
  void set(int i, double v) {
    i += size_;
    t_[i] = v;
    for (i >>= 1; i >= 1; i >>= 1) t_[i] = std::min(t_[2 * i], t_[2 * i + 1]);
  }
  // min over [l, r)
  double query(int l, int r) const {
    double best = kPosInf;
    for (l += size_, r += size_; l < r; l >>= 1, r >>= 1) {
      if (l & 1) best = std::min(best, t_[l++]);
      if (r & 1) best = std::min(best, t_[--r]);
    }
    return best;
  }

 private:
  int size_;
  std::vector<double> t_;
};

// For each q: min of w[s] over sources s with L_inf(s, q) <= 1 (+inf if none).
std::vector<double> range_min_linf(const std::vector<Point>& src, const std::vector<double>& w,
                                   const std::vector<Point>& qry, double eps) {
  std::vector<double> out(qry.size(), kPosInf);
  std::vector<int> live;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (w[i] < kPosInf) live.push_back(static_cast<int>(i));
  if (live.empty() || qry.empty()) return out;

  const double r = 1.0 + eps;
  double xmin = kPosInf, xmax = kNegInf, ymin = kPosInf, ymax = kNegInf;
  for (int i : live) {
    xmin = std::min(xmin, src[i].x);
    xmax = std::max(xmax, src[i].x);
    ymin = std::min(ymin, src[i].y);
    ymax = std::max(ymax, src[i].y);
  }
  std::vector<int> qs;
  for (std::size_t i = 0; i < qry.size(); ++i) {
    const Point& q = qry[i];
    if (q.x >= xmin - r && q.x <= xmax + r && q.y >= ymin - r && q.y <= ymax + r)
      qs.push_back(static_cast<int>(i));
  }
  if (qs.empty()) return out;

  if (live.size() * qs.size() <= 256) {
    for (int qi : qs)
      for (int si : live)
        if (std::abs(src[si].x - qry[qi].x) <= r && std::abs(src[si].y - qry[qi].y) <= r)
          out[qi] = std::min(out[qi], w[si]);
    return out;
  }

  const int m = static_cast<int>(live.size());
  std::vector<int> by_y(live);
  std::sort(by_y.begin(), by_y.end(), [&](int a, int b) { return src[a].y < src[b].y; });
  std::vector<double> ys(m);
  std::vector<int> rank(src.size());
  for (int k = 0; k < m; ++k) {
    ys[k] = src[by_y[k]].y;
    rank[by_y[k]] = k;
  }
  std::vector<int> by_x(live);
  std::sort(by_x.begin(), by_x.end(), [&](int a, int b) { return src[a].x < src[b].x; });
  std::sort(qs.begin(), qs.end(), [&](int a, int b) { return qry[a].x < qry[b].x; });

  MinTree tree(m);
  std::size_t add = 0, del = 0;
  for (int qi : qs) {
    const Point& q = qry[qi];
    while (add < by_x.size() && src[by_x[add]].x <= q.x + r) {
      tree.set(rank[by_x[add]], w[by_x[add]]);
      ++add;
    }
    while (del < add && src[by_x[del]].x < q.x - r) {
      tree.set(rank[by_x[del]], kPosInf);
      ++del;
    }
    int lo = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), q.y - r) - ys.begin());
    int hi = static_cast<int>(std::upper_bound(ys.begin(), ys.end(), q.y + r) - ys.begin());
    if (lo < hi) out[qi] = tree.query(lo, hi);
  }
  return out;
}

std::vector<double> range_max_linf(const std::vector<Point>& src, const std::vector<double>& w,
                                   const std::vector<Point>& qry, double eps) {
  std::vector<double> neg(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
  auto out = range_min_linf(src, neg, qry, eps);
  for (double& v : out) v = -v;
  return out;
}

PartiteInstance transformed(const PartiteInstance& inst, const ComponentKey& key) {
  PartiteInstance t;
  const bool flip = key.variant == 2 || key.variant == 4;
  const bool rev = key.variant == 3 || key.variant == 4;
  t.levels.resize(inst.levels.size());
  for (std::size_t i = 0; i < inst.levels.size(); ++i) {
    auto& dst = t.levels[rev ? inst.levels.size() - 1 - i : i];
    dst.reserve(inst.levels[i].size());
    for (Point p : inst.levels[i]) {
      Point q{p.x - key.ax, p.y - key.ay};
      if (flip) q.y = -q.y;
      dst.push_back(q);
    }
  }
  return t;
}

void require_mu(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorKind::Parameter, "mu must lie in (0,1)");
}

// Keys whose trigger region for p_j (variants 1, 2) or p_{j+1} (variants 3, 4)
// contains at least one point.
std::vector<ComponentKey> candidate_keys(const PartiteInstance& inst, double mu) {
  const int delta = inst.delta();
  std::set<std::tuple<int, int, int, int>> seen;
  for (int j = 0; j < delta; ++j) {
    for (int side = 0; side < 2; ++side) {
      for (Point p : inst.levels[j + side]) {
        if (!(frac(p.x) > mu)) continue;
        int ax = static_cast<int>(std::floor(p.x));
        int ay = static_cast<int>(std::floor(p.y));
        const int v_low = side == 0 ? 1 : 3;
        // variant 1/3: y - ay in (0,1); variant 2/4: y - ay in (-1,0)
        const std::pair<int, int> cands[2] = {{ay, v_low}, {ay + 1, v_low + 1}};
        for (auto [cy, v] : cands) {
          if (std::abs(ax) > delta || std::abs(cy) > delta) continue;
          seen.insert({ax, cy, j, v});
        }
      }
    }
  }
  std::vector<ComponentKey> keys;
  for (auto [ax, ay, j, v] : seen) keys.push_back({ax, ay, j, v});
  return keys;
}

VectorMapPair assemble(const PartiteInstance& inst, const std::vector<ComponentKey>& keys,
                       double mu, const PredicateConfig& cfg, bool prune) {
  const std::size_t n0 = inst.levels.front().size(), nd = inst.levels.back().size();
  std::vector<ScalarMapPair> cols;
  VectorMapPair out;
  for (const auto& k : keys) {
    ScalarMapPair m = component_mapping(inst, k, mu, cfg);
    if (prune) {
      double lo = kPosInf, hi = kNegInf;
      for (double v : m.phi) lo = std::min(lo, v);
      for (double v : m.psi) hi = std::max(hi, v);
      if (lo >= hi) continue;
    }
    out.keys.push_back(k);
    cols.push_back(std::move(m));
  }
  out.dim = static_cast<int>(cols.size());
  out.phi.resize(n0 * out.dim);
  out.psi.resize(nd * out.dim);
  for (int c = 0; c < out.dim; ++c) {
    for (std::size_t i = 0; i < n0; ++i) out.phi[i * out.dim + c] = cols[c].phi[i];
    for (std::size_t i = 0; i < nd; ++i) out.psi[i * out.dim + c] = cols[c].psi[i];
  }
  return out;
}

}  // namespace

std::vector<ComponentKey> component_order(int delta) {
  std::vector<ComponentKey> keys;
  keys.reserve(highdim_dimension(delta));
  for (int ax = -delta; ax <= delta; ++ax)
    for (int ay = -delta; ay <= delta; ++ay)
      for (int j = 0; j < delta; ++j)
        for (int v = 1; v <= 4; ++v) keys.push_back({ax, ay, j, v});
  return keys;
}

ScalarMapPair chain_mapping_1d(const PartiteInstance& inst, int j, double mu,
                               const PredicateConfig& cfg) {
  const int delta = inst.delta();
  if (delta < 1) throw Error(ErrorKind::Parameter, "partite instance needs delta >= 1");
  if (j < 0 || j > delta - 1) throw Error(ErrorKind::Parameter, "j out of range");
  require_mu(mu);
  const double eps = cfg.epsilon;

  std::vector<double> w;
  for (Point p : inst.levels[j])
    w.push_back(p.x > mu && p.x < 1.0 && p.y > 0.0 && p.y < 1.0 ? p.y : kPosInf);
  for (int i = j - 1; i >= 0; --i) w = range_min_linf(inst.levels[i + 1], w, inst.levels[i], eps);
  ScalarMapPair out;
  out.phi = std::move(w);

  w.clear();
  for (Point p : inst.levels[j + 1]) {
    bool in_x = (p.x > 0.0 && p.x < mu) || (p.x > 1.0 && p.x < 1.0 + mu);
    w.push_back(in_x && p.y > -1.0 && p.y < 1.0 ? p.y : kNegInf);
  }
  for (int i = j + 2; i <= delta; ++i)
    w = range_max_linf(inst.levels[i - 1], w, inst.levels[i], eps);
  for (double& v : w)
    if (v > kNegInf) v += 1.0;
  out.psi = std::move(w);
  return out;
}

ScalarMapPair component_mapping(const PartiteInstance& inst, const ComponentKey& key, double mu,
                                const PredicateConfig& cfg) {
  const int delta = inst.delta();
  if (key.variant < 1 || key.variant > 4) throw Error(ErrorKind::Parameter, "variant must be 1..4");
  PartiteInstance t = transformed(inst, key);
  if (key.variant <= 2) return chain_mapping_1d(t, key.j, mu, cfg);
  ScalarMapPair r = chain_mapping_1d(t, delta - 1 - key.j, mu, cfg);
  ScalarMapPair out;
  out.phi.reserve(r.psi.size());
  out.psi.reserve(r.phi.size());
  for (double v : r.psi) out.phi.push_back(-v);
  for (double v : r.phi) out.psi.push_back(-v);
  return out;
}

VectorMapPair chain_mapping_highdim(const PartiteInstance& inst, double mu,
                                    const PredicateConfig& cfg) {
  require_mu(mu);
  if (inst.delta() < 1) throw Error(ErrorKind::Parameter, "partite instance needs delta >= 1");
  for (Point p : inst.levels[0])
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0))
      throw Error(ErrorKind::Parameter, "P_0 must lie inside (0,1)^2");
  return assemble(inst, component_order(inst.delta()), mu, cfg, false);
}

VectorMapPair chain_mapping_highdim_pruned(const PartiteInstance& inst, double mu,
                                           const PredicateConfig& cfg) {
  require_mu(mu);
  return assemble(inst, candidate_keys(inst, mu), mu, cfg, true);
}

bool dominates(const double* a, const double* b, int dim) {
  for (int c = 0; c < dim; ++c)
    if (!(a[c] >= b[c])) return false;
  return true;
}

std::optional<std::pair<int, int>> find_dominating_pair(const std::vector<double>& rows_a,
                                                        const std::vector<int>& subset_a,
                                                        const std::vector<double>& rows_b,
                                                        const std::vector<int>& subset_b,
                                                        int dim, DominanceStrategy strategy) {
  if (subset_a.empty() || subset_b.empty()) return std::nullopt;
  if (dim == 0) return std::make_pair(subset_a.front(), subset_b.front());
  if (strategy == DominanceStrategy::Auto)
    strategy = subset_a.size() * subset_b.size() <= 4096 ? DominanceStrategy::AllPairs
                                                         : DominanceStrategy::BitsetSweep;
  if (strategy == DominanceStrategy::AllPairs) {
    for (int p : subset_a)
      for (int q : subset_b)
        if (dominates(rows_a.data() + static_cast<std::size_t>(p) * dim,
                      rows_b.data() + static_cast<std::size_t>(q) * dim, dim))
          return std::make_pair(p, q);
    return std::nullopt;
  }

  // Per coordinate, the rows of A dominating a given b-row form a prefix of A
  // sorted descending; intersect those prefixes per b-row as bitsets.
  const std::size_t na = subset_a.size();
  const std::size_t words = (na + 63) / 64;
  std::vector<int> active(subset_b.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::uint64_t> acc(subset_b.size() * words, ~std::uint64_t{0});
  if (na % 64)
    for (std::size_t q = 0; q < subset_b.size(); ++q)
      acc[q * words + words - 1] = (std::uint64_t{1} << (na % 64)) - 1;
  std::vector<int> order_a(na);
  std::vector<std::uint64_t> running(words);
  for (int c = 0; c < dim && !active.empty(); ++c) {
    auto av = [&](int i) { return rows_a[static_cast<std::size_t>(subset_a[i]) * dim + c]; };
    auto bv = [&](int i) { return rows_b[static_cast<std::size_t>(subset_b[i]) * dim + c]; };
    std::iota(order_a.begin(), order_a.end(), 0);
    std::sort(order_a.begin(), order_a.end(), [&](int x, int y) { return av(x) > av(y); });
    std::sort(active.begin(), active.end(), [&](int x, int y) { return bv(x) > bv(y); });
    std::fill(running.begin(), running.end(), 0);
    std::size_t ptr = 0;
    std::vector<int> next;
    next.reserve(active.size());
    for (int q : active) {
      while (ptr < na && av(order_a[ptr]) >= bv(q)) {
        running[order_a[ptr] / 64] |= std::uint64_t{1} << (order_a[ptr] % 64);
        ++ptr;
      }
      bool any = false;
      std::uint64_t* row = acc.data() + static_cast<std::size_t>(q) * words;
      for (std::size_t wd = 0; wd < words; ++wd) {
        row[wd] &= running[wd];
        any |= row[wd] != 0;
      }
      if (any) next.push_back(q);
    }
    active.swap(next);
  }
  if (active.empty()) return std::nullopt;
  std::sort(active.begin(), active.end());
  int q = active.front();
  const std::uint64_t* row = acc.data() + static_cast<std::size_t>(q) * words;
  for (std::size_t wd = 0; wd < words; ++wd)
    if (row[wd]) return std::make_pair(subset_a[wd * 64 + std::countr_zero(row[wd])], subset_b[q]);
  return std::nullopt;
}

int analytic_branching(int n, int delta) {
  if (n <= 2) return 2;
  double ln = std::log2(static_cast<double>(n));
  double lln = std::max(0.0, std::log2(std::max(1.0, ln)));
  double e = std::sqrt(static_cast<double>(delta) * delta * delta * ln * lln);
  double b = e >= 31 ? static_cast<double>(n) : std::ceil(std::exp2(e));
  return static_cast<int>(std::clamp(b, 2.0, static_cast<double>(n)));
}

// The asymptotic choice clamps to n for every practical input, which makes
// each node compute n+1 mappings. Binary splitting is fastest at these sizes.
int default_branching(int /*n*/, int /*delta*/) { return 2; }

std::vector<double> compute_quantiles(const PartiteInstance& inst, int b) {
  if (b < 2) throw Error(ErrorKind::Parameter, "branching factor must be >= 2");
  std::vector<double> vals;
  for (const auto& lvl : inst.levels)
    for (Point p : lvl) vals.push_back(frac(p.x));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<double> mus{0.0};
  const std::size_t u = vals.size();
  const std::size_t parts = std::min<std::size_t>(b, u);
  for (std::size_t k = 1; k < parts; ++k) {
    std::size_t idx = k * u / parts;
    mus.push_back(0.5 * (vals[idx - 1] + vals[idx]));
  }
  mus.push_back(1.0);
  return mus;
}

namespace {

std::vector<std::uint64_t> bitset_or_adjacent(const std::vector<Point>& from,
                                              const std::vector<Point>& to,
                                              const std::vector<std::uint64_t>& reach_from,
                                              double eps) {
  const std::size_t words = (to.size() + 63) / 64;
  std::vector<std::uint64_t> out(words, 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!((reach_from[i / 64] >> (i % 64)) & 1)) continue;
    for (std::size_t k = 0; k < to.size(); ++k)
      if (linf(from[i], to[k]) <= 1.0 + eps) out[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return out;
}

struct Solver {
  const UnitSquareOptions& opt;
  int b;

  bool run(const RecursionNode& node_in) {
    const int delta = node_in.inst.delta();
    const auto& p0 = node_in.inst.levels.front();
    const auto& pd = node_in.inst.levels.back();
    if (p0.empty() || pd.empty()) return true;

    RecursionNode node = prune_columns(node_in);
    if (node.dim < 0) return true;  // no pair dominates at all

    std::size_t total = 0;
    for (const auto& l : node.inst.levels) total += l.size();
    if (static_cast<int>(total) <= opt.base_case_size)
      return partite_all_connected_direct(node, opt.cfg);

    std::vector<double> mus = compute_quantiles(node.inst, b);
    const int parts = static_cast<int>(mus.size()) - 1;
    if (parts < 2) return partite_all_connected_direct(node, opt.cfg);

    std::vector<VectorMapPair> maps(parts + 1);
    for (int k = 1; k < parts; ++k)
      maps[k] = chain_mapping_highdim_pruned(node.inst, mus[k], opt.cfg);
    for (int k : {0, parts}) {
      maps[k].dim = 0;
    }

    auto bucket = [&](Point p) {
      return static_cast<int>(std::upper_bound(mus.begin(), mus.end(), frac(p.x)) - mus.begin()) - 1;
    };
    std::vector<std::vector<int>> level_bucket(delta + 1);
    for (int i = 0; i <= delta; ++i)
      for (Point p : node.inst.levels[i]) level_bucket[i].push_back(bucket(p));

    for (int k = 0; k < parts; ++k) {
      const VectorMapPair& lo = maps[k];
      const VectorMapPair& hi = maps[k + 1];
      const int dim = node.dim + lo.dim + hi.dim;
      std::vector<double> fa = extend(node.f, node.dim, lo, hi, p0.size(), true);
      std::vector<double> gb = extend(node.g, node.dim, lo, hi, pd.size(), false);
      std::vector<int> inside0, outside_d, inside_d;
      for (std::size_t i = 0; i < p0.size(); ++i)
        if (level_bucket[0][i] == k) inside0.push_back(static_cast<int>(i));
      for (std::size_t i = 0; i < pd.size(); ++i)
        (level_bucket[delta][i] == k ? inside_d : outside_d).push_back(static_cast<int>(i));
      if (inside0.empty()) continue;
      if (find_dominating_pair(fa, inside0, gb, outside_d, dim, opt.dominance)) return false;
      if (inside_d.empty()) continue;

      RecursionNode child;
      child.dim = dim;
      child.inst.levels.resize(delta + 1);
      for (int i = 0; i <= delta; ++i)
        for (std::size_t t = 0; t < node.inst.levels[i].size(); ++t)
          if (level_bucket[i][t] == k) child.inst.levels[i].push_back(node.inst.levels[i][t]);
      child.f = select_rows(fa, dim, inside0);
      child.g = select_rows(gb, dim, inside_d);
      if (!run(child)) return false;
    }
    return true;
  }

  static std::vector<double> select_rows(const std::vector<double>& m, int dim,
                                         const std::vector<int>& rows) {
    std::vector<double> out;
    out.reserve(rows.size() * dim);
    for (int r : rows)
      out.insert(out.end(), m.begin() + static_cast<std::ptrdiff_t>(r) * dim,
                 m.begin() + static_cast<std::ptrdiff_t>(r + 1) * dim);
    return out;
  }

  static std::vector<double> extend(const std::vector<double>& base, int dim,
                                    const VectorMapPair& lo, const VectorMapPair& hi,
                                    std::size_t rows, bool phi_side) {
    const int out_dim = dim + lo.dim + hi.dim;
    std::vector<double> out(rows * out_dim);
    for (std::size_t r = 0; r < rows; ++r) {
      double* dst = out.data() + r * out_dim;
      std::copy_n(base.data() + r * dim, dim, dst);
      const double* a = phi_side ? lo.phi_row(r) : lo.psi_row(r);
      const double* b = phi_side ? hi.phi_row(r) : hi.psi_row(r);
      std::copy_n(a, lo.dim, dst + dim);
      std::copy_n(b, hi.dim, dst + dim + lo.dim);
    }
    return out;
  }

  // Drops coordinates satisfied by every pair; dim = -1 when some coordinate
  // is satisfied by no pair.
  static RecursionNode prune_columns(const RecursionNode& node) {
    const std::size_t n0 = node.inst.levels.front().size(), nd = node.inst.levels.back().size();
    std::vector<int> keep;
    for (int c = 0; c < node.dim; ++c) {
      double fmin = kPosInf, fmax = kNegInf, gmin = kPosInf, gmax = kNegInf;
      for (std::size_t i = 0; i < n0; ++i) {
        fmin = std::min(fmin, node.f[i * node.dim + c]);
        fmax = std::max(fmax, node.f[i * node.dim + c]);
      }
      for (std::size_t i = 0; i < nd; ++i) {
        gmin = std::min(gmin, node.g[i * node.dim + c]);
        gmax = std::max(gmax, node.g[i * node.dim + c]);
      }
      if (fmax < gmin) {
        RecursionNode none;
        none.dim = -1;
        return none;
      }
      if (fmin < gmax) keep.push_back(c);
    }
    RecursionNode out;
    out.inst = node.inst;
    out.dim = static_cast<int>(keep.size());
    out.f.reserve(n0 * keep.size());
    out.g.reserve(nd * keep.size());
    for (std::size_t i = 0; i < n0; ++i)
      for (int c : keep) out.f.push_back(node.f[i * node.dim + c]);
    for (std::size_t i = 0; i < nd; ++i)
      for (int c : keep) out.g.push_back(node.g[i * node.dim + c]);
    return out;
  }
};

void check_dims(const RecursionNode& node) {
  if (node.dim < 0 || node.f.size() != node.inst.levels.front().size() * node.dim ||
      node.g.size() != node.inst.levels.back().size() * node.dim)
    throw Error(ErrorKind::Parameter, "f and g must have the declared common dimension");
  if (node.inst.delta() < 1) throw Error(ErrorKind::Parameter, "partite instance needs delta >= 1");
}

}  // namespace

bool partite_all_connected_direct(const RecursionNode& node, const PredicateConfig& cfg) {
  check_dims(node);
  const auto& levels = node.inst.levels;
  const int delta = node.inst.delta();
  const auto& pd = levels.back();
  for (std::size_t s = 0; s < levels.front().size(); ++s) {
    std::vector<std::uint64_t> reach((levels.front().size() + 63) / 64, 0);
    reach[s / 64] |= std::uint64_t{1} << (s % 64);
    for (int i = 0; i < delta; ++i)
      reach = bitset_or_adjacent(levels[i], levels[i + 1], reach, cfg.epsilon);
    for (std::size_t q = 0; q < pd.size(); ++q) {
      if ((reach[q / 64] >> (q % 64)) & 1) continue;
      if (dominates(node.f.data() + s * node.dim, node.g.data() + q * node.dim, node.dim))
        return false;
    }
  }
  return true;
}

bool partite_all_connected(const RecursionNode& node, int b, const UnitSquareOptions& opt) {
  check_dims(node);
  if (b < 2) throw Error(ErrorKind::Parameter, "branching factor must be >= 2");
  Solver solver{opt, b};
  return solver.run(node);
}

bool partite_all_connected(const RecursionNode& node, const UnitSquareOptions& opt) {
  std::size_t total = 0;
  for (const auto& l : node.inst.levels) total += l.size();
  int b = opt.branching > 0 ? opt.branching
                            : default_branching(static_cast<int>(total), node.inst.delta());
  return partite_all_connected(node, b, opt);
}

bool unit_square_diam_at_most(const std::vector<Point>& centers, int delta,
                              const UnitSquareOptions& opt) {
  if (centers.empty()) throw Error(ErrorKind::Parameter, "empty point set");
  if (delta < 0) throw Error(ErrorKind::Parameter, "delta must be >= 0");
  if (delta == 0) return centers.size() == 1;

  std::map<std::pair<long long, long long>, std::vector<int>> cells;
  for (std::size_t i = 0; i < centers.size(); ++i)
    cells[{static_cast<long long>(std::floor(centers[i].x)),
           static_cast<long long>(std::floor(centers[i].y))}]
        .push_back(static_cast<int>(i));

  for (const auto& [cell, members] : cells) {
    const double ax = static_cast<double>(cell.first), ay = static_cast<double>(cell.second);
    RecursionNode node;
    node.inst.levels.resize(delta + 1);
    for (int i : members) node.inst.levels[0].push_back({centers[i].x - ax, centers[i].y - ay});
    for (int lvl = 1; lvl <= delta; ++lvl) {
      for (Point c : centers) {
        Point p{c.x - ax, c.y - ay};
        if (p.x >= -lvl && p.x <= lvl + 1 && p.y >= -lvl && p.y <= lvl + 1)
          node.inst.levels[lvl].push_back(p);
      }
    }
    // A point outside the widest window is more than delta hops from this cell.
    if (node.inst.levels[delta].size() < centers.size()) return false;
    if (!partite_all_connected(node, opt)) return false;
  }
  return true;
}

}  // namespace geodiam
