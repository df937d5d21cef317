#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "geodiam/unit_disk.hpp"

namespace geodiam {

namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kRadiusTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double x) { return x > kRadiusTol ? 1 : (x < -kRadiusTol ? -1 : 0); }

Point box_center(const Box& b) { return {0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)}; }

double point_box_distance(Point p, const Box& b) {
  double dx = std::max({b.xmin - p.x, 0.0, p.x - b.xmax});
  double dy = std::max({b.ymin - p.y, 0.0, p.y - b.ymax});
  return std::hypot(dx, dy);
}

double point_box_max_distance(Point p, const Box& b) {
  double dx = std::max(std::abs(p.x - b.xmin), std::abs(p.x - b.xmax));
  double dy = std::max(std::abs(p.y - b.ymin), std::abs(p.y - b.ymax));
  return std::hypot(dx, dy);
}

// Does the ray from `from` through `through` meet the closed box?
bool ray_hits_box(Point from, Point through, const Box& b) {
  Point d = through - from;
  double t0 = 0.0, t1 = kInf;
  auto slab = [&](double o, double dir, double lo, double hi) {
    if (std::abs(dir) < 1e-300) return o >= lo && o <= hi;
    double a = (lo - o) / dir, c = (hi - o) / dir;
    if (a > c) std::swap(a, c);
    t0 = std::max(t0, a);
    t1 = std::min(t1, c);
    return t0 <= t1;
  };
  return slab(from.x, d.x, b.xmin, b.xmax) && slab(from.y, d.y, b.ymin, b.ymax);
}

Envelope clip(const Envelope& e, double lo, double hi) {
  Envelope out;
  for (const RadialPiece& p : e) {
    double a = std::max(p.lo, lo), b = std::min(p.hi, hi);
    if (b > a || (out.empty() && b == a && lo == hi)) out.push_back({a, b, p.disk});
  }
  if (!out.empty()) {
    out.front().lo = lo;
    out.back().hi = hi;
  }
  return out;
}

void push_piece(Envelope& out, double lo, double hi, int disk) {
  if (hi <= lo) return;
  if (!out.empty() && out.back().disk == disk) {
    out.back().hi = hi;
    return;
  }
  out.push_back({lo, hi, disk});
}

}  // namespace

// ---------------------------------------------------------------------------
// Cones and cell pairs

ConeRange ConeRange::enclosing(Point apex, const Box& box) {
  if (point_box_distance(apex, box) <= 0.0)
    throw Error(ErrorKind::Parameter, "ConeRange: apex lies in the box");
  ConeRange c;
  c.apex = apex;
  c.axis = angle_of(apex, box_center(box));
  const Point corners[4] = {{box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmax, box.ymax}, {box.xmin, box.ymax}};
  c.lo = kPi;
  c.hi = -kPi;
  for (Point q : corners) {
    double r = c.relative_angle_of(q);
    c.lo = std::min(c.lo, r);
    c.hi = std::max(c.hi, r);
  }
  return c;
}

double ConeRange::relative(double absolute_angle) const { return std::remainder(absolute_angle - axis, kTwoPi); }

double box_distance(const Box& a, const Box& b) {
  double dx = std::max({a.xmin - b.xmax, 0.0, b.xmin - a.xmax});
  double dy = std::max({a.ymin - b.ymax, 0.0, b.ymin - a.ymax});
  return std::hypot(dx, dy);
}

double max_grid_delta() { return -std::sqrt(2.0) + std::sqrt(2.0 + 2.0 / 9.0); }

CellPairContext CellPairContext::make(const Box& a, const Box& b, double delta) {
  if (!(delta > 0.0) || delta > max_grid_delta() + 1e-15)
    throw Error(ErrorKind::Parameter, "CellPairContext: grid side outside (0, max_grid_delta()]");
  double d = box_distance(a, b);
  if (d < 1.0 - 2.0 * std::sqrt(2.0) * delta - 1e-12 || d > 2.0 + 1e-12)
    throw Error(ErrorKind::Parameter, "CellPairContext: cell distance outside [1 - 2*sqrt(2)*delta, 2]");
  CellPairContext ctx;
  ctx.cell_a = a;
  ctx.cell_b = b;
  ctx.delta = delta;
  Point ca = box_center(a), cb = box_center(b);
  ctx.origin = ca + (1.0 / (3.0 * dist(ca, cb))) * (cb - ca);
  ctx.cone = ConeRange::enclosing(ctx.origin, b);
  return ctx;
}

// ---------------------------------------------------------------------------
// Canonical family

CanonicalFamily::CanonicalFamily(std::vector<Point> centers, const CellPairContext& ctx, Domain domain,
                                 const PredicateConfig& cfg)
    : ctx_(ctx), cfg_(cfg), centers_(std::move(centers)) {
  if (domain == Domain::Cone) {
    dom_lo_ = ctx_.cone.lo;
    dom_hi_ = ctx_.cone.hi;
  } else {
    dom_lo_ = -kPi;
    dom_hi_ = kPi;
  }
  for (Point c : centers_) {
    if (dist(c, ctx_.origin) > 1.0 + cfg_.epsilon)
      throw Error(ErrorKind::StabbingViolated, "CanonicalFamily: disk does not contain the origin");
    offsets_.push_back(c - ctx_.origin);
  }
  const int m = static_cast<int>(centers_.size());
  if (m == 0) return;
  order_.resize(m);
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * m);
  build(0, m, 0);
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
    for (int k = 1; k < static_cast<int>(nodes_[i].env.size()); ++k) lambda_.push_back({nodes_[i].env[k].lo, i, k});
  std::sort(lambda_.begin(), lambda_.end(), [](const LambdaEntry& a, const LambdaEntry& b) {
    return a.angle != b.angle ? a.angle < b.angle : a.subset < b.subset;
  });
}

int CanonicalFamily::build(int begin, int end, int depth) {
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  Box box{centers_[order_[begin]].x, centers_[order_[begin]].y, centers_[order_[begin]].x, centers_[order_[begin]].y};
  for (int i = begin; i < end; ++i) {
    Point c = centers_[order_[i]];
    box = {std::min(box.xmin, c.x), std::min(box.ymin, c.y), std::max(box.xmax, c.x), std::max(box.ymax, c.y)};
  }
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  nodes_[id].box = box;
  if (end - begin == 1) {
    nodes_[id].env = single(order_[begin]);
    return id;
  }
  bool split_x = (box.xmax - box.xmin) >= (box.ymax - box.ymin);
  (void)depth;
  int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int a, int b) {
    return split_x ? centers_[a].x < centers_[b].x : centers_[a].y < centers_[b].y;
  });
  int l = build(begin, mid, depth + 1);
  int r = build(mid, end, depth + 1);
  nodes_[id].left = l;
  nodes_[id].right = r;
  nodes_[id].env = combine(nodes_[l].env, nodes_[r].env, true);
  return id;
}

Envelope CanonicalFamily::single(int disk) const { return {{dom_lo_, dom_hi_, disk}}; }

std::vector<int> CanonicalFamily::subset(int i) const {
  std::vector<int> out(order_.begin() + nodes_[i].begin, order_.begin() + nodes_[i].end);
  std::sort(out.begin(), out.end());
  return out;
}

void CanonicalFamily::query(int node, Point p, std::vector<int>& out) const {
  const Node& nd = nodes_[node];
  const double reach = 1.0 + cfg_.epsilon;
  if (point_box_distance(p, nd.box) > reach) return;
  if (nd.left < 0) {
    if (dist(p, centers_[order_[nd.begin]]) <= reach) out.push_back(node);
    return;
  }
  if (point_box_max_distance(p, nd.box) <= reach) {
    out.push_back(node);
    return;
  }
  query(nd.left, p, out);
  query(nd.right, p, out);
}

FlowerRef CanonicalFamily::flower(Point p) const {
  FlowerRef f{p, {}};
  if (!nodes_.empty()) query(0, p, f.subsets);
  return f;
}

std::vector<int> CanonicalFamily::members(const FlowerRef& f) const {
  std::vector<int> out;
  for (int i : f.subsets) {
    auto s = subset(i);
    out.insert(out.end(), s.begin(), s.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double CanonicalFamily::radius(int disk, double rel) const {
  Point u = unit_vector(ctx_.cone.axis + rel);
  Point v = offsets_[disk];
  double b = dot(v, u);
  return b + std::sqrt(std::max(0.0, b * b - dot(v, v) + 1.0));
}

int CanonicalFamily::crossings_into(int d1, int d2, double lo, double hi, double out[2]) const {
  Point c1 = centers_[d1], c2 = centers_[d2];
  Point dc = c2 - c1;
  double dd = dc.x * dc.x + dc.y * dc.y;
  if (dd < 1e-30 || dd > 4.0) return 0;
  double d = std::sqrt(dd);
  double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * dd));
  Point mid = 0.5 * (c1 + c2);
  Point perp{-dc.y / d, dc.x / d};
  int n = 0;
  for (Point x : {mid + h * perp, mid - h * perp}) {
    double r = ctx_.cone.relative_angle_of(x);
    if (r > lo + kAngleTol && r < hi - kAngleTol) out[n++] = r;
  }
  if (n == 2 && out[1] < out[0]) std::swap(out[0], out[1]);
  return n;
}

std::vector<double> CanonicalFamily::crossings(int d1, int d2, double lo, double hi) const {
  double xs[2];
  int n = crossings_into(d1, d2, lo, hi, xs);
  return std::vector<double>(xs, xs + n);
}

Envelope CanonicalFamily::combine(const Envelope& a, const Envelope& b, bool take_max) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Envelope out;
  out.reserve(a.size() + b.size() + 2);
  std::size_t i = 0, j = 0;
  double cur = std::max(a.front().lo, b.front().lo);
  const double end = std::min(a.back().hi, b.back().hi);
  while (i < a.size() && j < b.size()) {
    double e = std::min(a[i].hi, b[j].hi);
    if (e > cur) {
      int d1 = a[i].disk, d2 = b[j].disk;
      if (d1 == d2) {
        push_piece(out, cur, e, d1);
      } else {
        double xs[2];
        int nx = crossings_into(d1, d2, cur, e, xs);
        double s = cur;
        for (int k = 0; k <= nx; ++k) {
          double t = k < nx ? xs[k] : e;
          double mid = 0.5 * (s + t);
          double r1 = radius(d1, mid), r2 = radius(d2, mid);
          int pick;
          if (std::abs(r1 - r2) <= kRadiusTol) pick = std::min(d1, d2);
          else pick = (r1 > r2) == take_max ? d1 : d2;
          push_piece(out, s, t, pick);
          s = t;
        }
      }
      cur = e;
    }
    if (a[i].hi <= e) ++i;
    if (j < b.size() && b[j].hi <= e) ++j;
    if (cur >= end) break;
  }
  if (out.empty()) out.push_back({cur, cur, a.front().disk});
  return out;
}

const RadialPiece& CanonicalFamily::piece_at(int i, double rel) const {
  const Envelope& e = nodes_[i].env;
  auto it = std::upper_bound(e.begin(), e.end(), rel, [](double x, const RadialPiece& p) { return x < p.lo; });
  if (it == e.begin()) return e.front();
  return *(it - 1);
}

Envelope CanonicalFamily::flower_envelope(const FlowerRef& f, double lo, double hi) const {
  Envelope out;
  for (int i : f.subsets) {
    Envelope c = clip(nodes_[i].env, lo, hi);
    out = out.empty() ? c : combine(out, c, true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ray shooting

namespace {

struct FlowerEval {
  double r = -1.0;
  int disk = -1;
};

FlowerEval flower_radius(const CanonicalFamily& fam, const FlowerRef& f, double rel) {
  FlowerEval best;
  for (int i : f.subsets) {
    int d = fam.piece_at(i, rel).disk;
    double r = fam.radius(d, rel);
    if (r > best.r) best = {r, d};
  }
  return best;
}

Point boundary_point(const CanonicalFamily& fam, const FlowerRef& f, double rel) {
  double r = flower_radius(fam, f, rel).r;
  return fam.origin() + r * unit_vector(fam.context().cone.absolute(rel));
}

}  // namespace

RayHit flower_ray_shoot(const CanonicalFamily& family, const FlowerRef& fp, const Ray& r) {
  if (dist(r.origin, family.origin()) > 1e-9)
    throw Error(ErrorKind::Parameter, "flower_ray_shoot: ray must start at the origin");
  if (!(dist(fp.point, family.origin()) < 0.5))
    throw Error(ErrorKind::Precondition, "flower_ray_shoot: |o, p| must be below 1/2");
  if (fp.subsets.empty()) throw Error(ErrorKind::EmptyFlower, "flower_ray_shoot: empty flower");
  double rel = family.context().cone.relative(r.angle);
  if (rel < family.domain_lo() - 1e-9 || rel > family.domain_hi() + 1e-9)
    throw Error(ErrorKind::Parameter, "flower_ray_shoot: ray outside the family's angular domain");
  rel = std::clamp(rel, family.domain_lo(), family.domain_hi());
  RayHit hit;
  hit.distance = -1.0;
  std::vector<std::pair<double, int>> cand;
  for (int i : fp.subsets) {
    const Envelope& env = family.boundary(i);
    const RadialPiece& pc = family.piece_at(i, rel);
    cand.push_back({family.radius(pc.disk, rel), pc.disk});
    // At a vertex the preceding arc is incident as well.
    std::size_t k = static_cast<std::size_t>(&pc - env.data());
    if (k > 0 && std::abs(pc.lo - rel) <= kAngleTol) cand.push_back({family.radius(env[k - 1].disk, rel), env[k - 1].disk});
  }
  for (auto [d, disk] : cand) hit.distance = std::max(hit.distance, d);
  for (auto [d, disk] : cand)
    if (hit.distance - d <= kRadiusTol) hit.disks.push_back(disk);
  std::sort(hit.disks.begin(), hit.disks.end());
  hit.disks.erase(std::unique(hit.disks.begin(), hit.disks.end()), hit.disks.end());
  hit.point = r.origin + hit.distance * r.direction();
  return hit;
}

// ---------------------------------------------------------------------------
// Pairwise boundary

namespace {

struct SignHull {
  double neg_lo = kInf, neg_hi = -kInf, pos_lo = kInf, pos_hi = -kInf;
  void add(int s, double lo, double hi) {
    if (s < 0) {
      neg_lo = std::min(neg_lo, lo);
      neg_hi = std::max(neg_hi, hi);
    } else if (s > 0) {
      pos_lo = std::min(pos_lo, lo);
      pos_hi = std::max(pos_hi, hi);
    }
  }
  bool has_neg() const { return neg_lo <= neg_hi; }
  bool has_pos() const { return pos_lo <= pos_hi; }
};

// Signs of r_p - r_q over [a, b] from the explicit boundaries.
void sweep_signs(const CanonicalFamily& fam, const FlowerRef& fp, const FlowerRef& fq, double a, double b,
                 SignHull& hull) {
  Envelope ep = fam.flower_envelope(fp, a, b), eq = fam.flower_envelope(fq, a, b);
  std::size_t i = 0, j = 0;
  double cur = a;
  while (i < ep.size() && j < eq.size()) {
    double e = std::min(ep[i].hi, eq[j].hi);
    if (e > cur) {
      int d1 = ep[i].disk, d2 = eq[j].disk;
      if (d1 != d2) {
        auto xs = fam.crossings(d1, d2, cur, e);
        double s = cur;
        for (std::size_t k = 0; k <= xs.size(); ++k) {
          double t = k < xs.size() ? xs[k] : e;
          double mid = 0.5 * (s + t);
          hull.add(sign_of(fam.radius(d1, mid) - fam.radius(d2, mid)), s, t);
          s = t;
        }
      }
      cur = e;
    }
    if (ep[i].hi <= e) ++i;
    if (eq[j].hi <= e) ++j;
  }
}

}  // namespace

PairwiseBoundary pairwise_boundary_in_cone(const CanonicalFamily& family, const FlowerRef& fp,
                                           const FlowerRef& fq, const ConeRange& cone) {
  const CellPairContext& ctx = family.context();
  if (dist(cone.apex, ctx.origin) > 1e-9 || std::abs(cone.lo - ctx.cone.lo) > 1e-12 ||
      std::abs(cone.hi - ctx.cone.hi) > 1e-12)
    throw Error(ErrorKind::Parameter, "pairwise_boundary_in_cone: cone differs from the family's context");
  if (fp.subsets.empty() || fq.subsets.empty())
    throw Error(ErrorKind::EmptyFlower, "pairwise_boundary_in_cone: empty flower");
  PairwiseBoundary out;
  if (fp.subsets == fq.subsets || fp.point == fq.point) return out;

  // Line pq meets B: the flower farther from B is contained in the other one
  // within the cone.
  if (ray_hits_box(fp.point, fq.point, ctx.cell_b)) return out;
  if (ray_hits_box(fq.point, fp.point, ctx.cell_b)) {
    out.before = out.after = FlowerSide::Q;
    return out;
  }

  auto f = [&](double rel) {
    return sign_of(flower_radius(family, fp, rel).r - flower_radius(family, fq, rel).r);
  };
  const int s_lo = f(cone.lo), s_hi = f(cone.hi);
  if (s_lo != 0 && s_lo == s_hi) {
    out.before = out.after = s_lo < 0 ? FlowerSide::P : FlowerSide::Q;
    return out;
  }
  SignHull hull;
  double a = cone.lo, b = cone.hi;
  if (s_lo != 0 && s_hi != 0) {
    // Opposite signs at the cone's ends: bisect over the vertex array.
    const auto& lam = family.lambda();
    auto first = std::upper_bound(lam.begin(), lam.end(), a, [](double x, const LambdaEntry& e) { return x < e.angle; });
    auto last = std::lower_bound(lam.begin(), lam.end(), b, [](const LambdaEntry& e, double x) { return e.angle < x; });
    std::ptrdiff_t lo_i = first - lam.begin(), hi_i = last - lam.begin();
    while (lo_i < hi_i) {
      std::ptrdiff_t mid = (lo_i + hi_i) / 2;
      double y = lam[mid].angle;
      int s = f(y);
      if (s == s_lo) {
        a = y;
        lo_i = mid + 1;
      } else if (s == s_hi) {
        b = y;
        hi_i = mid;
      } else {
        break;
      }
    }
    hull.add(s_lo, cone.lo, a);
    hull.add(s_hi, b, cone.hi);
  }
  sweep_signs(family, fp, fq, a, b, hull);

  if (!hull.has_pos()) return out;  // F_p is never strictly outside F_q
  if (!hull.has_neg()) {
    out.before = out.after = FlowerSide::Q;
    return out;
  }
  out.whole = false;
  if (hull.neg_hi <= hull.pos_lo + kAngleTol) {
    out.before = FlowerSide::P;
    out.after = FlowerSide::Q;
    out.angle = hull.neg_hi;
  } else if (hull.pos_hi <= hull.neg_lo + kAngleTol) {
    out.before = FlowerSide::Q;
    out.after = FlowerSide::P;
    out.angle = hull.pos_hi;
  } else {
    throw Error(ErrorKind::Precondition,
                "pairwise_boundary_in_cone: flower boundaries alternate more than once inside the cone");
  }
  double r = std::min(flower_radius(family, fp, out.angle).r, flower_radius(family, fq, out.angle).r);
  out.breakpoint = ctx.origin + r * unit_vector(cone.absolute(out.angle));
  return out;
}

// ---------------------------------------------------------------------------
// Chains

const ChainEntry& BoundaryChain::entry_at(double rel) const {
  if (entries.empty()) throw Error(ErrorKind::Parameter, "BoundaryChain: empty chain");
  auto it = std::upper_bound(entries.begin(), entries.end(), rel,
                             [](double x, const ChainEntry& e) { return x < e.lo; });
  if (it == entries.begin()) return entries.front();
  return *(it - 1);
}

namespace {

void fill_points(const CanonicalFamily& fam, const std::vector<FlowerRef>& flowers, BoundaryChain& c) {
  for (ChainEntry& e : c.entries) {
    e.a = boundary_point(fam, flowers[e.flower], e.lo);
    e.b = boundary_point(fam, flowers[e.flower], e.hi);
  }
}

void push_entry(std::vector<ChainEntry>& out, int flower, double lo, double hi) {
  if (hi <= lo) return;
  if (!out.empty() && out.back().flower == flower) {
    out.back().hi = hi;
    return;
  }
  out.push_back({flower, lo, hi, {}, {}});
}

}  // namespace

BoundaryChain leaf_chain(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers, int flower) {
  if (flower < 0 || flower >= static_cast<int>(flowers.size()))
    throw Error(ErrorKind::Parameter, "leaf_chain: flower index out of range");
  const ConeRange& cone = family.context().cone;
  BoundaryChain c{&family, {{flower, cone.lo, cone.hi, {}, {}}}};
  fill_points(family, flowers, c);
  return c;
}

BoundaryChain sweep_merge(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers,
                          const BoundaryChain& c1, const BoundaryChain& c2, const ConeRange& cone) {
  if (c1.family != &family || c2.family != &family)
    throw Error(ErrorKind::Parameter, "sweep_merge: chains belong to a different context");
  if (c1.entries.empty() || c2.entries.empty()) throw Error(ErrorKind::Parameter, "sweep_merge: empty chain");
  std::map<std::pair<int, int>, PairwiseBoundary> cache;
  BoundaryChain out{&family, {}};
  std::size_t i = 0, j = 0;
  double cur = cone.lo;
  while (i < c1.entries.size() && j < c2.entries.size()) {
    const ChainEntry& x = c1.entries[i];
    const ChainEntry& y = c2.entries[j];
    double e = std::min(x.hi, y.hi);
    if (e > cur) {
      int p = x.flower, q = y.flower;
      if (p == q) {
        push_entry(out.entries, p, cur, e);
      } else {
        auto key = std::make_pair(p, q);
        auto it = cache.find(key);
        if (it == cache.end())
          it = cache.emplace(key, pairwise_boundary_in_cone(family, flowers[p], flowers[q], cone)).first;
        const PairwiseBoundary& d = it->second;
        auto who = [&](FlowerSide s) { return s == FlowerSide::P ? p : q; };
        if (d.whole || d.angle <= cur || d.angle >= e) {
          push_entry(out.entries, who(d.side_at(0.5 * (cur + e))), cur, e);
        } else {
          push_entry(out.entries, who(d.before), cur, d.angle);
          push_entry(out.entries, who(d.after), d.angle, e);
        }
      }
      cur = e;
    }
    if (x.hi <= e) ++i;
    if (y.hi <= e) ++j;
  }
  if (out.entries.empty()) out.entries.push_back({c1.entries.front().flower, cone.lo, cone.hi, {}, {}});
  fill_points(family, flowers, out);
  return out;
}

BoundaryChain intersect_flowers(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers) {
  if (flowers.empty()) throw Error(ErrorKind::Parameter, "intersect_flowers: no flowers");
  std::vector<BoundaryChain> level;
  for (int i = 0; i < static_cast<int>(flowers.size()); ++i) level.push_back(leaf_chain(family, flowers, i));
  const ConeRange& cone = family.context().cone;
  while (level.size() > 1) {
    std::vector<BoundaryChain> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      next.push_back(sweep_merge(family, flowers, level[i], level[i + 1], cone));
    if (level.size() % 2) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

}  // namespace geodiam
