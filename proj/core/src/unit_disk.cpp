#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "geodiam/unit_disk.hpp"

namespace geodiam {

namespace {

double point_box_distance(Point p, const Box& b) {
  double dx = std::max({b.xmin - p.x, 0.0, p.x - b.xmax});
  double dy = std::max({b.ymin - p.y, 0.0, p.y - b.ymax});
  return std::hypot(dx, dy);
}

bool in_box(Point p, const Box& b, double tol) {
  return p.x >= b.xmin - tol && p.x <= b.xmax + tol && p.y >= b.ymin - tol && p.y <= b.ymax + tol;
}

// Uniform grid with unit cells for "points within distance 1" queries.
class UnitBuckets {
 public:
  explicit UnitBuckets(const std::vector<Point>& pts) : pts_(pts) {
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) cells_[key(cell(pts[i].x), cell(pts[i].y))].push_back(i);
  }
  template <class F>
  void near(Point p, double reach, F&& f) const {
    find(p, reach, [&](int i) {
      f(i);
      return false;
    });
  }
  // First point within `reach` of p accepted by `pred` (reach <= 1), or -1.
  template <class F>
  int find(Point p, double reach, F&& pred) const {
    long long cx = cell(p.x), cy = cell(p.y);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(key(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int i : it->second)
          if (dist(p, pts_[i]) <= reach && pred(i)) return i;
      }
    return -1;
  }

 private:
  static long long cell(double v) { return static_cast<long long>(std::floor(v)); }
  static long long key(long long x, long long y) { return x * 4'000'037LL + y; }
  const std::vector<Point>& pts_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

}  // namespace

bool check_cell_pair(const CellPairContext& ctx, const std::vector<Point>& pts_a, const std::vector<Point>& pts_b,
                     const std::vector<Point>& disks, const PredicateConfig& cfg) {
  if (pts_a.empty() || pts_b.empty()) return true;
  for (Point p : pts_a)
    if (!in_box(p, ctx.cell_a, 1e-9)) throw Error(ErrorKind::Parameter, "check_cell_pair: point outside cell A");
  for (Point q : pts_b)
    if (!in_box(q, ctx.cell_b, 1e-9)) throw Error(ErrorKind::Parameter, "check_cell_pair: point outside cell B");
  CanonicalFamily family(disks, ctx, CanonicalFamily::Domain::Cone, cfg);
  std::vector<FlowerRef> flowers;
  flowers.reserve(pts_a.size());
  for (Point p : pts_a) {
    flowers.push_back(family.flower(p));
    if (flowers.back().subsets.empty()) return false;  // F_p is empty
  }
  BoundaryChain gamma = intersect_flowers(family, flowers);
  const ConeRange& cone = ctx.cone;
  for (Point q : pts_b) {
    double rel = std::clamp(cone.relative_angle_of(q), cone.lo, cone.hi);
    const ChainEntry& e = gamma.entry_at(rel);
    RayHit hit = flower_ray_shoot(family, flowers[e.flower], Ray(ctx.origin, cone.absolute(rel)));
    if (dist(ctx.origin, q) > hit.distance + cfg.epsilon) return false;
  }
  return true;
}

bool decide_diam2(const std::vector<Point>& centers, const Diam2Options& opt, Diam2Stats* stats) {
  if (centers.empty()) throw Error(ErrorKind::Precondition, "decide_diam2: no points");
  const double delta = opt.delta;
  if (!(delta > 0.0) || delta > max_grid_delta())
    throw Error(ErrorKind::Parameter, "decide_diam2: grid side outside (0, max_grid_delta()]");
  if (centers.size() == 1) return true;

  // Radius-1 disks meet iff their centers are within 2; halving the
  // coordinates gives the point graph with edges at distance <= 1.
  PredicateConfig cfg = opt.predicate;
  cfg.epsilon = 0.5 * opt.predicate.epsilon;
  std::vector<Point> pts;
  pts.reserve(centers.size());
  for (Point c : centers) pts.push_back(0.5 * c);

  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (Point p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (xmax - xmin > 3.0 + cfg.epsilon || ymax - ymin > 3.0 + cfg.epsilon) return false;

  struct Cell {
    Box box;
    std::vector<int> members;
  };
  std::map<std::pair<long long, long long>, int> index;
  std::vector<Cell> cells;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    long long cx = static_cast<long long>(std::floor((pts[i].x - xmin) / delta));
    long long cy = static_cast<long long>(std::floor((pts[i].y - ymin) / delta));
    auto [it, fresh] = index.emplace(std::make_pair(cx, cy), static_cast<int>(cells.size()));
    if (fresh) {
      Box b{xmin + cx * delta, ymin + cy * delta, xmin + (cx + 1) * delta, ymin + (cy + 1) * delta};
      cells.push_back({b, {}});
    }
    cells[it->second].members.push_back(i);
  }
  if (stats) stats->cells = cells.size();

  const double near = 1.0 - 2.0 * std::sqrt(2.0) * delta;
  std::vector<std::pair<double, std::pair<int, int>>> todo;
  for (int a = 0; a < static_cast<int>(cells.size()); ++a)
    for (int b = a; b < static_cast<int>(cells.size()); ++b) {
      double d = box_distance(cells[a].box, cells[b].box);
      if (d <= near) {
        if (stats) ++stats->pairs_adjacent;
        continue;
      }
      if (d > 2.0 + cfg.epsilon) return false;
      todo.push_back({d, {a, b}});
    }
  // Far pairs first: they are the likeliest to fail.
  std::sort(todo.begin(), todo.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  UnitBuckets buckets(pts);
  const double reach = 1.0 + cfg.epsilon;
  std::vector<int> stamp(pts.size(), -1);
  std::unordered_map<int, std::vector<int>> reach_of;  // disks containing a point of the cell
  auto disks_near = [&](int c) -> const std::vector<int>& {
    auto it = reach_of.find(c);
    if (it != reach_of.end()) return it->second;
    std::vector<int> out;
    for (int p : cells[c].members)
      buckets.near(pts[p], reach, [&](int i) {
        if (stamp[i] != c) {
          stamp[i] = c;
          out.push_back(i);
        }
      });
    std::sort(out.begin(), out.end());
    return reach_of.emplace(c, std::move(out)).first->second;
  };

  auto witnessed = [&](const Box& x, const Box& y) {
    // A single point within distance 1 of both cells' corners is a common
    // neighbour of every pair across them.
    const Point corners[8] = {{x.xmin, x.ymin}, {x.xmax, x.ymin}, {x.xmin, x.ymax}, {x.xmax, x.ymax},
                              {y.xmin, y.ymin}, {y.xmax, y.ymin}, {y.xmin, y.ymax}, {y.xmax, y.ymax}};
    Point cx{0.5 * (x.xmin + x.xmax), 0.5 * (x.ymin + x.ymax)}, cy{0.5 * (y.xmin + y.xmax), 0.5 * (y.ymin + y.ymax)};
    double half = 0.5 * dist(cx, cy);
    if (half >= 1.0) return false;
    return buckets.find(0.5 * (cx + cy), std::sqrt(1.0 - half * half), [&](int i) {
      for (Point c : corners)
        if (dist2(pts[i], c) > 1.0) return false;
      return true;
    }) >= 0;
  };

  for (const auto& [d, ab] : todo) {
    // The flowers are built for the cell with fewer points.
    auto [a, b] = ab;
    if (opt.witness_pruning && witnessed(cells[a].box, cells[b].box)) {
      if (stats) ++stats->pairs_witnessed;
      continue;
    }
    if (cells[a].members.size() > cells[b].members.size()) std::swap(a, b);
    const Cell& A = cells[a];
    const Cell& B = cells[b];
    std::vector<Point> disks;
    for (int i : disks_near(a))
      if (point_box_distance(pts[i], B.box) <= reach) disks.push_back(pts[i]);
    std::vector<Point> pa, pb;
    for (int i : A.members) pa.push_back(pts[i]);
    for (int i : B.members) pb.push_back(pts[i]);
    CellPairContext ctx = CellPairContext::make(A.box, B.box, delta);
    if (stats) ++stats->pairs_checked;
    if (!check_cell_pair(ctx, pa, pb, disks, cfg)) return false;
  }
  return true;
}

}  // namespace geodiam
