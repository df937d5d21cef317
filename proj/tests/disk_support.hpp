#pragma once

// Brute-force helpers for unit-disk flowers in the point-graph scale: every
// disk has radius 1 and F_p is the union of the disks containing p.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "geodiam/unit_disk.hpp"

namespace disk_support {

using geodiam::Box;
using geodiam::CellPairContext;
using geodiam::Point;

inline double point_box_distance(Point p, const Box& b) {
  double dx = std::max({b.xmin - p.x, 0.0, p.x - b.xmax});
  double dy = std::max({b.ymin - p.y, 0.0, p.y - b.ymax});
  return std::hypot(dx, dy);
}

inline Point random_in(const Box& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(b.xmin, b.xmax), uy(b.ymin, b.ymax);
  return {ux(rng), uy(rng)};
}

// Cell A = [0, delta]^2 and a grid cell B at an admissible distance of at
// most max_gap, so that disks meeting both cells are not too rare to sample.
inline CellPairContext random_context(std::mt19937_64& rng, double delta = geodiam::kDefaultGridDelta,
                                      double max_gap = 1.95) {
  const int reach = static_cast<int>(std::ceil(2.0 / delta)) + 1;
  std::uniform_int_distribution<int> off(-reach, reach);
  const Box a{0.0, 0.0, delta, delta};
  for (;;) {
    int i = off(rng), j = off(rng);
    Box b{i * delta, j * delta, (i + 1) * delta, (j + 1) * delta};
    double d = geodiam::box_distance(a, b);
    if (d >= 1.0 - 2.0 * std::sqrt(2.0) * delta && d <= max_gap) return CellPairContext::make(a, b, delta);
  }
}

// Centers of m unit disks, uniform among those meeting both cells.
inline std::vector<Point> random_disks(const CellPairContext& ctx, int m, std::mt19937_64& rng) {
  const Box& a = ctx.cell_a;
  const Box grown{a.xmin - 1.0, a.ymin - 1.0, a.xmax + 1.0, a.ymax + 1.0};
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < m) {
    Point c = random_in(grown, rng);
    if (point_box_distance(c, a) <= 1.0 && point_box_distance(c, ctx.cell_b) <= 1.0) out.push_back(c);
  }
  return out;
}

inline std::vector<Point> containing(const std::vector<Point>& disks, Point p, double eps = 1e-9) {
  std::vector<Point> out;
  for (Point c : disks)
    if (geodiam::dist(c, p) <= 1.0 + eps) out.push_back(c);
  return out;
}

// Parameters t >= 0 where the ray o + t*u meets the unit circle around c.
inline int ray_circle(Point o, double theta, Point c, double t[2]) {
  Point u{std::cos(theta), std::sin(theta)};
  Point v{c.x - o.x, c.y - o.y};
  double b = v.x * u.x + v.y * u.y;
  double disc = b * b - (v.x * v.x + v.y * v.y) + 1.0;
  if (disc < 0.0) return 0;
  double s = std::sqrt(disc);
  int n = 0;
  for (double x : {b - s, b + s})
    if (x >= 0.0) t[n++] = x;
  return n;
}

// Distance from o to the boundary of the union along absolute angle theta,
// assuming every disk contains o; -1 for an empty set.
inline double radial(Point o, const std::vector<Point>& disks, double theta) {
  double best = -1.0;
  for (Point c : disks) {
    double t[2];
    int n = ray_circle(o, theta, c, t);
    if (n > 0) best = std::max(best, t[n - 1]);
  }
  return best;
}

inline bool in_union(const std::vector<Point>& disks, Point x) {
  for (Point c : disks)
    if (geodiam::dist(c, x) <= 1.0) return true;
  return false;
}

// Number of times the ray from o leaves the union of the disks, found by
// testing coverage between consecutive circle crossings.
inline int exits_along_ray(Point o, const std::vector<Point>& disks, double theta) {
  std::vector<double> ts{0.0};
  for (Point c : disks) {
    double t[2];
    int n = ray_circle(o, theta, c, t);
    ts.insert(ts.end(), t, t + n);
  }
  std::sort(ts.begin(), ts.end());
  ts.push_back(ts.back() + 1.0);
  Point u{std::cos(theta), std::sin(theta)};
  auto at = [&](double t) { return Point{o.x + t * u.x, o.y + t * u.y}; };
  int exits = 0;
  bool inside = in_union(disks, o);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] < 1e-12) continue;
    bool now = in_union(disks, at(0.5 * (ts[k] + ts[k + 1])));
    if (inside && !now) ++exits;
    inside = now;
  }
  return exits;
}

// Crossing overlaps of the boundaries of two star-shaped unions around o:
// the arrangement of all circles splits the angle range into gaps on which
// the sign of r_p - r_q is constant; overlaps where the sign flips are
// crossings, the rest are ghosts.
inline int crossing_overlaps(Point o, const std::vector<Point>& dp, const std::vector<Point>& dq) {
  std::vector<Point> all = dp;
  all.insert(all.end(), dq.begin(), dq.end());
  std::vector<double> ev{-geodiam::kPi, geodiam::kPi};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      Point c1 = all[i], c2 = all[j];
      double d = geodiam::dist(c1, c2);
      if (d < 1e-12 || d > 2.0) continue;
      double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
      Point m{0.5 * (c1.x + c2.x), 0.5 * (c1.y + c2.y)};
      Point w{-(c2.y - c1.y) / d, (c2.x - c1.x) / d};
      for (double s : {h, -h}) ev.push_back(std::atan2(m.y + s * w.y - o.y, m.x + s * w.x - o.x));
    }
  std::sort(ev.begin(), ev.end());
  std::vector<int> signs;
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    if (ev[k + 1] - ev[k] < 1e-11) continue;
    double th = 0.5 * (ev[k] + ev[k + 1]);
    double diff = radial(o, dp, th) - radial(o, dq, th);
    int s = diff > 1e-10 ? 1 : (diff < -1e-10 ? -1 : 0);
    if (s != 0 && (signs.empty() || signs.back() != s)) signs.push_back(s);
  }
  if (signs.size() > 1 && signs.front() == signs.back()) signs.pop_back();
  return signs.size() > 1 ? static_cast<int>(signs.size()) : 0;
}

}  // namespace disk_support
