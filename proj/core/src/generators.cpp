#include "geodiam/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "geodiam/oracle.hpp"

namespace geodiam {

const char* to_string(ShapeRole r) noexcept {
  switch (r) {
    case ShapeRole::Left: return "left";
    case ShapeRole::Right: return "right";
    case ShapeRole::Crossing: return "crossing";
    case ShapeRole::Dummy: return "dummy";
    case ShapeRole::SideA: return "side-a";
    case ShapeRole::SideB: return "side-b";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Input structures

FourPartiteGraph::FourPartiteGraph(int k_) : k(k_) {
  if (k < 1) throw Error(ErrorKind::Parameter, "FourPartiteGraph: k must be >= 1");
  for (auto& e : edges) e.assign(static_cast<std::size_t>(k) * k, 0);
}

bool FourPartiteGraph::has_four_clique() const {
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k; ++b) {
      if (!has(AB, a, b)) continue;
      for (int c = 1; c <= k; ++c) {
        if (!has(AC, a, c) || !has(BC, b, c)) continue;
        for (int d = 1; d <= k; ++d)
          if (has(CD, c, d) && has(AD, a, d) && has(BD, b, d)) return true;
      }
    }
  return false;
}

SixPartiteHypergraph::SixPartiteHypergraph(int k_) : k(k_) {
  if (k < 1) throw Error(ErrorKind::Parameter, "SixPartiteHypergraph: k must be >= 1");
  for (auto& t : triples) t.assign(static_cast<std::size_t>(k) * k * k, 0);
}

int SixPartiteHypergraph::triple_index(int p, int q, int r) {
  std::array<int, 3> s{p, q, r};
  std::sort(s.begin(), s.end());
  if (s[0] < 0 || s[2] > 5 || s[0] == s[1] || s[1] == s[2])
    throw Error(ErrorKind::Parameter, "SixPartiteHypergraph: parts must be three distinct values in 0..5");
  int idx = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        if (a == s[0] && b == s[1] && c == s[2]) return idx;
        ++idx;
      }
  return -1;
}

namespace {

std::size_t triple_offset(int k, std::array<int, 3> parts, std::array<int, 3> values) {
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return parts[x] < parts[y]; });
  std::size_t off = 0;
  for (int i : order) {
    if (values[i] < 1 || values[i] > k) throw Error(ErrorKind::Parameter, "SixPartiteHypergraph: value out of range");
    off = off * k + (values[i] - 1);
  }
  return off;
}

}  // namespace

bool SixPartiteHypergraph::has(std::array<int, 3> parts, std::array<int, 3> values) const {
  return triples[triple_index(parts[0], parts[1], parts[2])][triple_offset(k, parts, values)] != 0;
}

void SixPartiteHypergraph::set(std::array<int, 3> parts, std::array<int, 3> values, bool on) {
  triples[triple_index(parts[0], parts[1], parts[2])][triple_offset(k, parts, values)] = on;
}

bool SixPartiteHypergraph::has_hyperclique() const {
  std::array<int, 6> v{};
  std::function<bool(int)> rec = [&](int part) {
    if (part == 6) return true;
    for (int x = 1; x <= k; ++x) {
      v[part] = x;
      bool ok = true;
      // Check every triple whose largest part is this one.
      for (int p = 0; p < part && ok; ++p)
        for (int q = p + 1; q < part && ok; ++q)
          ok = has({p, q, part}, {v[p], v[q], x});
      if (ok && rec(part + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Strings

GeneratedInstance gen_ov_strings(const OVInstance& inst) {
  if (inst.d < 2) throw Error(ErrorKind::Precondition, "gen_ov_strings: d must be >= 2");
  auto check = [&](const std::vector<int>& v) {
    if (static_cast<int>(v.size()) != inst.d)
      throw Error(ErrorKind::Parameter, "gen_ov_strings: vector length differs from d");
    for (int x : v)
      if (x != 0 && x != 1) throw Error(ErrorKind::Parameter, "gen_ov_strings: entries must be 0 or 1");
  };
  GeneratedInstance out;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    check(inst.a[i]);
    Polyline p;
    for (int j = 0; j < inst.d; ++j) p.vertices.push_back({double(j + 1), double(inst.a[i][j] - 1)});
    out.shapes.push_back(p);
    out.roles.push_back(ShapeRole::SideA);
    out.labels.push_back("A" + std::to_string(i));
  }
  for (std::size_t i = 0; i < inst.b.size(); ++i) {
    check(inst.b[i]);
    Polyline p;
    for (int j = 0; j < inst.d; ++j) p.vertices.push_back({double(j + 1), double(1 - inst.b[i][j])});
    out.shapes.push_back(p);
    out.roles.push_back(ShapeRole::SideB);
    out.labels.push_back("B" + std::to_string(i));
  }
  bool orthogonal = false;
  for (const auto& u : inst.a)
    for (const auto& v : inst.b) {
      bool ortho = true;
      for (int j = 0; j < inst.d; ++j) ortho = ortho && !(u[j] && v[j]);
      orthogonal = orthogonal || ortho;
    }
  out.expected = {"is-clique", 1, !orthogonal};
  // Predicted pattern from the vertex heights alone: two chains over the same
  // abscissae meet iff they share a height somewhere or swap order between
  // consecutive abscissae.
  auto heights = [&](std::size_t i) {
    std::vector<int> h(inst.d);
    for (int j = 0; j < inst.d; ++j)
      h[j] = i < inst.a.size() ? inst.a[i][j] - 1 : 1 - inst.b[i - inst.a.size()][j];
    return h;
  };
  for (std::size_t i = 0; i < out.shapes.size(); ++i)
    for (std::size_t j = i + 1; j < out.shapes.size(); ++j) {
      auto hi = heights(i), hj = heights(j);
      bool predicted = false;
      for (int t = 0; t < inst.d; ++t) {
        predicted = predicted || hi[t] == hj[t];
        if (t + 1 < inst.d) predicted = predicted || (hi[t] - hj[t]) * (hi[t + 1] - hj[t + 1]) < 0;
      }
      ++out.validation.checks;
      if (intersects(out.shapes[i], out.shapes[j]) != predicted) {
        out.validation.passed = false;
        out.validation.issues.push_back("unexpected intersection pattern for " + out.labels[i] + ", " +
                                        out.labels[j]);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Segments

namespace {

struct Base {
  Point start, end;
  Point at(int k, double tau, double x, double y) const {
    double f = (x - 1) / k + y / (tau * k * k);
    return start + f * (end - start);
  }
};

std::optional<Point> line_meet(Point p1, Point d1, Point p2, Point d2) {
  double den = cross(d1, d2);
  if (std::abs(den) < 1e-15) return std::nullopt;
  double t = cross(p2 - p1, d2) / den;
  return p1 + t * d1;
}

std::string fmt_pair(const char* name, int x, int y) {
  std::ostringstream os;
  os << name << "(" << x << "," << y << ")";
  return os.str();
}

struct K4Layout {
  // Left chain v1..v4 and its reflection through the origin.
  std::array<Point, 4> v{Point{-3, 3}, Point{-2, 1}, Point{-2, -1}, Point{-3, -3}};
  Base s_ab{v[0], v[1]};  // parametrized from the outer vertex
  Base s_ba{v[2], v[3]};  // parametrized from the inner vertex
  Base s_cd{-1.0 * v[0], -1.0 * v[1]};
  Base s_dc{-1.0 * v[2], -1.0 * v[3]};
};

Segment t_ab(const K4Layout& L, int k, double tau, int a, int b) {
  return {L.s_ab.at(k, tau, a, b), L.s_ba.at(k, tau, b, a), 1};
}

Segment t_cd(const K4Layout& L, int k, double tau, int c, int d) {
  return {L.s_cd.at(k, tau, c, d), L.s_dc.at(k, tau, d, c), 1};
}

// End of the crossing segment inside one chain: the group of x on `base`,
// the group end next to the chain's inner vertex (on the line), the other
// group end, and the outer vertex of the opposite base.
struct GroupEnds {
  Point inner, outer, far_vertex;
};

GroupEnds group_ends(const Base& base, bool from_outer, Point far_vertex, int k, double tau, int x) {
  Point p1 = base.at(k, tau, x, 1), pk = base.at(k, tau, x, k);
  return from_outer ? GroupEnds{pk, p1, far_vertex} : GroupEnds{p1, pk, far_vertex};
}

std::optional<Segment> crossing_segment(const GroupEnds& l, const GroupEnds& r) {
  Point dir = r.inner - l.inner;
  auto u = line_meet(l.inner, dir, l.outer, l.far_vertex - l.outer);
  auto u2 = line_meet(l.inner, dir, r.outer, r.far_vertex - r.outer);
  if (!u || !u2) return std::nullopt;
  return Segment{*u, *u2, 1};
}

struct K4Build {
  GeneratedInstance inst;
  std::vector<std::string> issues;
};

K4Build build_k4(const FourPartiteGraph& g, double tau) {
  const int k = g.k;
  K4Layout L;
  K4Build out;
  auto& inst = out.inst;
  inst.tau = tau;
  auto add = [&](Shape s, ShapeRole r, std::string label) {
    inst.shapes.push_back(std::move(s));
    inst.roles.push_back(r);
    inst.labels.push_back(std::move(label));
  };
  for (int a = 1; a <= k; ++a)
    for (int b = 1; b <= k; ++b)
      if (g.has(FourPartiteGraph::AB, a, b)) add(t_ab(L, k, tau, a, b), ShapeRole::Left, fmt_pair("t_AB", a, b));
  for (int c = 1; c <= k; ++c)
    for (int d = 1; d <= k; ++d)
      if (g.has(FourPartiteGraph::CD, c, d)) add(t_cd(L, k, tau, c, d), ShapeRole::Right, fmt_pair("t_CD", c, d));

  struct Cross {
    FourPartiteGraph::Pair pair;
    bool left_is_a, right_is_c;
    const char* name;
  };
  const Cross crosses[] = {{FourPartiteGraph::AC, true, true, "h_AC"},
                           {FourPartiteGraph::AD, true, false, "h_AD"},
                           {FourPartiteGraph::BC, false, true, "h_BC"},
                           {FourPartiteGraph::BD, false, false, "h_BD"}};
  for (const Cross& cr : crosses)
    for (int x = 1; x <= k; ++x)
      for (int y = 1; y <= k; ++y) {
        if (g.has(cr.pair, x, y)) continue;
        GroupEnds le = cr.left_is_a ? group_ends(L.s_ab, true, L.s_ba.end, k, tau, x)
                                    : group_ends(L.s_ba, false, L.s_ab.start, k, tau, x);
        GroupEnds re = cr.right_is_c ? group_ends(L.s_cd, true, L.s_dc.end, k, tau, y)
                                     : group_ends(L.s_dc, false, L.s_cd.start, k, tau, y);
        auto h = crossing_segment(le, re);
        std::string label = fmt_pair(cr.name, x, y);
        if (!h) {
          out.issues.push_back(label + ": construction lines are parallel");
          continue;
        }
        // Crossing property: h meets t_XX'(x~, .) iff x~ = x, and likewise on
        // the right, over every potential left/right segment.
        for (int p = 1; p <= k; ++p)
          for (int q = 1; q <= k; ++q) {
            Segment lt = cr.left_is_a ? t_ab(L, k, tau, p, q) : t_ab(L, k, tau, q, p);
            Segment rt = cr.right_is_c ? t_cd(L, k, tau, p, q) : t_cd(L, k, tau, q, p);
            inst.validation.checks += 2;
            if (intersects(*h, lt) != (p == x))
              out.issues.push_back(label + " vs " +
                                   (cr.left_is_a ? fmt_pair("t_AB", p, q) : fmt_pair("t_AB", q, p)));
            if (intersects(*h, rt) != (p == y))
              out.issues.push_back(label + " vs " +
                                   (cr.right_is_c ? fmt_pair("t_CD", p, q) : fmt_pair("t_CD", q, p)));
          }
        add(*h, ShapeRole::Crossing, label);
      }
  const Point sq[4] = {{-3, 0}, {0, -3}, {3, 0}, {0, 3}};
  for (int i = 0; i < 4; ++i) add(Segment{sq[i], sq[(i + 1) % 4], 1}, ShapeRole::Dummy, "square side " + std::to_string(i));
  add(Segment{{0, 3}, {0, -3}, 1}, ShapeRole::Dummy, "square diagonal");
  inst.expected = {"diam<=2", 2, !g.has_four_clique()};
  return out;
}

}  // namespace

GeneratedInstance gen_k4_segments(const FourPartiteGraph& g, double tau) {
  if (g.k < 1) throw Error(ErrorKind::Precondition, "gen_k4_segments: k must be >= 1");
  if (!(tau >= 2.0)) throw Error(ErrorKind::Parameter, "gen_k4_segments: tau must be >= 2");
  for (;;) {
    K4Build b = build_k4(g, tau);
    if (b.issues.empty()) return std::move(b.inst);
    if (tau * 2 > 64.0)
      throw Error(ErrorKind::ConstructionInvalid, "construction invalid for (k=" + std::to_string(g.k) +
                                                      ", tau=" + std::to_string(tau) + "): " + b.issues.front());
    tau *= 2;
  }
}

// ---------------------------------------------------------------------------
// Triangles

namespace {

bool strictly_inside_convex(Point p, const std::vector<Point>& poly, double eps) {
  // poly in either orientation
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    double o = orient(poly[i], poly[(i + 1) % poly.size()], p);
    if (std::abs(o) <= eps) return false;
    int s = o > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

bool convex_polygon(const std::vector<Point>& poly) {
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    double o = orient(poly[i], poly[(i + 1) % poly.size()], poly[(i + 2) % poly.size()]);
    if (std::abs(o) < 1e-12) return false;
    int s = o > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    else if (s != sign) return false;
  }
  return true;
}

// What each triangle encodes, for the pairwise checks.
struct TriTag {
  enum Kind { LeftEdge, RightEdge, CrossL2, CrossR2, DummyL, DummyR, Hub } kind;
  std::array<int, 6> value{};  // per part, 0 when not involved
  int seg = -1;                // chain segment index (0..2) of the two-part side
  int single = -1;             // part of the one-part side
};

Triangle reflect(const Triangle& t) { return {-1.0 * t.a, -1.0 * t.b, -1.0 * t.c}; }

struct H6Build {
  GeneratedInstance inst;
  std::vector<TriTag> tags;
  std::vector<std::string> issues;
};

H6Build build_h6(const SixPartiteHypergraph& g, const ChainCoords& chain, double tau) {
  const int k = g.k;
  const auto& Lc = chain.left;
  std::array<Base, 6> base;  // AB, BC, CA, DE, EF, FD
  for (int i = 0; i < 3; ++i) {
    base[i] = Base{Lc[2 * i], Lc[2 * i + 1]};
    base[3 + i] = Base{-1.0 * Lc[2 * i], -1.0 * Lc[2 * i + 1]};
  }
  // Segment whose first part is p: A->AB, B->BC, C->CA, D->DE, E->EF, F->FD.
  auto seg_first = [](int part) { return part; };
  auto second = [](int part) { return part < 3 ? (part + 1) % 3 : 3 + (part - 2) % 3; };
  auto point = [&](int seg, int x, int y) { return base[seg].at(k, tau, x, y); };
  // Group of z on its segment, widened by half a step so k = 1 still spans.
  auto group = [&](int seg, int z) {
    return std::make_pair(point(seg, z, 0.5), point(seg, z, k + 0.5));
  };
  const char* names = "ABCDEF";

  H6Build out;
  auto& inst = out.inst;
  inst.tau = tau;
  auto add = [&](Triangle t, ShapeRole r, std::string label, TriTag tag) {
    inst.shapes.push_back(t);
    inst.roles.push_back(r);
    inst.labels.push_back(std::move(label));
    out.tags.push_back(tag);
  };
  auto label3 = [&](std::array<int, 3> parts, std::array<int, 3> vals) {
    std::string s = "T_";
    for (int p : parts) s += names[p];
    s += "(" + std::to_string(vals[0]) + "," + std::to_string(vals[1]) + "," + std::to_string(vals[2]) + ")";
    return s;
  };

  for (int side = 0; side < 2; ++side) {
    int o = 3 * side;
    for (int x = 1; x <= k; ++x)
      for (int y = 1; y <= k; ++y)
        for (int z = 1; z <= k; ++z) {
          if (!g.has({o, o + 1, o + 2}, {x, y, z})) continue;
          Triangle t{point(o, x, y), point(o + 1, y, z), point(o + 2, z, x)};
          TriTag tag{side == 0 ? TriTag::LeftEdge : TriTag::RightEdge};
          tag.value[o] = x;
          tag.value[o + 1] = y;
          tag.value[o + 2] = z;
          add(t, side == 0 ? ShapeRole::Left : ShapeRole::Right, label3({o, o + 1, o + 2}, {x, y, z}), tag);
        }
  }
  // Crossing triangles: a vertex on the two-part side's segment and a base
  // spanning the single part's group on the other side.
  for (int side = 0; side < 2; ++side) {
    int o = 3 * side, other = 3 - o;
    for (int i = 0; i < 3; ++i) {
      int seg = o + i;
      int X = seg_first(seg), Y = second(X);
      for (int Z = other; Z < other + 3; ++Z)
        for (int x = 1; x <= k; ++x)
          for (int y = 1; y <= k; ++y)
            for (int z = 1; z <= k; ++z) {
              if (g.has({X, Y, Z}, {x, y, z})) continue;
              auto [g1, g2] = group(seg_first(Z), z);
              Triangle t = side == 0 ? Triangle{point(seg, x, y), g1, g2} : Triangle{g1, g2, point(seg, x, y)};
              TriTag tag{side == 0 ? TriTag::CrossL2 : TriTag::CrossR2};
              tag.value[X] = x;
              tag.value[Y] = y;
              tag.value[Z] = z;
              tag.seg = i;
              tag.single = Z;
              std::array<int, 3> parts{X, Y, Z};
              std::array<int, 3> vals{x, y, z};
              if (side == 1) {
                parts = {Z, X, Y};
                vals = {z, x, y};
              }
              add(t, ShapeRole::Crossing, label3(parts, vals), tag);
            }
    }
  }
  // Dummy triangles covering each chain's hull, confined to one half-plane.
  double xmin = Lc[0].x, xmax = Lc[0].x, ymin = Lc[0].y, ymax = Lc[0].y;
  for (Point p : Lc) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  double span = std::max(ymax - ymin, 1.0);
  double ymid = 0.5 * (ymin + ymax);
  Triangle dl{{xmin - 0.25 * span, ymax + 3 * span}, {xmin - 0.25 * span, ymin - 3 * span}, {0.5 * xmax, ymid}};
  TriTag tl{TriTag::DummyL}, tr{TriTag::DummyR};
  add(dl, ShapeRole::Dummy, "dummy left", tl);
  add(reflect(dl), ShapeRole::Dummy, "dummy right", tr);
  for (Point p : Lc)
    if (!point_in_triangle(p, dl.a, dl.b, dl.c, 0.0)) out.issues.push_back("dummy left does not cover the left chain");

  // Chain requirements: convex hulls, left chain in x < 0, and segments
  // between the chains avoid both hull interiors.
  std::vector<Point> hull_l(Lc.begin(), Lc.end()), hull_r;
  for (Point p : Lc) hull_r.push_back(-1.0 * p);
  if (!convex_polygon(hull_l)) out.issues.push_back("left chain is not in convex position");
  if (xmax >= 0) out.issues.push_back("left chain must lie in x < 0");
  for (Point a : hull_l)
    for (Point b : hull_r)
      for (int s = 1; s < 64; ++s) {
        Point m = a + (s / 64.0) * (b - a);
        if (strictly_inside_convex(m, hull_l, 1e-12) || strictly_inside_convex(m, hull_r, 1e-12)) {
          out.issues.push_back("chain visibility violated between chain vertices");
          s = 64;
        }
      }
  // With no hyperedge on one side nothing guarantees a common neighbour of the
  // dummies (or of an edge triangle and the far dummy), yet there is no
  // hyperclique. A triangle meeting every shape restores diameter <= 2.
  bool any_left = false, any_right = false;
  for (const TriTag& t : out.tags) {
    any_left = any_left || t.kind == TriTag::LeftEdge;
    any_right = any_right || t.kind == TriTag::RightEdge;
  }
  if (!any_left || !any_right) {
    Box bb = bounding_box(inst.shapes.front());
    for (const Shape& s : inst.shapes) {
      Box b = bounding_box(s);
      bb = {std::min(bb.xmin, b.xmin), std::min(bb.ymin, b.ymin), std::max(bb.xmax, b.xmax), std::max(bb.ymax, b.ymax)};
    }
    Point lo{bb.xmin, bb.ymin}, hi{bb.xmax, bb.ymax};
    Point c = 0.5 * (lo + hi);
    double r = 2.0 * (dist(lo, hi) + 1.0);  // circumradius of a triangle whose incircle covers the box
    Triangle hub{c + r * unit_vector(kPi / 2), c + r * unit_vector(kPi / 2 + 2 * kPi / 3),
                 c + r * unit_vector(kPi / 2 + 4 * kPi / 3)};
    add(hub, ShapeRole::Dummy, "hub", TriTag{TriTag::Hub});
  }
  inst.expected = {"diam<=2", 2, !g.has_hyperclique()};
  return out;
}

// Items 1-5 of the reduction's pairwise properties.
std::optional<bool> predicted(const TriTag& e, const TriTag& c) {
  bool left = e.kind == TriTag::LeftEdge;
  int o = left ? 0 : 3;
  switch (c.kind) {
    case TriTag::CrossL2:
    case TriTag::CrossR2: {
      bool two_on_my_side = (c.kind == TriTag::CrossL2) == left;
      if (two_on_my_side) {
        int X = o + c.seg, Y = X < 3 ? (X + 1) % 3 : 3 + (X - 2) % 3;
        return e.value[X] == c.value[X] && e.value[Y] == c.value[Y];
      }
      return e.value[c.single] == c.value[c.single];
    }
    case TriTag::LeftEdge:
    case TriTag::RightEdge:
      if (c.kind != e.kind) return false;
      return std::nullopt;
    case TriTag::DummyL: return left;
    case TriTag::DummyR: return !left;
    case TriTag::Hub: return true;
  }
  return std::nullopt;
}

}  // namespace

GeneratedInstance gen_h6_triangles(const SixPartiteHypergraph& g, const ChainCoords& chain, double tau) {
  if (g.k < 1) throw Error(ErrorKind::Precondition, "gen_h6_triangles: k must be >= 1");
  if (!(tau >= 2.0)) throw Error(ErrorKind::Parameter, "gen_h6_triangles: tau must be >= 2");
  for (;;) {
    H6Build b = build_h6(g, chain, tau);
    auto& inst = b.inst;
    const std::size_t n = inst.shapes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const TriTag& ti = b.tags[i];
      bool is_edge = ti.kind == TriTag::LeftEdge || ti.kind == TriTag::RightEdge;
      bool is_cross = ti.kind == TriTag::CrossL2 || ti.kind == TriTag::CrossR2;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const TriTag& tj = b.tags[j];
        std::optional<bool> want;
        if (is_edge && j > i) want = predicted(ti, tj);
        else if (is_cross && (tj.kind == TriTag::DummyL || tj.kind == TriTag::DummyR)) want = true;
        else if (tj.kind == TriTag::Hub) want = true;
        if (!want) continue;
        ++inst.validation.checks;
        if (intersects(inst.shapes[i], inst.shapes[j]) != *want)
          b.issues.push_back(inst.labels[i] + " vs " + inst.labels[j] +
                             (*want ? ": expected to intersect" : ": expected disjoint"));
      }
    }
    if (b.issues.empty()) return std::move(inst);
    if (tau * 2 > 64.0)
      throw Error(ErrorKind::ConstructionInvalid, "construction invalid for (k=" + std::to_string(g.k) +
                                                      ", tau=" + std::to_string(tau) + "): " + b.issues.front());
    tau *= 2;
  }
}

GeneratedInstance gen_fat_triangles(const SixPartiteHypergraph&, double) {
  throw Error(ErrorKind::UnsupportedConstruction,
              "unsupported construction: fat (half-square) triangle variant is not generated");
}

GeneratedInstance gen_three_slope_segments(const OVInstance&) {
  throw Error(ErrorKind::UnsupportedConstruction,
              "unsupported construction: three-slope segment variant is not generated");
}

// ---------------------------------------------------------------------------
// Random inputs and oracle check

OVInstance random_ov(int d, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OVInstance inst;
  inst.d = d;
  for (int i = 0; i < size; ++i) {
    std::vector<int> u(d), v(d);
    for (int j = 0; j < d; ++j) {
      u[j] = static_cast<int>(rng() & 1);
      v[j] = static_cast<int>(rng() & 1);
    }
    inst.a.push_back(u);
    inst.b.push_back(v);
  }
  return inst;
}

FourPartiteGraph random_four_partite(int k, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  FourPartiteGraph g(k);
  for (auto& e : g.edges)
    for (auto& c : e) c = coin(rng);
  return g;
}

SixPartiteHypergraph random_six_partite(int k, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  SixPartiteHypergraph g(k);
  for (auto& t : g.triples)
    for (auto& c : t) c = coin(rng);
  return g;
}

std::vector<Point> random_points(int n, double side, std::uint64_t seed) {
  if (n < 0 || !(side > 0.0)) throw Error(ErrorKind::Parameter, "random_points: need n >= 0 and side > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> out(n);
  for (Point& p : out) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return out;
}

SlopeTable uniform_slopes(int h) {
  if (h < 1) throw Error(ErrorKind::Parameter, "uniform_slopes: h must be positive");
  SlopeTable t;
  for (int c = 0; c < h; ++c) t.angles.push_back(c * kPi / h);
  return t;
}

std::vector<Segment> random_segments(int n, int h, double side, double min_len, double max_len,
                                     std::uint64_t seed) {
  if (n < 0 || !(side > 0.0) || !(min_len > 0.0) || max_len < min_len)
    throw Error(ErrorKind::Parameter, "random_segments: bad size, side or length range");
  SlopeTable slopes = uniform_slopes(h);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side), len(min_len, max_len);
  std::uniform_int_distribution<int> cls(1, h);
  std::vector<Segment> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    int c = cls(rng);
    Point m{u(rng), u(rng)};
    Point d = 0.5 * len(rng) * unit_vector(slopes.angles[c - 1]);
    out.push_back(Segment{m - d, m + d, c});
  }
  return out;
}

std::vector<std::string> oracle_check(const GeneratedInstance& inst, const PredicateConfig& cfg) {
  std::vector<std::string> issues;
  const int delta = inst.expected.delta;
  auto g = build_graph(inst.shapes, cfg);
  bool within = true, far_lr = false;
  std::vector<std::pair<int, int>> far_other;
  for (int s = 0; s < g.n; ++s) {
    auto d = bfs_distances(g, s);
    for (int t = s + 1; t < g.n; ++t) {
      if (d[t] != kUnreached && d[t] <= delta) continue;
      within = false;
      auto rs = inst.roles[s], rt = inst.roles[t];
      bool lr = (rs == ShapeRole::Left && rt == ShapeRole::Right) ||
                (rs == ShapeRole::Right && rt == ShapeRole::Left) ||
                (rs == ShapeRole::SideA && rt == ShapeRole::SideB) ||
                (rs == ShapeRole::SideB && rt == ShapeRole::SideA);
      if (lr) far_lr = true;
      else far_other.push_back({s, t});
    }
  }
  if (within != inst.expected.answer)
    issues.push_back(std::string("oracle answer ") + (within ? "true" : "false") + " differs from expected");
  if (!far_lr)
    for (std::size_t i = 0; i < far_other.size() && i < 5; ++i)
      issues.push_back("pair " + inst.labels[far_other[i].first] + ", " + inst.labels[far_other[i].second] +
                       " is at distance > " + std::to_string(delta));
  return issues;
}

}  // namespace geodiam
