#include "geodiam/geometry.hpp"

#include <algorithm>
#include <array>

namespace geodiam {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedPair: return "unsupported pair";
    case ErrorKind::DegenerateCircles: return "degenerate circles";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::StabbingViolated: return "stabbing violated";
    case ErrorKind::EmptyFlower: return "empty flower";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::Dependency: return "dependency error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::ConstructionInvalid: return "construction invalid";
    case ErrorKind::UnsupportedConstruction: return "unsupported construction";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ShapeKind kind_of(const Shape& s) { return static_cast<ShapeKind>(s.index()); }

const char* to_string(ShapeKind kind) noexcept {
  switch (kind) {
    case ShapeKind::UnitDisk: return "unit_disk";
    case ShapeKind::UnitSquare: return "unit_square";
    case ShapeKind::Segment: return "segment";
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Polyline: return "polyline";
  }
  return "?";
}

SlopeTable SlopeTable::axis_aligned() { return SlopeTable{{0.0, kPi / 2}}; }

int SlopeTable::classify(Point a, Point b, double tol) const {
  double t = std::atan2(b.y - a.y, b.x - a.x);
  if (t < 0) t += kPi;
  if (t >= kPi) t -= kPi;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double d = std::abs(t - angles[i]);
    d = std::min(d, kPi - d);
    if (d <= tol) return static_cast<int>(i) + 1;
  }
  return 0;
}

namespace {

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Parameter, msg); }

int sgn(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

bool on_box(Point a, Point b, Point p, double eps) {
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

struct Linear {
  std::vector<std::array<Point, 2>> edges;
  std::vector<Point> vertices;
  bool filled = false;  // triangle region
};

Linear as_linear(const Shape& s) {
  Linear l;
  if (auto* seg = std::get_if<Segment>(&s)) {
    l.edges.push_back({seg->a, seg->b});
    l.vertices = {seg->a, seg->b};
  } else if (auto* t = std::get_if<Triangle>(&s)) {
    l.edges = {{t->a, t->b}, {t->b, t->c}, {t->c, t->a}};
    l.vertices = {t->a, t->b, t->c};
    l.filled = true;
  } else if (auto* pl = std::get_if<Polyline>(&s)) {
    for (std::size_t i = 0; i + 1 < pl->vertices.size(); ++i)
      l.edges.push_back({pl->vertices[i], pl->vertices[i + 1]});
    l.vertices = pl->vertices;
  }
  return l;
}

bool is_linear(ShapeKind k) {
  return k == ShapeKind::Segment || k == ShapeKind::Triangle || k == ShapeKind::Polyline;
}

bool linear_intersects(const Linear& a, const Linear& b, double eps) {
  for (const auto& ea : a.edges)
    for (const auto& eb : b.edges)
      if (segments_intersect(ea[0], ea[1], eb[0], eb[1], eps)) return true;
  if (a.filled && !b.vertices.empty() &&
      point_in_triangle(b.vertices[0], a.vertices[0], a.vertices[1], a.vertices[2], eps))
    return true;
  if (b.filled && !a.vertices.empty() &&
      point_in_triangle(a.vertices[0], b.vertices[0], b.vertices[1], b.vertices[2], eps))
    return true;
  return false;
}

}  // namespace

void validate(const Shape& s, const PredicateConfig& cfg) {
  if (!(cfg.epsilon > 0)) bad("epsilon must be positive");
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitDisk> || std::is_same_v<T, UnitSquare>) {
          if (!finite(v.center)) bad("non-finite center");
        } else if constexpr (std::is_same_v<T, Segment>) {
          if (!finite(v.a) || !finite(v.b)) bad("non-finite segment endpoint");
          if (dist(v.a, v.b) <= cfg.epsilon) bad("segment endpoints coincide");
          if (v.slope_class < 1) bad("slope_class must be >= 1");
        } else if constexpr (std::is_same_v<T, Triangle>) {
          if (!finite(v.a) || !finite(v.b) || !finite(v.c)) bad("non-finite triangle vertex");
          if (std::abs(orient(v.a, v.b, v.c)) <= cfg.epsilon) bad("collinear triangle");
        } else {
          if (v.vertices.size() < 2) bad("polyline needs at least 2 vertices");
          for (const auto& p : v.vertices)
            if (!finite(p)) bad("non-finite polyline vertex");
        }
      },
      s);
}

void validate(const Shape& s, const SlopeTable& table, const PredicateConfig& cfg) {
  validate(s, cfg);
  if (auto* seg = std::get_if<Segment>(&s)) {
    if (seg->slope_class > table.size()) bad("slope_class outside the slope table");
    if (table.classify(seg->a, seg->b) != seg->slope_class)
      bad("slope_class " + std::to_string(seg->slope_class) + " inconsistent with geometry");
  }
}

double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

bool segments_intersect(Point p1, Point p2, Point p3, Point p4, double eps) {
  int d1 = sgn(orient(p3, p4, p1), eps);
  int d2 = sgn(orient(p3, p4, p2), eps);
  int d3 = sgn(orient(p1, p2, p3), eps);
  int d4 = sgn(orient(p1, p2, p4), eps);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_box(p3, p4, p1, eps)) return true;
  if (d2 == 0 && on_box(p3, p4, p2, eps)) return true;
  if (d3 == 0 && on_box(p1, p2, p3, eps)) return true;
  if (d4 == 0 && on_box(p1, p2, p4, eps)) return true;
  return false;
}

bool point_in_triangle(Point p, Point a, Point b, Point c, double eps) {
  int s1 = sgn(orient(a, b, p), eps);
  int s2 = sgn(orient(b, c, p), eps);
  int s3 = sgn(orient(c, a, p), eps);
  bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(has_neg && has_pos);
}

bool intersects(const Shape& a, const Shape& b, const PredicateConfig& cfg) {
  const double eps = cfg.epsilon;
  ShapeKind ka = kind_of(a), kb = kind_of(b);
  if (ka == ShapeKind::UnitDisk && kb == ShapeKind::UnitDisk)
    return dist(std::get<UnitDisk>(a).center, std::get<UnitDisk>(b).center) <= 2.0 + eps;
  if (ka == ShapeKind::UnitSquare && kb == ShapeKind::UnitSquare)
    return linf(std::get<UnitSquare>(a).center, std::get<UnitSquare>(b).center) <= 1.0 + eps;
  if (is_linear(ka) && is_linear(kb)) {
    Box ba = bounding_box(a), bb = bounding_box(b);
    if (ba.xmax < bb.xmin - eps || bb.xmax < ba.xmin - eps || ba.ymax < bb.ymin - eps ||
        bb.ymax < ba.ymin - eps)
      return false;
    return linear_intersects(as_linear(a), as_linear(b), eps);
  }
  throw Error(ErrorKind::UnsupportedPair,
              std::string(to_string(ka)) + " vs " + to_string(kb));
}

Box bounding_box(const Shape& s) {
  auto from_points = [](const auto& pts) {
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const auto& p : pts) {
      b.xmin = std::min(b.xmin, p.x);
      b.ymin = std::min(b.ymin, p.y);
      b.xmax = std::max(b.xmax, p.x);
      b.ymax = std::max(b.ymax, p.y);
    }
    return b;
  };
  switch (kind_of(s)) {
    case ShapeKind::UnitDisk: {
      Point c = std::get<UnitDisk>(s).center;
      return {c.x - 1, c.y - 1, c.x + 1, c.y + 1};
    }
    case ShapeKind::UnitSquare: {
      Point c = std::get<UnitSquare>(s).center;
      return {c.x - 0.5, c.y - 0.5, c.x + 0.5, c.y + 0.5};
    }
    case ShapeKind::Segment: {
      const auto& g = std::get<Segment>(s);
      return from_points(std::array<Point, 2>{g.a, g.b});
    }
    case ShapeKind::Triangle: {
      const auto& t = std::get<Triangle>(s);
      return from_points(std::array<Point, 3>{t.a, t.b, t.c});
    }
    case ShapeKind::Polyline:
      return from_points(std::get<Polyline>(s).vertices);
  }
  return {0, 0, 0, 0};
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

bool Arc::contains_angle(double theta, double eps) const {
  if (full()) return true;
  double d = normalize_angle(theta - start);
  return d <= sweep + eps || d >= kTwoPi - eps;
}

std::vector<Point> circle_circle_intersection(Point c1, Point c2, const PredicateConfig& cfg) {
  const double eps = cfg.epsilon;
  double d = dist(c1, c2);
  if (d <= eps) throw Error(ErrorKind::DegenerateCircles, "coincident centers");
  if (d > 2.0 + eps) return {};
  Point mid = 0.5 * (c1 + c2);
  if (d >= 2.0 - eps) return {mid};
  double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
  Point u = (1.0 / d) * (c2 - c1);
  Point perp{-u.y, u.x};
  std::vector<Point> out{mid + h * perp, mid - h * perp};
  std::sort(out.begin(), out.end(),
            [&](Point a, Point b) { return angle_of(c1, a) < angle_of(c1, b); });
  return out;
}

std::optional<double> ray_circle_exit(Point o, double theta, Point center, double eps) {
  Point u = unit_vector(theta);
  Point w = o - center;
  double bw = dot(u, w);
  double disc = bw * bw - (dot(w, w) - 1.0);
  if (disc < -eps) return std::nullopt;
  double t = -bw + std::sqrt(std::max(0.0, disc));
  if (t < -eps) return std::nullopt;
  return std::max(0.0, t);
}

std::optional<Point> ray_hits_arc(const Ray& r, const Arc& a, const PredicateConfig& cfg) {
  if (dist(r.origin, a.origin) > cfg.epsilon)
    throw Error(ErrorKind::Precondition, "ray origin differs from the arc's angular origin");
  if (!a.contains_angle(r.angle, cfg.epsilon)) return std::nullopt;
  auto t = ray_circle_exit(r.origin, r.angle, a.center, cfg.epsilon);
  if (!t) return std::nullopt;
  return r.at(*t);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Point perturbation_offset(std::size_t index, std::uint64_t seed) {
  auto unit = [](std::uint64_t h) { return 0.5 + 0.5 * static_cast<double>(h >> 11) * 0x1.0p-53; };
  double hx = unit(splitmix64(seed));
  double hy = unit(splitmix64(seed ^ 0x5851f42d4c957f2dULL));
  double scale = static_cast<double>(index + 1) * 0x1.0p-40;
  return {scale * hx, scale * hy};
}

Shape perturb(const Shape& s, std::size_t index, std::uint64_t seed) {
  Point off = perturbation_offset(index, seed);
  Shape out = s;
  std::visit(
      [&](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitDisk> || std::is_same_v<T, UnitSquare>) {
          v.center = v.center + off;
        } else if constexpr (std::is_same_v<T, Segment>) {
          v.a = v.a + off;
          v.b = v.b + off;
        } else if constexpr (std::is_same_v<T, Triangle>) {
          v.a = v.a + off;
          v.b = v.b + off;
          v.c = v.c + off;
        } else {
          for (auto& p : v.vertices) p = p + off;
        }
      },
      out);
  return out;
}

std::vector<Shape> perturb(const std::vector<Shape>& shapes, std::uint64_t seed) {
  std::vector<Shape> out;
  out.reserve(shapes.size());
  for (std::size_t i = 0; i < shapes.size(); ++i) out.push_back(perturb(shapes[i], i, seed));
  return out;
}

std::vector<Point> perturb(const std::vector<Point>& pts, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out.push_back(pts[i] + perturbation_offset(i, seed));
  return out;
}

}  // namespace geodiam
