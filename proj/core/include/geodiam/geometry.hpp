#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace geodiam {

enum class ErrorKind {
  UnsupportedPair,
  DegenerateCircles,
  Parameter,
  Precondition,
  StabbingViolated,
  EmptyFlower,
  DegenerateInput,
  Dependency,
  Size,
  ConstructionInvalid,
  UnsupportedConstruction,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline double dist2(Point a, Point b) { return dot(a - b, a - b); }
inline double linf(Point a, Point b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

// Unit disk: closed disk of radius 1.
struct UnitDisk {
  Point center;
};

// Axis-aligned closed square of side 1.
struct UnitSquare {
  Point center;
};

// slope_class is a 1-based index into a SlopeTable.
struct Segment {
  Point a;
  Point b;
  int slope_class = 1;
};

struct Triangle {
  Point a;
  Point b;
  Point c;
};

struct Polyline {
  std::vector<Point> vertices;
};

using Shape = std::variant<UnitDisk, UnitSquare, Segment, Triangle, Polyline>;

enum class ShapeKind { UnitDisk, UnitSquare, Segment, Triangle, Polyline };

ShapeKind kind_of(const Shape& s);
const char* to_string(ShapeKind kind) noexcept;

struct PredicateConfig {
  double epsilon = 1e-9;
  std::uint64_t perturbation_seed = 0;
};

// Direction angles in [0, pi); class c refers to angles[c - 1].
struct SlopeTable {
  std::vector<double> angles;

  static SlopeTable axis_aligned();
  int size() const { return static_cast<int>(angles.size()); }
  // 0 when no registered slope matches.
  int classify(Point a, Point b, double tol = 1e-7) const;
};

// Throws Error(Parameter) when a shape violates its type invariants.
void validate(const Shape& s, const PredicateConfig& cfg = {});
void validate(const Shape& s, const SlopeTable& table, const PredicateConfig& cfg = {});

// Closed-set intersection. Supported pairs: disk-disk, square-square, and any
// pair of segment/triangle/polyline. Everything else throws UnsupportedPair.
bool intersects(const Shape& a, const Shape& b, const PredicateConfig& cfg = {});

double orient(Point a, Point b, Point c);
bool segments_intersect(Point p1, Point p2, Point p3, Point p4, double eps);
bool point_in_triangle(Point p, Point a, Point b, Point c, double eps);

// Axis-aligned bounding box of a shape's point set.
struct Box {
  double xmin, ymin, xmax, ymax;
};
Box bounding_box(const Shape& s);

double normalize_angle(double theta);
inline double angle_of(Point from, Point to) {
  return normalize_angle(std::atan2(to.y - from.y, to.x - from.x));
}
inline Point unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Ray {
  Point origin;
  double angle = 0.0;

  Ray() = default;
  Ray(Point o, double theta) : origin(o), angle(normalize_angle(theta)) {}
  Point direction() const { return unit_vector(angle); }
  Point at(double t) const { return origin + t * direction(); }
};

// Piece of the unit circle around `center`, covering the polar angles
// [start, start + sweep] as seen from `origin`. sweep >= 2*pi is the full circle.
struct Arc {
  int disk_index = -1;
  Point center;
  Point origin;
  double start = 0.0;
  double sweep = kTwoPi;

  bool full() const { return sweep >= kTwoPi; }
  bool contains_angle(double theta, double eps = 1e-12) const;
  double end() const { return normalize_angle(start + sweep); }
};

// Intersection points of the unit circles around c1 and c2, sorted by polar
// angle around c1. Tangency within epsilon yields one point.
std::vector<Point> circle_circle_intersection(Point c1, Point c2, const PredicateConfig& cfg = {});

// Largest t >= 0 with |o + t*dir(theta) - center| = 1, if any.
std::optional<double> ray_circle_exit(Point o, double theta, Point center, double eps = 1e-12);

std::optional<Point> ray_hits_arc(const Ray& r, const Arc& a, const PredicateConfig& cfg = {});

// Deterministic degeneracy breaking: object i is translated by
// (i+1) * 2^-40 * (hx, hy), with hx, hy in [0.5, 1) derived from the seed.
Point perturbation_offset(std::size_t index, std::uint64_t seed);
Shape perturb(const Shape& s, std::size_t index, std::uint64_t seed);
std::vector<Shape> perturb(const std::vector<Shape>& shapes, std::uint64_t seed);
std::vector<Point> perturb(const std::vector<Point>& pts, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace geodiam
