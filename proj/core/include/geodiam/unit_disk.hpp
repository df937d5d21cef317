#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "geodiam/geometry.hpp"

namespace geodiam {

// Angles inside a cone are measured relative to the cone axis, in (-pi, pi].

// Minimal closed cone with apex `apex` enclosing a box that does not contain
// the apex.
struct ConeRange {
  Point apex;
  double axis = 0.0;  // absolute direction of the axis
  double lo = 0.0;
  double hi = 0.0;

  static ConeRange enclosing(Point apex, const Box& box);
  double relative(double absolute_angle) const;
  double relative_angle_of(Point p) const { return relative(angle_of(apex, p)); }
  double absolute(double rel) const { return normalize_angle(axis + rel); }
  bool contains(double rel, double eps = 1e-12) const { return rel >= lo - eps && rel <= hi + eps; }
};

// Two grid cells of side delta at distance in [1 - 2*sqrt(2)*delta, 2], the
// origin on c_A c_B at distance 1/3 from c_A, and the cone of cell_b from it.
struct CellPairContext {
  Box cell_a{};
  Box cell_b{};
  Point origin;
  ConeRange cone;
  double delta = 0.0;

  static CellPairContext make(const Box& a, const Box& b, double delta);
};

// Largest admissible grid side: the stabbing argument needs
// sqrt(delta^2 / 2 + sqrt(2) * delta) <= 1/3.
double max_grid_delta();
inline constexpr double kDefaultGridDelta = 1.0 / 20.0;

double box_distance(const Box& a, const Box& b);

// One piece of a star-shaped boundary: the circle of `disk` over [lo, hi].
struct RadialPiece {
  double lo = 0.0;
  double hi = 0.0;
  int disk = -1;
};
// Contiguous pieces in ascending angle covering the envelope's domain.
using Envelope = std::vector<RadialPiece>;

struct FlowerRef {
  Point point;
  std::vector<int> subsets;  // J_p
};

struct LambdaEntry {
  double angle = 0.0;
  int subset = -1;
  int piece = -1;  // index of the piece starting at this vertex
};

// Unit disks stabbed by the origin, with canonical subsets from a median-split
// 2-d tree over the centers. Every tree node is a canonical subset; a query
// "disks containing p" is answered by the maximal nodes whose bounding box lies
// within distance 1 of p plus single disks at the leaves.
class CanonicalFamily {
 public:
  enum class Domain { Cone, FullCircle };

  CanonicalFamily(std::vector<Point> centers, const CellPairContext& ctx, Domain domain = Domain::Cone,
                  const PredicateConfig& cfg = {});

  FlowerRef flower(Point p) const;
  std::vector<int> members(const FlowerRef& f) const;  // sorted disk indices

  std::size_t subset_count() const { return nodes_.size(); }
  std::vector<int> subset(int i) const;
  const Envelope& boundary(int i) const { return nodes_[i].env; }
  const std::vector<LambdaEntry>& lambda() const { return lambda_; }
  std::size_t total_vertices() const { return lambda_.size(); }

  const CellPairContext& context() const { return ctx_; }
  Point origin() const { return ctx_.origin; }
  double domain_lo() const { return dom_lo_; }
  double domain_hi() const { return dom_hi_; }
  std::size_t disk_count() const { return centers_.size(); }
  Point center(int disk) const { return centers_[disk]; }

  // Distance from the origin to the circle of `disk` along relative angle rel.
  double radius(int disk, double rel) const;
  // Relative angles in (lo, hi) where the circles of two disks cross.
  std::vector<double> crossings(int d1, int d2, double lo, double hi) const;
  // Upper (take_max) or lower envelope of two envelopes over their common domain.
  Envelope combine(const Envelope& a, const Envelope& b, bool take_max) const;
  // Explicit boundary of F_p over [lo, hi].
  Envelope flower_envelope(const FlowerRef& f, double lo, double hi) const;
  // Piece of subset i's boundary containing rel.
  const RadialPiece& piece_at(int i, double rel) const;

 private:
  struct Node {
    int begin = 0, end = 0;  // range in order_
    int left = -1, right = -1;
    Box box{};
    Envelope env;
  };
  int build(int begin, int end, int depth);
  void query(int node, Point p, std::vector<int>& out) const;
  Envelope single(int disk) const;
  int crossings_into(int d1, int d2, double lo, double hi, double out[2]) const;

  CellPairContext ctx_;
  PredicateConfig cfg_;
  double dom_lo_ = 0.0, dom_hi_ = 0.0;
  std::vector<Point> centers_;
  std::vector<Point> offsets_;  // center - origin
  std::vector<int> order_;
  std::vector<Node> nodes_;
  std::vector<LambdaEntry> lambda_;
};

struct RayHit {
  Point point;
  double distance = 0.0;
  std::vector<int> disks;  // disks whose arcs of dF_p pass through the hit
};

// Unique point where a ray from the origin leaves F_p: the farthest of the
// per-subset hits. Requires |o, p| < 1/2 and a nonempty J_p.
RayHit flower_ray_shoot(const CanonicalFamily& family, const FlowerRef& fp, const Ray& r);

enum class FlowerSide { P, Q };

// Boundary of F_p and F_q inside the cone: either one flower throughout, or
// `before` for angles below the breakpoint and the other flower above it.
struct PairwiseBoundary {
  bool whole = true;
  FlowerSide before = FlowerSide::P;  // the whole side when `whole`
  FlowerSide after = FlowerSide::P;
  double angle = 0.0;
  Point breakpoint;

  FlowerSide side_at(double rel) const { return whole || rel <= angle ? before : after; }
};

PairwiseBoundary pairwise_boundary_in_cone(const CanonicalFamily& family, const FlowerRef& fp,
                                           const FlowerRef& fq, const ConeRange& cone);

// Triple (flower, a, b): the boundary of that flower from angle lo to hi.
struct ChainEntry {
  int flower = -1;
  double lo = 0.0;
  double hi = 0.0;
  Point a;
  Point b;
};

struct BoundaryChain {
  const CanonicalFamily* family = nullptr;
  std::vector<ChainEntry> entries;

  const ChainEntry& entry_at(double rel) const;
};

BoundaryChain leaf_chain(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers, int flower);

// Boundary of the intersection of two chains' regions within the cone.
BoundaryChain sweep_merge(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers,
                          const BoundaryChain& c1, const BoundaryChain& c2, const ConeRange& cone);

// Boundary of the intersection of all flowers, merged along a complete binary
// tree whose leaves follow the order of `flowers`.
BoundaryChain intersect_flowers(const CanonicalFamily& family, const std::vector<FlowerRef>& flowers);

// True iff every point of pts_b lies in F_p for every p in pts_a, flowers
// taken over `disks` (unit disks meeting both cells). Empty sets give true.
bool check_cell_pair(const CellPairContext& ctx, const std::vector<Point>& pts_a,
                     const std::vector<Point>& pts_b, const std::vector<Point>& disks,
                     const PredicateConfig& cfg = {});

struct Diam2Options {
  double delta = kDefaultGridDelta;
  PredicateConfig predicate;
  // Skip a cell pair when one input point lies within distance 1 of all
  // corners of both cells (it is then a common neighbour of every pair).
  bool witness_pruning = true;
};

struct Diam2Stats {
  std::size_t cells = 0;
  std::size_t pairs_adjacent = 0;
  std::size_t pairs_witnessed = 0;
  std::size_t pairs_checked = 0;
};

// Unit disks of radius 1 centered at `centers` (adjacent iff centers are at
// distance <= 2): true iff the intersection graph has diameter <= 2.
bool decide_diam2(const std::vector<Point>& centers, const Diam2Options& opt = {}, Diam2Stats* stats = nullptr);

}  // namespace geodiam
