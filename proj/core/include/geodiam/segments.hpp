#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "geodiam/geometry.hpp"
#include "geodiam/oracle.hpp"

namespace geodiam {

// Colors are slope classes in [1..h].
using ColorSequence = std::vector<int>;

// Closed integer interval [lo, hi] over positions of an ordering.
struct Interval {
  int lo = 0;
  int hi = -1;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, disjoint, maximal intervals (consecutive intervals never touch).
struct IntervalRep {
  std::vector<Interval> intervals;

  static IntervalRep from_positions(std::vector<int> positions);
  static IntervalRep normalized(std::vector<Interval> raw);

  bool empty() const { return intervals.empty(); }
  std::size_t size() const { return intervals.size(); }
  long long length() const;
  bool contains(int pos) const;
  bool covers(const Interval& range) const;
  bool valid() const;
  std::vector<int> positions() const;
  IntervalRep unite(const IntervalRep& other) const;
  IntervalRep clip(const Interval& range) const;
  friend bool operator==(const IntervalRep&, const IntervalRep&) = default;
};

struct Ordering {
  std::vector<int> order;     // position -> vertex
  std::vector<int> position;  // vertex -> position
  bool bfs = true;            // false when the Hilbert-curve fallback was used
  long long interval_count = 0;  // sum over v of |Rep(N[v])|
};

// BFS from the lowest-then-leftmost segment; Hilbert order of midpoints when
// the intersection graph is disconnected.
Ordering compute_ordering(const std::vector<Segment>& segments, const PredicateConfig& cfg = {});
Ordering compute_ordering(const std::vector<Segment>& segments, const IntersectionGraph& g);

// Affine frame (s, t) in which direction `along` is the s-axis and direction
// `across` is the t-axis: p = s * dir(along) + t * dir(across).
struct SkewFrame {
  Point u;
  Point w;
  double det;

  SkewFrame(double along, double across);
  double s(Point p) const { return cross(p, w) / det; }
  double t(Point p) const { return cross(u, p) / det; }
};

// Rainbow intersection searching over same-slope colored segments: does a
// query segment of another slope meet every color? Each color's segments are
// vertically decomposed (in a frame where they are horizontal and the query
// is vertical) and every region becomes a 3D box; a query maps to a point.
// Queries of the indexed slope use 1D colored range search on their line.
class RainbowIndex {
 public:
  RainbowIndex(std::vector<Segment> segments, std::vector<int> colors,
               const PredicateConfig& cfg = {});
  ~RainbowIndex();
  RainbowIndex(RainbowIndex&&) noexcept;
  RainbowIndex& operator=(RainbowIndex&&) noexcept;

  bool query(const Segment& q) const;
  // Distinct colors met by q.
  std::vector<int> colors_hit(const Segment& q) const;
  int color_count() const { return static_cast<int>(distinct_colors_.size()); }
  std::size_t box_count(double query_angle) const;

 private:
  struct Frame;
  const Frame& frame_for(double query_angle) const;

  std::vector<Segment> segments_;
  std::vector<int> colors_;
  std::vector<int> distinct_colors_;
  double angle_ = 0.0;
  PredicateConfig cfg_;
  mutable std::vector<std::unique_ptr<Frame>> frames_;
};

bool ris_all_colors(const RainbowIndex& index, const Shape& query);

// Interval Cover index: every object carries an interval representation and
// counts once per interval.
class CoverIndex {
 public:
  CoverIndex(std::vector<Segment> objects, const std::vector<IntervalRep>& reps,
             const PredicateConfig& cfg = {});
  ~CoverIndex();
  CoverIndex(CoverIndex&&) noexcept;
  CoverIndex& operator=(CoverIndex&&) noexcept;

  // Answers cover queries for one fixed query segment after a single stab
  // of the index.
  class Probe {
   public:
    // Every integer of `range` lies in the interval of some object meeting q.
    // An empty range is vacuously covered.
    bool covers(const Interval& range) const { return hits_.covers(range); }
    // No object meeting q has an interval overlapping `range`.
    bool avoids(const Interval& range) const { return hits_.clip(range).empty(); }

   private:
    friend class CoverIndex;
    IntervalRep hits_;
  };

  Probe probe(const Segment& q) const;
  bool covers(const Segment& q, const Interval& range) const;
  bool avoids(const Segment& q, const Interval& range) const;
  std::size_t duplicated_size() const { return intervals_.size(); }

 private:
  struct Bucket;
  template <class F>
  void for_each_hit(const Segment& q, F&& f) const;

  std::vector<Segment> objects_;
  std::vector<std::size_t> first_;  // intervals of object i: [first_[i], first_[i + 1])
  std::vector<Interval> intervals_;
  PredicateConfig cfg_;
  std::unique_ptr<Bucket> bucket_;
};

bool covers_query(const CoverIndex& ci, const Shape& q, const Interval& range);

// Union of the intervals of objects meeting q, joined with `incoming`, found
// by dyadic recursion over [0, n) with covers/avoids queries.
IntervalRep interval_search(const CoverIndex& ci, const Shape& q, const IntervalRep& incoming,
                            int n);

// Memoized tables Rep(B_S(v)) keyed by sequence; the table of S holds entries
// for vertices whose color is S[1].
class BallTables {
 public:
  BallTables(std::vector<Segment> segments, Ordering ordering, const PredicateConfig& cfg = {});

  int n() const { return static_cast<int>(segments_.size()); }
  const Ordering& ordering() const { return ordering_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool has(const ColorSequence& s) const { return tables_.count(s) > 0; }

  // Computes the table for S from the tables of S[1]S[3:] and S[2:].
  // Throws Dependency when one of them is missing.
  const std::map<int, IntervalRep>& grow(const ColorSequence& s);
  // Computes tables for every sequence over [1..h] of length <= max_len.
  void grow_all(int h, int max_len);
  // Rep(B_S(v)) for any v, stripping the prefix of S before color(v).
  IntervalRep ball(const ColorSequence& s, int v) const;
  std::size_t table_count() const { return tables_.size(); }
  long long total_intervals() const;

 private:
  std::vector<Segment> segments_;
  Ordering ordering_;
  PredicateConfig cfg_;
  std::map<ColorSequence, std::map<int, IntervalRep>> tables_;
};

// Rep(B_S(v)) for every v with color S[1]. Missing shorter tables raise Dependency.
std::map<int, IntervalRep> grow_balls(BallTables& tables, const ColorSequence& s);

// Every sequence over [1..h] of length 1..max_len, shortest first.
std::vector<ColorSequence> all_sequences(int h, int max_len);

bool segment_diam_at_most(const std::vector<Segment>& segments, int delta, int h,
                          const PredicateConfig& cfg = {});

}  // namespace geodiam
