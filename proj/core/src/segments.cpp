#include "geodiam/segments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

namespace geodiam {

// ---------------------------------------------------------------------------
// IntervalRep

IntervalRep IntervalRep::normalized(std::vector<Interval> raw) {
  std::erase_if(raw, [](const Interval& iv) { return iv.lo > iv.hi; });
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalRep out;
  for (const Interval& iv : raw) {
    if (!out.intervals.empty() && iv.lo <= out.intervals.back().hi + 1)
      out.intervals.back().hi = std::max(out.intervals.back().hi, iv.hi);
    else
      out.intervals.push_back(iv);
  }
  return out;
}

IntervalRep IntervalRep::from_positions(std::vector<int> positions) {
  std::vector<Interval> raw;
  raw.reserve(positions.size());
  for (int p : positions) raw.push_back({p, p});
  return normalized(std::move(raw));
}

long long IntervalRep::length() const {
  long long total = 0;
  for (const Interval& iv : intervals) total += iv.hi - iv.lo + 1;
  return total;
}

bool IntervalRep::contains(int pos) const {
  auto it = std::upper_bound(intervals.begin(), intervals.end(), pos,
                             [](int p, const Interval& iv) { return p < iv.lo; });
  return it != intervals.begin() && std::prev(it)->hi >= pos;
}

bool IntervalRep::covers(const Interval& range) const {
  if (range.lo > range.hi) return true;
  auto it = std::upper_bound(intervals.begin(), intervals.end(), range.lo,
                             [](int p, const Interval& iv) { return p < iv.lo; });
  return it != intervals.begin() && std::prev(it)->hi >= range.hi;
}

bool IntervalRep::valid() const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].lo > intervals[i].hi) return false;
    if (i > 0 && intervals[i].lo <= intervals[i - 1].hi + 1) return false;
  }
  return true;
}

std::vector<int> IntervalRep::positions() const {
  std::vector<int> out;
  for (const Interval& iv : intervals)
    for (int p = iv.lo; p <= iv.hi; ++p) out.push_back(p);
  return out;
}

IntervalRep IntervalRep::unite(const IntervalRep& other) const {
  std::vector<Interval> raw = intervals;
  raw.insert(raw.end(), other.intervals.begin(), other.intervals.end());
  return normalized(std::move(raw));
}

IntervalRep IntervalRep::clip(const Interval& range) const {
  IntervalRep out;
  for (const Interval& iv : intervals) {
    int lo = std::max(iv.lo, range.lo), hi = std::min(iv.hi, range.hi);
    if (lo <= hi) out.intervals.push_back({lo, hi});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ordering

namespace {

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int bits) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (bits - 1); s > 0; s >>= 1) {
    std::uint32_t rx = (x & s) ? 1 : 0;
    std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<int> hilbert_order(const std::vector<Segment>& segs) {
  const int bits = 16;
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  std::vector<Point> mids;
  for (const Segment& s : segs) {
    Point m = 0.5 * (s.a + s.b);
    mids.push_back(m);
    minx = std::min(minx, m.x);
    miny = std::min(miny, m.y);
    maxx = std::max(maxx, m.x);
    maxy = std::max(maxy, m.y);
  }
  double span = std::max({maxx - minx, maxy - miny, 1e-300});
  const double cells = static_cast<double>((1u << bits) - 1);
  std::vector<std::pair<std::uint64_t, int>> keyed;
  for (std::size_t i = 0; i < mids.size(); ++i) {
    auto gx = static_cast<std::uint32_t>((mids[i].x - minx) / span * cells);
    auto gy = static_cast<std::uint32_t>((mids[i].y - miny) / span * cells);
    keyed.push_back({hilbert_index(gx, gy, bits), static_cast<int>(i)});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order;
  for (auto& [k, i] : keyed) order.push_back(i);
  return order;
}

}  // namespace

Ordering compute_ordering(const std::vector<Segment>& segments, const IntersectionGraph& g) {
  const int n = static_cast<int>(segments.size());
  if (n == 0) throw Error(ErrorKind::Parameter, "compute_ordering: empty input");
  if (g.n != n) throw Error(ErrorKind::Parameter, "compute_ordering: graph size mismatch");
  Ordering ord;
  int root = 0;
  auto low = [&](int i) {
    const Segment& s = segments[i];
    return std::make_pair(std::min(s.a.y, s.b.y), std::min(s.a.x, s.b.x));
  };
  for (int i = 1; i < n; ++i)
    if (low(i) < low(root)) root = i;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ord.order.push_back(v);
    for (int w : g.adjacency[v])
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
  }
  if (static_cast<int>(ord.order.size()) < n) {
    ord.bfs = false;
    ord.order = hilbert_order(segments);
  }
  ord.position.assign(n, 0);
  for (int p = 0; p < n; ++p) ord.position[ord.order[p]] = p;
  for (int v = 0; v < n; ++v) {
    std::vector<int> pos{ord.position[v]};
    for (int w : g.adjacency[v]) pos.push_back(ord.position[w]);
    ord.interval_count += static_cast<long long>(IntervalRep::from_positions(pos).size());
  }
  return ord;
}

Ordering compute_ordering(const std::vector<Segment>& segments, const PredicateConfig& cfg) {
  std::vector<Shape> shapes(segments.begin(), segments.end());
  if (shapes.empty()) throw Error(ErrorKind::Parameter, "compute_ordering: empty input");
  return compute_ordering(segments, build_graph(shapes, cfg));
}

// ---------------------------------------------------------------------------
// Frames and the stabbing tree shared by both indexes

SkewFrame::SkewFrame(double along, double across)
    : u(unit_vector(along)), w(unit_vector(across)), det(cross(u, w)) {
  if (std::abs(det) < 1e-12)
    throw Error(ErrorKind::Precondition, "SkewFrame: directions are parallel");
}

namespace {

double direction_of(const Segment& s) { return std::atan2(s.b.y - s.a.y, s.b.x - s.a.x); }

bool parallel(double a, double b) { return std::abs(std::sin(a - b)) <= 1e-12; }

// Same outcome as intersects() on two segments, without the variant dispatch.
bool segment_hit(const Segment& p, const Segment& q, double eps) {
  if (std::max(p.a.x, p.b.x) < std::min(q.a.x, q.b.x) - eps ||
      std::max(q.a.x, q.b.x) < std::min(p.a.x, p.b.x) - eps ||
      std::max(p.a.y, p.b.y) < std::min(q.a.y, q.b.y) - eps ||
      std::max(q.a.y, q.b.y) < std::min(p.a.y, p.b.y) - eps)
    return false;
  return segments_intersect(p.a, p.b, q.a, q.b, eps);
}

// Items are horizontal in (s, t): s-range [s_lo, s_hi] at height t. A query
// reports the items whose s-range contains s_q and whose t is in [t1, t2].
class StabTree {
 public:
  struct Item {
    double s_lo, s_hi, t;
    int id;
  };

  explicit StabTree(std::vector<Item> items) : items_(std::move(items)) {
    for (const Item& it : items_) {
      coords_.push_back(it.s_lo);
      coords_.push_back(it.s_hi);
    }
    std::sort(coords_.begin(), coords_.end());
    coords_.erase(std::unique(coords_.begin(), coords_.end()), coords_.end());
    if (coords_.empty()) return;
    leaves_ = 2 * static_cast<int>(coords_.size()) - 1;
    nodes_.assign(4 * leaves_, {});
    for (int i = 0; i < static_cast<int>(items_.size()); ++i) {
      int a = 2 * index_of(items_[i].s_lo), b = 2 * index_of(items_[i].s_hi);
      insert(1, 0, leaves_ - 1, a, b, i);
    }
    for (auto& node : nodes_)
      std::sort(node.begin(), node.end(), [&](int x, int y) { return items_[x].t < items_[y].t; });
  }

  const Item& item(int i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }

  // Calls f(index) for each stabbed item; stops early when f returns false.
  template <class F>
  void query(double s_q, double t1, double t2, F&& f) const {
    if (coords_.empty()) return;
    int leaf = locate(s_q);
    if (leaf < 0) return;
    int node = 1, lo = 0, hi = leaves_ - 1;
    while (true) {
      const auto& list = nodes_[node];
      auto it = std::lower_bound(list.begin(), list.end(), t1,
                                 [&](int x, double v) { return items_[x].t < v; });
      for (; it != list.end() && items_[*it].t <= t2; ++it)
        if (!f(*it)) return;
      if (lo == hi) return;
      int mid = (lo + hi) / 2;
      if (leaf <= mid) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
  }

 private:
  int index_of(double v) const {
    return static_cast<int>(std::lower_bound(coords_.begin(), coords_.end(), v) - coords_.begin());
  }

  // Elementary piece: 2i is the point coords[i], 2i+1 the open gap after it.
  int locate(double s) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), s);
    int i = static_cast<int>(it - coords_.begin());
    if (it != coords_.end() && *it == s) return 2 * i;
    if (i == 0 || it == coords_.end()) return -1;
    return 2 * (i - 1) + 1;
  }

  void insert(int node, int lo, int hi, int a, int b, int id) {
    if (b < lo || hi < a) return;
    if (a <= lo && hi <= b) {
      nodes_[node].push_back(id);
      return;
    }
    int mid = (lo + hi) / 2;
    insert(2 * node, lo, mid, a, b, id);
    insert(2 * node + 1, mid + 1, hi, a, b, id);
  }

  std::vector<Item> items_;
  std::vector<double> coords_;
  std::vector<std::vector<int>> nodes_;
  int leaves_ = 0;
};

// Same-slope segments on their lines: offset c of the line and the range
// along it. Supports 1D queries on one line.
struct LineEntry {
  double c, lo, hi;
  int id;
};

std::vector<LineEntry> line_entries(const std::vector<Segment>& segs, double angle) {
  Point d = unit_vector(angle);
  std::vector<LineEntry> out;
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    double c = cross(d, segs[i].a);
    double p = dot(d, segs[i].a), q = dot(d, segs[i].b);
    out.push_back({c, std::min(p, q), std::max(p, q), i});
  }
  std::sort(out.begin(), out.end(), [](const LineEntry& a, const LineEntry& b) {
    return a.c != b.c ? a.c < b.c : a.lo < b.lo;
  });
  return out;
}

template <class F>
void line_query(const std::vector<LineEntry>& lines, double angle, const Segment& q, double slack,
                F&& f) {
  Point d = unit_vector(angle);
  double c = cross(d, q.a);
  double p = dot(d, q.a), r = dot(d, q.b);
  double lo = std::min(p, r), hi = std::max(p, r);
  auto it = std::lower_bound(lines.begin(), lines.end(), c - slack,
                             [](const LineEntry& e, double v) { return e.c < v; });
  for (; it != lines.end() && it->c <= c + slack; ++it)
    if (it->lo <= hi + slack && lo <= it->hi + slack)
      if (!f(it->id)) return;
}

double common_direction(const std::vector<Segment>& segs, const char* who) {
  if (segs.empty()) return 0.0;
  double angle = direction_of(segs.front());
  for (const Segment& s : segs)
    if (!parallel(direction_of(s), angle))
      throw Error(ErrorKind::Precondition, std::string(who) + ": indexed segments must share one slope");
  return angle;
}

}  // namespace

// ---------------------------------------------------------------------------
// RainbowIndex

struct RainbowIndex::Frame {
  double query_angle;
  SkewFrame frame;
  std::vector<int> box_color;
  std::vector<double> box_below;
  StabTree tree;
};

RainbowIndex::RainbowIndex(std::vector<Segment> segments, std::vector<int> colors,
                           const PredicateConfig& cfg)
    : segments_(std::move(segments)), colors_(std::move(colors)), cfg_(cfg) {
  if (segments_.size() != colors_.size())
    throw Error(ErrorKind::Parameter, "RainbowIndex: one color per segment required");
  for (const Segment& s : segments_) validate(s, cfg_);
  angle_ = common_direction(segments_, "RainbowIndex");
  distinct_colors_ = colors_;
  std::sort(distinct_colors_.begin(), distinct_colors_.end());
  distinct_colors_.erase(std::unique(distinct_colors_.begin(), distinct_colors_.end()),
                         distinct_colors_.end());
  auto lines = line_entries(segments_, angle_);
  // Entries are sorted by line, then start: an overlap shows up against the
  // furthest end seen so far on the same line. Touching endpoints are allowed.
  for (std::size_t i = 1, reach_id = 0; i < lines.size(); ++i) {
    if (std::abs(lines[i].c - lines[i - 1].c) > cfg_.epsilon) {
      reach_id = i;
      continue;
    }
    if (lines[i].lo < lines[reach_id].hi - cfg_.epsilon)
      throw Error(ErrorKind::DegenerateInput,
                  "RainbowIndex: collinear overlapping segments " + std::to_string(lines[reach_id].id) +
                      " and " + std::to_string(lines[i].id));
    if (lines[i].hi > lines[reach_id].hi) reach_id = i;
  }
}

RainbowIndex::~RainbowIndex() = default;
RainbowIndex::RainbowIndex(RainbowIndex&&) noexcept = default;
RainbowIndex& RainbowIndex::operator=(RainbowIndex&&) noexcept = default;

const RainbowIndex::Frame& RainbowIndex::frame_for(double query_angle) const {
  for (const auto& f : frames_)
    if (parallel(f->query_angle, query_angle)) return *f;
  SkewFrame fr(angle_, query_angle);
  const double inf = std::numeric_limits<double>::infinity();
  const double slack = cfg_.epsilon;
  std::vector<StabTree::Item> boxes;
  std::vector<int> box_color;
  std::vector<double> box_below;

  std::vector<int> by_color(segments_.size());
  for (std::size_t i = 0; i < by_color.size(); ++i) by_color[i] = static_cast<int>(i);
  std::stable_sort(by_color.begin(), by_color.end(),
                   [&](int a, int b) { return colors_[a] < colors_[b]; });

  // Vertical decomposition of one color by a sweep along s.
  std::size_t start = 0;
  while (start < by_color.size()) {
    std::size_t end = start;
    while (end < by_color.size() && colors_[by_color[end]] == colors_[by_color[start]]) ++end;
    const int color = colors_[by_color[start]];
    struct Ev {
      double s;
      int kind;  // 0 insert, 1 remove
      int id;
    };
    std::vector<Ev> events;
    std::vector<double> t(segments_.size()), lo(segments_.size()), hi(segments_.size());
    for (std::size_t k = start; k < end; ++k) {
      int id = by_color[k];
      const Segment& sg = segments_[id];
      t[id] = 0.5 * (fr.t(sg.a) + fr.t(sg.b));
      lo[id] = std::min(fr.s(sg.a), fr.s(sg.b));
      hi[id] = std::max(fr.s(sg.a), fr.s(sg.b));
      events.push_back({lo[id], 0, id});
      events.push_back({hi[id], 1, id});
    }
    std::sort(events.begin(), events.end(), [](const Ev& a, const Ev& b) {
      return a.s != b.s ? a.s < b.s : a.kind < b.kind;
    });
    std::set<std::pair<double, int>> active;
    std::vector<double> open_from(segments_.size());
    std::vector<int> below(segments_.size(), -1);
    auto close = [&](int id, double s) {
      double tb = below[id] < 0 ? -inf : t[below[id]];
      boxes.push_back({open_from[id] - slack, s + slack, t[id], static_cast<int>(boxes.size())});
      box_color.push_back(color);
      box_below.push_back(tb);
    };
    for (const Ev& e : events) {
      if (e.kind == 0) {
        auto it = active.insert({t[e.id], e.id}).first;
        int b = it == active.begin() ? -1 : std::prev(it)->second;
        auto nx = std::next(it);
        if (nx != active.end()) {
          close(nx->second, e.s);
          open_from[nx->second] = e.s;
          below[nx->second] = e.id;
        }
        open_from[e.id] = e.s;
        below[e.id] = b;
      } else {
        auto it = active.find({t[e.id], e.id});
        int b = it == active.begin() ? -1 : std::prev(it)->second;
        auto nx = std::next(it);
        close(e.id, e.s);
        if (nx != active.end()) {
          close(nx->second, e.s);
          open_from[nx->second] = e.s;
          below[nx->second] = b;
        }
        active.erase(it);
      }
    }
    start = end;
  }
  frames_.push_back(std::unique_ptr<Frame>(
      new Frame{query_angle, fr, std::move(box_color), std::move(box_below), StabTree(std::move(boxes))}));
  return *frames_.back();
}

std::size_t RainbowIndex::box_count(double query_angle) const {
  if (segments_.empty() || parallel(query_angle, angle_)) return 0;
  return frame_for(query_angle).tree.size();
}

std::vector<int> RainbowIndex::colors_hit(const Segment& q) const {
  validate(q, cfg_);
  std::set<int> hit;
  if (segments_.empty()) return {};
  const double qa = direction_of(q);
  const std::size_t want = distinct_colors_.size();
  if (parallel(qa, angle_)) {
    auto lines = line_entries(segments_, angle_);
    line_query(lines, angle_, q, cfg_.epsilon, [&](int id) {
      hit.insert(colors_[id]);
      return hit.size() < want;
    });
    return {hit.begin(), hit.end()};
  }
  const Frame& f = frame_for(qa);
  double s_q = 0.5 * (f.frame.s(q.a) + f.frame.s(q.b));
  double t1 = std::min(f.frame.t(q.a), f.frame.t(q.b));
  double t2 = std::max(f.frame.t(q.a), f.frame.t(q.b));
  const double slack = cfg_.epsilon;
  // A box (region under a segment at height t_h, above t_below) contains the
  // query point when t_below < t1 <= t_h <= t2.
  f.tree.query(s_q, t1 - slack, t2 + slack, [&](int b) {
    if (f.box_below[b] < t1 + slack) hit.insert(f.box_color[b]);
    return hit.size() < want;
  });
  return {hit.begin(), hit.end()};
}

bool RainbowIndex::query(const Segment& q) const {
  return colors_hit(q).size() == distinct_colors_.size();
}

bool ris_all_colors(const RainbowIndex& index, const Shape& query) {
  const auto* seg = std::get_if<Segment>(&query);
  if (!seg) throw Error(ErrorKind::UnsupportedPair, "ris_all_colors: query must be a segment");
  return index.query(*seg);
}

// ---------------------------------------------------------------------------
// CoverIndex

struct CoverIndex::Bucket {
  double angle = 0.0;
  std::vector<LineEntry> lines;
  struct Frame {
    double query_angle;
    SkewFrame frame;
    StabTree tree;
  };
  std::vector<std::unique_ptr<Frame>> frames;
};

CoverIndex::CoverIndex(std::vector<Segment> objects, const std::vector<IntervalRep>& reps,
                       const PredicateConfig& cfg)
    : objects_(std::move(objects)), cfg_(cfg), bucket_(std::make_unique<Bucket>()) {
  if (objects_.size() != reps.size())
    throw Error(ErrorKind::Parameter, "CoverIndex: one interval representation per object required");
  first_.push_back(0);
  for (const IntervalRep& rep : reps) {
    intervals_.insert(intervals_.end(), rep.intervals.begin(), rep.intervals.end());
    first_.push_back(intervals_.size());
  }
  bucket_->angle = common_direction(objects_, "CoverIndex");
  bucket_->lines = line_entries(objects_, bucket_->angle);
}

CoverIndex::~CoverIndex() = default;
CoverIndex::CoverIndex(CoverIndex&&) noexcept = default;
CoverIndex& CoverIndex::operator=(CoverIndex&&) noexcept = default;

template <class F>
void CoverIndex::for_each_hit(const Segment& q, F&& f) const {
  if (objects_.empty()) return;
  // Candidate search uses a loose slack; the exact predicate decides.
  const double slack = 1e-7;
  auto exact = [&](int id) { return segment_hit(q, objects_[id], cfg_.epsilon) ? f(id) : true; };
  const double qa = direction_of(q);
  if (parallel(qa, bucket_->angle)) {
    line_query(bucket_->lines, bucket_->angle, q, slack, exact);
    return;
  }
  Bucket::Frame* fr = nullptr;
  for (auto& cand : bucket_->frames)
    if (parallel(cand->query_angle, qa)) fr = cand.get();
  if (!fr) {
    SkewFrame sk(bucket_->angle, qa);
    std::vector<StabTree::Item> items;
    for (int i = 0; i < static_cast<int>(objects_.size()); ++i) {
      const Segment& o = objects_[i];
      double s1 = sk.s(o.a), s2 = sk.s(o.b);
      items.push_back({std::min(s1, s2) - slack, std::max(s1, s2) + slack,
                       0.5 * (sk.t(o.a) + sk.t(o.b)), i});
    }
    bucket_->frames.push_back(
        std::unique_ptr<Bucket::Frame>(new Bucket::Frame{qa, sk, StabTree(std::move(items))}));
    fr = bucket_->frames.back().get();
  }
  double s_q = 0.5 * (fr->frame.s(q.a) + fr->frame.s(q.b));
  double t1 = std::min(fr->frame.t(q.a), fr->frame.t(q.b));
  double t2 = std::max(fr->frame.t(q.a), fr->frame.t(q.b));
  fr->tree.query(s_q, t1 - slack, t2 + slack, [&](int i) { return exact(fr->tree.item(i).id); });
}

CoverIndex::Probe CoverIndex::probe(const Segment& q) const {
  std::vector<Interval> hits;
  for_each_hit(q, [&](int id) {
    hits.insert(hits.end(), intervals_.begin() + first_[id], intervals_.begin() + first_[id + 1]);
    return true;
  });
  Probe p;
  p.hits_ = IntervalRep::normalized(std::move(hits));
  return p;
}

bool CoverIndex::covers(const Segment& q, const Interval& range) const {
  return range.lo > range.hi || probe(q).covers(range);
}

bool CoverIndex::avoids(const Segment& q, const Interval& range) const {
  return probe(q).avoids(range);
}

bool covers_query(const CoverIndex& ci, const Shape& q, const Interval& range) {
  const auto* seg = std::get_if<Segment>(&q);
  if (!seg) throw Error(ErrorKind::UnsupportedPair, "covers_query: query must be a segment");
  return ci.covers(*seg, range);
}

// ---------------------------------------------------------------------------
// Extended interval searching

namespace {

void search_rec(const CoverIndex::Probe& ci, const IntervalRep& incoming, int lo, int hi,
                std::vector<Interval>& out) {
  // Parts of [lo, hi] not already known from `incoming`.
  bool gaps_covered = true;
  int cursor = lo;
  for (const Interval& iv : incoming.clip({lo, hi}).intervals) {
    if (cursor < iv.lo && !ci.covers({cursor, iv.lo - 1})) {
      gaps_covered = false;
      break;
    }
    cursor = iv.hi + 1;
  }
  if (gaps_covered && cursor <= hi && !ci.covers({cursor, hi})) gaps_covered = false;
  if (gaps_covered) {
    out.push_back({lo, hi});
    return;
  }
  if (ci.avoids({lo, hi})) {
    for (const Interval& iv : incoming.clip({lo, hi}).intervals) out.push_back(iv);
    return;
  }
  int mid = lo + (hi - lo) / 2;
  search_rec(ci, incoming, lo, mid, out);
  search_rec(ci, incoming, mid + 1, hi, out);
}

}  // namespace

IntervalRep interval_search(const CoverIndex& ci, const Shape& q, const IntervalRep& incoming, int n) {
  const auto* seg = std::get_if<Segment>(&q);
  if (!seg) throw Error(ErrorKind::UnsupportedPair, "interval_search: query must be a segment");
  if (n <= 0) return {};
  std::vector<Interval> out;
  search_rec(ci.probe(*seg), incoming, 0, n - 1, out);
  return IntervalRep::normalized(std::move(out));
}

// ---------------------------------------------------------------------------
// Ball growing

BallTables::BallTables(std::vector<Segment> segments, Ordering ordering, const PredicateConfig& cfg)
    : segments_(std::move(segments)), ordering_(std::move(ordering)), cfg_(cfg) {
  if (ordering_.position.size() != segments_.size())
    throw Error(ErrorKind::Parameter, "BallTables: ordering size mismatch");
}

IntervalRep BallTables::ball(const ColorSequence& s, int v) const {
  const int c = segments_.at(v).slope_class;
  auto first = std::find(s.begin(), s.end(), c);
  if (first == s.end()) return {};
  ColorSequence rest(first, s.end());
  auto it = tables_.find(rest);
  if (it == tables_.end())
    throw Error(ErrorKind::Dependency, "BallTables: table for a required sequence is missing");
  return it->second.at(v);
}

const std::map<int, IntervalRep>& BallTables::grow(const ColorSequence& s) {
  if (s.empty()) throw Error(ErrorKind::Parameter, "grow_balls: empty sequence");
  if (auto it = tables_.find(s); it != tables_.end()) return it->second;
  const int n = this->n();
  std::map<int, IntervalRep> table;
  if (s.size() == 1) {
    for (int v = 0; v < n; ++v)
      if (segments_[v].slope_class == s[0]) table[v] = IntervalRep::from_positions({ordering_.position[v]});
    return tables_[s] = std::move(table);
  }
  ColorSequence skip{s[0]};
  skip.insert(skip.end(), s.begin() + 2, s.end());
  ColorSequence tail(s.begin() + 1, s.end());
  if (!has(skip) || !has(tail))
    throw Error(ErrorKind::Dependency, "grow_balls: shorter sequence tables must be computed first");
  const auto& tail_table = tables_.at(tail);
  std::vector<Segment> objects;
  std::vector<IntervalRep> reps;
  for (const auto& [w, rep] : tail_table) {
    objects.push_back(segments_[w]);
    reps.push_back(rep);
  }
  CoverIndex ci(std::move(objects), reps, cfg_);
  const auto& skip_table = tables_.at(skip);
  for (const auto& [v, incoming] : skip_table)
    table[v] = interval_search(ci, Shape{segments_[v]}, incoming, n);
  return tables_[s] = std::move(table);
}

void BallTables::grow_all(int h, int max_len) {
  for (const ColorSequence& s : all_sequences(h, max_len)) grow(s);
}

long long BallTables::total_intervals() const {
  long long total = 0;
  for (const auto& [s, table] : tables_)
    for (const auto& [v, rep] : table) total += static_cast<long long>(rep.size());
  return total;
}

std::map<int, IntervalRep> grow_balls(BallTables& tables, const ColorSequence& s) {
  return tables.grow(s);
}

std::vector<ColorSequence> all_sequences(int h, int max_len) {
  if (h < 1) throw Error(ErrorKind::Parameter, "all_sequences: h must be positive");
  std::vector<ColorSequence> out;
  std::vector<ColorSequence> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<ColorSequence> next;
    for (const ColorSequence& p : layer)
      for (int c = 1; c <= h; ++c) {
        ColorSequence s = p;
        s.push_back(c);
        next.push_back(s);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

bool segment_diam_at_most(const std::vector<Segment>& segments, int delta, int h,
                          const PredicateConfig& cfg) {
  if (segments.empty()) throw Error(ErrorKind::Parameter, "segment_diam_at_most: empty input");
  if (delta < 0) throw Error(ErrorKind::Parameter, "segment_diam_at_most: delta must be >= 0");
  if (h < 1) throw Error(ErrorKind::Parameter, "segment_diam_at_most: h must be positive");
  std::vector<double> class_angle(h + 1, std::numeric_limits<double>::quiet_NaN());
  for (const Segment& s : segments) {
    validate(s, cfg);
    if (s.slope_class < 1 || s.slope_class > h)
      throw Error(ErrorKind::Parameter, "segment_diam_at_most: slope class outside [1..h]");
    double a = direction_of(s);
    double& ref = class_angle[s.slope_class];
    if (std::isnan(ref)) ref = a;
    else if (!parallel(ref, a))
      throw Error(ErrorKind::Precondition, "segment_diam_at_most: slope class is not parallel");
  }
  for (int c = 1; c <= h; ++c)
    for (int d = c + 1; d <= h; ++d)
      if (!std::isnan(class_angle[c]) && !std::isnan(class_angle[d]) &&
          parallel(class_angle[c], class_angle[d]))
        throw Error(ErrorKind::Precondition, "segment_diam_at_most: two classes share a slope");
  const int n = static_cast<int>(segments.size());
  if (n == 1) return true;
  Ordering ord = compute_ordering(segments, cfg);
  if (!ord.bfs) return false;  // disconnected
  BallTables tables(segments, ord, cfg);
  tables.grow_all(h, delta + 1);
  std::vector<std::vector<Interval>> reach(n);
  for (const ColorSequence& s : all_sequences(h, delta + 1))
    for (const auto& [v, rep] : tables.grow(s))
      reach[v].insert(reach[v].end(), rep.intervals.begin(), rep.intervals.end());
  for (int v = 0; v < n; ++v)
    if (!IntervalRep::normalized(std::move(reach[v])).covers({0, n - 1})) return false;
  return true;
}

}  // namespace geodiam
