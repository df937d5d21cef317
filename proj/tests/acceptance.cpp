// Acceptance run: one PASS/FAIL line per criterion. Criterion 10 is soft; a
// miss writes scaling_warning.txt and does not change the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "disk_support.hpp"
#include "geodiam/generators.hpp"
#include "geodiam/oracle.hpp"
#include "geodiam/segments.hpp"
#include "geodiam/shatter.hpp"
#include "geodiam/unit_disk.hpp"
#include "geodiam/unit_square.hpp"

using namespace geodiam;
namespace ds = disk_support;

namespace {

// Pinned thresholds.
constexpr int kDiskInstances = 500;
constexpr double kSuiteSeconds = 300.0;
constexpr int kSquareInstances = 500;
constexpr int kSegmentInstances = 510;
constexpr int kPseudodiskContexts = 200;
constexpr int kMaxDisksPerContext = 40;
constexpr int kMaxCrossingOverlaps = 2;
constexpr int kRayPairs = 10'000;
constexpr double kRayTolerance = 1e-9;
constexpr int kK4Samples = 200;   // per k
constexpr int kH6Samples = 100;   // per k
constexpr int kOvDraws = 520;
constexpr int kVcInstances = 100;
constexpr long long kShatterBudget = 1'000'000;
constexpr double kDiskSlope = 1.8;
constexpr double kSquareSlope = 1.4;
constexpr int kBallPairs = 300;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Shape> disk_shapes(const std::vector<Point>& pts) {
  std::vector<Shape> out;
  for (Point p : pts) out.push_back(UnitDisk{p});
  return out;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. decide_diam2 against the BFS oracle; both with and without the
// common-neighbour pruning so the flower machinery carries every pair.
Outcome unit_disks() {
  const int ranges[5][2] = {{3, 25}, {26, 60}, {61, 120}, {121, 240}, {241, 400}};
  int bad = 0, trues = 0;
  std::size_t checked = 0, checked_plain = 0;
  for (int i = 0; i < kDiskInstances; ++i) {
    const auto& r = ranges[i % 5];
    std::mt19937_64 rng(1000 + i);
    int n = r[0] + static_cast<int>(rng() % (r[1] - r[0] + 1));
    auto pts = random_points(n, 3.0, 5000 + i);
    bool expect = diameter_at_most(build_graph(disk_shapes(pts)), 2);
    trues += expect;
    Diam2Stats s1, s2;
    Diam2Options plain;
    plain.witness_pruning = false;
    bad += decide_diam2(pts, {}, &s1) != expect;
    bad += decide_diam2(pts, plain, &s2) != expect;
    checked += s1.pairs_checked;
    checked_plain += s2.pairs_checked;
  }
  return {bad == 0, fmt("%d instances (%d true), %d disagreements; flower-checked cell pairs %zu (pruned run), %zu (unpruned run)",
                        kDiskInstances, trues, bad, checked, checked_plain)};
}

// 2. unit squares, delta 1..4.
Outcome unit_squares() {
  int bad = 0, trues = 0;
  for (int i = 0; i < kSquareInstances; ++i) {
    int delta = 1 + i % 4;
    std::mt19937_64 rng(2000 + i);
    int n = 3 + static_cast<int>(rng() % 398);
    double side = delta * std::uniform_real_distribution<double>(0.7, 1.3)(rng);
    auto pts = random_points(n, side, 6000 + i);
    std::vector<Shape> shapes;
    for (Point p : pts) shapes.push_back(UnitSquare{p});
    bool expect = diameter_at_most(build_graph(shapes), delta);
    trues += expect;
    bad += unit_square_diam_at_most(pts, delta) != expect;
  }
  return {bad == 0, fmt("%d instances (%d true), %d disagreements", kSquareInstances, trues, bad)};
}

// 3. segments, h 1..3, delta 2..4, every other instance snapped onto a few
// lines per slope so that same-slope segments overlap.
Outcome segments() {
  int bad = 0, trues = 0, checks = 0, degenerate = 0;
  for (int i = 0; i < kSegmentInstances; ++i) {
    int h = 1 + i % 3;
    std::mt19937_64 rng(3000 + i);
    int n = 3 + static_cast<int>(rng() % 198);
    bool snap = (i / 3) % 2 == 1;
    auto segs = random_segments(n, h, 1.5 + 0.03 * n, 1.5, 3.5, 7000 + i);
    if (snap) {
      ++degenerate;
      SlopeTable t = uniform_slopes(h);
      for (auto& s : segs) {
        Point d = unit_vector(t.angles[s.slope_class - 1]);
        Point nrm{-d.y, d.x};
        double off = dot(nrm, s.a);
        Point shift = (0.5 * std::round(off / 0.5) - off) * nrm;
        s.a = s.a + shift;
        s.b = s.b + shift;
      }
    }
    auto d = exact_diameter(build_graph(std::vector<Shape>(segs.begin(), segs.end())));
    for (int delta = 2; delta <= 4; ++delta) {
      bool expect = !d.infinite() && *d.value <= delta;
      trues += expect;
      ++checks;
      bad += segment_diam_at_most(segs, delta, h) != expect;
    }
  }
  return {bad == 0, fmt("%d instances (%d with collinear overlaps), %d decisions (%d true), %d disagreements",
                        kSegmentInstances, degenerate, checks, trues, bad)};
}

// 4. weak-pseudodisk property of flowers.
Outcome pseudodisks() {
  std::mt19937_64 rng(4);
  int worst = 0, pairs = 0, violations = 0;
  for (int c = 0; c < kPseudodiskContexts; ++c) {
    auto ctx = ds::random_context(rng);
    auto disks = ds::random_disks(ctx, 1 + static_cast<int>(rng() % kMaxDisksPerContext), rng);
    std::vector<std::vector<Point>> flowers;
    for (int k = 0; k < 8; ++k) {
      auto f = ds::containing(disks, ds::random_in(ctx.cell_a, rng));
      if (!f.empty()) flowers.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < flowers.size(); ++i)
      for (std::size_t j = i + 1; j < flowers.size(); ++j) {
        int x = ds::crossing_overlaps(ctx.origin, flowers[i], flowers[j]);
        worst = std::max(worst, x);
        violations += x > kMaxCrossingOverlaps;
        ++pairs;
      }
  }
  return {violations == 0, fmt("%d contexts, %d flower pairs, max crossing overlaps %d, %d violations",
                               kPseudodiskContexts, pairs, worst, violations)};
}

// 5. unique exit along rays from the origin, and ray shooting returns it.
Outcome unique_ray() {
  std::mt19937_64 rng(5);
  int samples = 0, violations = 0;
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  while (samples < kRayPairs) {
    auto ctx = ds::random_context(rng);
    auto disks = ds::random_disks(ctx, 1 + static_cast<int>(rng() % kMaxDisksPerContext), rng);
    CanonicalFamily fam(disks, ctx, CanonicalFamily::Domain::FullCircle);
    for (int k = 0; k < 8; ++k) {
      Point p = ds::random_in(ctx.cell_a, rng);
      if (!(dist(p, ctx.origin) < 0.5)) continue;
      auto dp = ds::containing(disks, p);
      auto f = fam.flower(p);
      if (dp.empty()) continue;
      for (int r = 0; r < 8; ++r) {
        double th = ang(rng);
        ++samples;
        bool ok = ds::exits_along_ray(ctx.origin, dp, th) == 1;
        double shot = flower_ray_shoot(fam, f, Ray(ctx.origin, th)).distance;
        ok = ok && std::abs(shot - ds::radial(ctx.origin, dp, th)) <= kRayTolerance;
        violations += !ok;
      }
    }
  }
  return {violations == 0, fmt("%d (flower, ray) pairs, %d violations", samples, violations)};
}

// 6. 4-clique segments.
Outcome comb_k4() {
  int bad = 0, invalid = 0, cliques = 0, total = 0;
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i < kK4Samples; ++i) {
      double density = 0.5 + 0.45 * (i % 10) / 9.0;
      auto g = random_four_partite(k, density, 10'000 * k + i);
      auto inst = gen_k4_segments(g);
      bool clique = g.has_four_clique();
      cliques += clique;
      invalid += !inst.validation.passed;
      bad += diameter_at_most(build_graph(inst.shapes), 2) != !clique;
      ++total;
    }
  return {bad == 0 && invalid == 0,
          fmt("%d bitmaps over k = 1, 2 (%d with a 4-clique), %d oracle disagreements, %d validation failures", total,
              cliques, bad, invalid)};
}

// 7. 6-hyperclique triangles.
Outcome h6() {
  int bad = 0, invalid = 0, cliques = 0, total = 0;
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i < kH6Samples; ++i) {
      double density = k == 1 ? 0.6 + 0.4 * (i % 5) / 4.0 : 0.85 + 0.15 * (i % 4) / 3.0;
      auto g = random_six_partite(k, density, 20'000 * k + i);
      auto inst = gen_h6_triangles(g);
      bool clique = g.has_hyperclique();
      cliques += clique;
      invalid += !inst.validation.passed;
      bad += diameter_at_most(build_graph(inst.shapes), 2) != !clique;
      ++total;
    }
  return {bad == 0 && invalid == 0,
          fmt("%d triple maps over k = 1, 2 (%d with a 6-hyperclique), %d oracle disagreements, %d validation failures",
              total, cliques, bad, invalid)};
}

// 8. orthogonal vectors to clique.
Outcome ov() {
  int bad = 0, ortho = 0;
  for (int i = 0; i < kOvDraws; ++i) {
    int size = 1 + i % 4;
    auto in = random_ov(3, size, 30'000 + i);
    bool has_ortho = false;
    for (const auto& a : in.a)
      for (const auto& b : in.b) {
        int dot = 0;
        for (int t = 0; t < 3; ++t) dot += a[t] * b[t];
        has_ortho = has_ortho || dot == 0;
      }
    ortho += has_ortho;
    auto inst = gen_ov_strings(in);
    bad += diameter_at_most(build_graph(inst.shapes), 1) != !has_ortho;
  }
  return {bad == 0, fmt("%d draws with d = 3, |A| = |B| <= 4 (%d with an orthogonal pair), %d disagreements", kOvDraws,
                        ortho, bad)};
}

// 9. shattering bounds on axis-parallel bipartite segment graphs.
Outcome vc() {
  int worst_nb = 0, worst_rb = 0, exhaustive = 0, runs = 0;
  auto sequences = all_sequences(2, 3);
  for (int i = 0; i < kVcInstances; ++i) {
    std::mt19937_64 rng(40'000 + i);
    int n = 20 + static_cast<int>(rng() % 281);
    double box = 2.0 * std::sqrt(static_cast<double>(n));
    std::uniform_real_distribution<double> u(0, box), len(0.5, 0.25 * box);
    std::vector<Shape> shapes;
    for (int k = 0; k < n; ++k) {
      Point a{u(rng), u(rng)};
      if (k % 2 == 0) shapes.push_back(Segment{a, {a.x + len(rng), a.y}, 1});
      else shapes.push_back(Segment{a, {a.x, a.y + len(rng)}, 2});
    }
    auto g = build_graph(shapes);
    auto rep = search_shattered(neighborhood_system(g), 9, kShatterBudget, i);
    worst_nb = std::max(worst_nb, rep.size);
    exhaustive += rep.exhaustive;
    ++runs;
    for (const auto& s : sequences) {
      auto r = search_shattered(rainbow_system(g, s), 5, kShatterBudget, i);
      worst_rb = std::max(worst_rb, r.size);
      exhaustive += r.exhaustive;
      ++runs;
    }
  }
  return {worst_nb <= 8 && worst_rb <= 4,
          fmt("%d instances; largest shattered set: %d (neighbourhoods, bound 8), %d (rainbow balls |S| <= 3, bound 4); "
              "%d of %d searches exhaustive",
              kVcInstances, worst_nb, worst_rb, exhaustive, runs)};
}

double slope(const std::vector<double>& n, const std::vector<double>& t) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    mx += std::log(n[i]);
    my += std::log(t[i]);
  }
  mx /= n.size();
  my /= n.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    sxy += (std::log(n[i]) - mx) * (std::log(t[i]) - my);
    sxx += (std::log(n[i]) - mx) * (std::log(n[i]) - mx);
  }
  return sxy / sxx;
}

double median_seconds(const std::function<void()>& f, int reps) {
  std::vector<double> ts;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    ts.push_back(seconds_since(t0));
  }
  std::sort(ts.begin(), ts.end());
  return ts[ts.size() / 2];
}

// 10. log-log slopes on dense instances: side 2.8 keeps every pair of disks
// within distance 4, so the answer is true and no early rejection happens.
Outcome scaling() {
  const std::vector<double> sizes{1000, 2000, 4000, 8000, 16000};
  std::vector<double> td, ts;
  std::ofstream csv("scaling.csv");
  csv << "algorithm,n,seconds,answer\n";
  for (double n : sizes) {
    auto pts = random_points(static_cast<int>(n), 2.8, 77);
    bool a = false, b = false;
    td.push_back(median_seconds([&] { a = decide_diam2(pts); }, 3));
    ts.push_back(median_seconds([&] { b = unit_square_diam_at_most(pts, 3); }, 3));
    csv << "unitdisk2," << n << "," << td.back() << "," << a << "\n";
    csv << "unitsquare," << n << "," << ts.back() << "," << b << "\n";
  }
  double sd = slope(sizes, td), ss = slope(sizes, ts);
  bool pass = sd <= kDiskSlope && ss <= kSquareSlope;
  std::string detail = fmt("decide_diam2 slope %.2f (<= %.1f), unit squares delta 3 slope %.2f (<= %.1f); times in scaling.csv",
                           sd, kDiskSlope, ss, kSquareSlope);
  if (!pass) std::ofstream("scaling_warning.txt") << "soft scaling threshold missed: " << detail << "\n";
  else std::remove("scaling_warning.txt");
  return {pass, detail};
}

// 11. rainbow balls from the interval tables against product-graph BFS.
Outcome balls() {
  int bad = 0, vertices = 0;
  for (int i = 0; i < kBallPairs; ++i) {
    std::mt19937_64 rng(50'000 + i);
    int h = 2 + static_cast<int>(rng() % 2);
    int n = 10 + static_cast<int>(rng() % 51);
    auto segs = random_segments(n, h, 1.5 + 0.08 * n, 0.8, 2.5, 60'000 + i);
    int len = 1 + static_cast<int>(rng() % 4);
    ColorSequence s;
    for (int k = 0; k < len; ++k) s.push_back(1 + static_cast<int>(rng() % h));
    auto g = build_graph(std::vector<Shape>(segs.begin(), segs.end()));
    std::vector<int> colors;
    for (const auto& x : segs) colors.push_back(x.slope_class);
    BallTables tables(segs, compute_ordering(segs, g));
    if (len > 1) tables.grow_all(h, len - 1);
    auto got = grow_balls(tables, s);
    for (int v = 0; v < n; ++v) {
      if (colors[v] != s.front()) continue;
      ++vertices;
      std::vector<int> mine;
      auto it = got.find(v);
      if (it != got.end())
        for (int p : it->second.positions()) mine.push_back(tables.ordering().order[p]);
      std::sort(mine.begin(), mine.end());
      bad += mine != rainbow_ball_bfs(g, colors, s, v);
    }
  }
  return {bad == 0, fmt("%d (instance, S) pairs, %d balls compared, %d disagreements", kBallPairs, vertices, bad)};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  struct Named {
    const char* name;
    Outcome (*run)();
  };
  const Named criteria[] = {
      {"unit-disk diameter 2 vs oracle", unit_disks},
      {"unit squares vs oracle", unit_squares},
      {"segments vs oracle", segments},
      {"weak-pseudodisk flowers", pseudodisks},
      {"unique ray exit", unique_ray},
      {"4-clique segment reduction", comb_k4},
      {"6-hyperclique triangle reduction", h6},
      {"orthogonal vectors clique reduction", ov},
      {"shattering bounds", vc},
      {"scaling (soft)", scaling},
      {"ball growing vs product-graph BFS", balls},
  };
  std::vector<Outcome> results;
  std::vector<double> secs;
  for (const auto& c : criteria) {
    auto t = Clock::now();
    try {
      results.push_back(c.run());
    } catch (const std::exception& e) {
      results.push_back({false, std::string("exception: ") + e.what()});
    }
    secs.push_back(seconds_since(t));
    std::fprintf(stderr, "finished %s in %.1f s\n", c.name, secs.back());
  }
  const double total = seconds_since(t0);
  bool time_ok = total < kSuiteSeconds;
  results[0].pass = results[0].pass && time_ok;
  results[0].detail += fmt("; suite %.0f s (< %.0f s)", total, kSuiteSeconds);

  bool hard_ok = true;
  std::ofstream report("acceptance_report.txt");
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::string line = fmt("%s criterion %zu (%s): ", results[i].pass ? "PASS" : "FAIL", i + 1, criteria[i].name) +
                       results[i].detail + fmt(" [%.1f s]", secs[i]);
    std::puts(line.c_str());
    report << line << "\n";
    if (i != 9) hard_ok = hard_ok && results[i].pass;
  }
  return hard_ok ? 0 : 1;
}
