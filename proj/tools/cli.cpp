#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "geodiam/generators.hpp"
#include "geodiam/instance_io.hpp"
#include "geodiam/oracle.hpp"
#include "geodiam/segments.hpp"
#include "geodiam/shatter.hpp"
#include "geodiam/unit_disk.hpp"
#include "geodiam/unit_square.hpp"

namespace geodiam::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Alg { Oracle, UnitDisk2, UnitSquare, Segments };

Alg parse_alg(const std::string& s) {
  if (s == "oracle") return Alg::Oracle;
  if (s == "unitdisk2") return Alg::UnitDisk2;
  if (s == "unitsquare") return Alg::UnitSquare;
  if (s == "segments") return Alg::Segments;
  throw UsageError("unknown algorithm '" + s + "' (oracle|unitdisk2|unitsquare|segments)");
}

InstanceKind kind_for(Alg a) {
  switch (a) {
    case Alg::UnitDisk2: return InstanceKind::UnitDisks;
    case Alg::UnitSquare: return InstanceKind::UnitSquares;
    case Alg::Segments: return InstanceKind::Segments;
    case Alg::Oracle: break;
  }
  throw UsageError("the oracle has no default instance kind; pass --kind");
}

PredicateConfig config_from_env() {
  PredicateConfig cfg;
  if (const char* e = std::getenv("GEODIAM_EPS")) {
    try {
      std::size_t used = 0;
      cfg.epsilon = std::stod(e, &used);
      if (used != std::string(e).size() || !(cfg.epsilon >= 0.0)) throw std::invalid_argument(e);
    } catch (const std::exception&) {
      throw UsageError(std::string("GEODIAM_EPS is not a non-negative number: ") + e);
    }
  }
  return cfg;
}

int slope_count(const InstanceFile& f) {
  int h = f.slopes ? f.slopes->size() : 0;
  for (const Shape& s : f.shapes)
    if (const auto* g = std::get_if<Segment>(&s)) h = std::max(h, g->slope_class);
  return h;
}

template <class T>
std::vector<Point> centers_of(const InstanceFile& f) {
  std::vector<Point> out;
  for (const Shape& s : f.shapes) out.push_back(std::get<T>(s).center);
  return out;
}

int default_delta(Alg a) { return a == Alg::UnitSquare ? 3 : 2; }

void check_compatible(Alg alg, const InstanceFile& f) {
  if (alg != Alg::Oracle && f.kind != kind_for(alg))
    throw UsageError(std::string("algorithm does not accept kind ") + to_string(f.kind));
}

bool run_alg(Alg alg, const InstanceFile& f, int delta, const PredicateConfig& cfg) {
  check_compatible(alg, f);
  if (delta < 0) throw UsageError("--delta must be non-negative");
  switch (alg) {
    case Alg::Oracle: return diameter_at_most(build_graph(f.shapes, cfg), delta);
    case Alg::UnitDisk2: {
      if (delta != 2) throw UsageError("unitdisk2 decides diameter <= 2 only");
      Diam2Options opt;
      opt.predicate = cfg;
      return decide_diam2(centers_of<UnitDisk>(f), opt);
    }
    case Alg::UnitSquare: {
      UnitSquareOptions opt;
      opt.cfg = cfg;
      return unit_square_diam_at_most(centers_of<UnitSquare>(f), delta, opt);
    }
    case Alg::Segments: {
      std::vector<Segment> segs;
      for (const Shape& s : f.shapes) segs.push_back(std::get<Segment>(s));
      return segment_diam_at_most(segs, delta, std::max(1, slope_count(f)), cfg);
    }
  }
  return false;
}

struct RandomSpec {
  int n = 100;
  double side = 3.0;
  int h = 2;
  double min_len = 1.0;
  double max_len = 2.5;
};

InstanceFile random_instance(InstanceKind kind, const RandomSpec& spec, std::uint64_t seed) {
  InstanceFile f;
  f.kind = kind;
  f.seed = seed;
  switch (kind) {
    case InstanceKind::UnitDisks:
      for (Point p : random_points(spec.n, spec.side, seed)) f.shapes.push_back(UnitDisk{p});
      break;
    case InstanceKind::UnitSquares:
      for (Point p : random_points(spec.n, spec.side, seed)) f.shapes.push_back(UnitSquare{p});
      break;
    case InstanceKind::Segments:
      for (const Segment& s : random_segments(spec.n, spec.h, spec.side, spec.min_len, spec.max_len, seed))
        f.shapes.push_back(s);
      f.slopes = uniform_slopes(spec.h);
      break;
    default:
      throw UsageError("random instances exist for unit_disks, unit_squares and segments");
  }
  f.meta.emplace_back("generator", "uniform");
  f.meta.emplace_back("side", std::to_string(spec.side));
  return f;
}

void emit(const InstanceFile& f, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") out << serialize_instance(f);
  else write_instance_file(path, f);
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diameter of geometric intersection graphs", "geodiam"};
  app.require_subcommand(1);

  std::string alg_name = "oracle", kind_name, out_path, file, system = "neighborhood", seq_text, csv_path,
              out_dir = ".";
  std::optional<int> delta;
  std::uint64_t seed = 1;
  RandomSpec spec;
  int k = 2, d = 3, count = 50, reps = 1, max_size = 4;
  double density = 0.7, tau = 2.0;
  long long budget = 1'000'000;
  std::vector<int> sizes;

  auto* gen = app.add_subcommand("gen", "Write a random or reduction instance");
  gen->add_option("--kind", kind_name, "unit_disks|unit_squares|segments|combk4|h6|ov")->required();
  gen->add_option("--n", spec.n, "Number of shapes (random kinds)");
  gen->add_option("--side", spec.side, "Side of the sampling box");
  gen->add_option("--slopes", spec.h, "Number of slope classes (segments)");
  gen->add_option("--k", k, "Part size (combk4, h6) or set size (ov)");
  gen->add_option("--d", d, "Vector dimension (ov)");
  gen->add_option("--density", density, "Edge probability of the random source graph");
  gen->add_option("--tau", tau, "Spacing parameter of the segment reduction");
  gen->add_option("--seed", seed);
  gen->add_option("--out,-o", out_path, "Output file (default stdout)");

  auto* diam = app.add_subcommand("diam", "Decide diameter <= delta, or compute it with the oracle");
  diam->add_option("file", file)->required();
  diam->add_option("--alg", alg_name, "oracle|unitdisk2|unitsquare|segments");
  diam->add_option("--delta", delta);

  auto* verify = app.add_subcommand("verify", "Cross-check an algorithm against the oracle");
  verify->add_option("file", file, "Instance to check (default: random instances)");
  verify->add_option("--alg", alg_name)->required();
  verify->add_option("--delta", delta);
  verify->add_option("--seed", seed, "First seed");
  verify->add_option("--count", count, "Number of random instances");
  verify->add_option("--n", spec.n, "Largest instance size");
  verify->add_option("--side", spec.side);
  verify->add_option("--slopes", spec.h, "Number of slope classes (segments)");
  verify->add_option("--out-dir", out_dir, "Where disagreement bundles are written");

  auto* shatter = app.add_subcommand("shatter", "Search a shattered set in a neighborhood or rainbow-ball system");
  shatter->add_option("file", file)->required();
  shatter->add_option("--system", system, "neighborhood|rainbow");
  shatter->add_option("--seq", seq_text, "Color sequence for rainbow balls, e.g. 1,2,1");
  shatter->add_option("--k", max_size, "Largest subset size searched");
  shatter->add_option("--budget", budget, "Extension checks for the exhaustive phase");
  shatter->add_option("--seed", seed);

  auto* bench = app.add_subcommand("bench", "Time an algorithm on random instances and append CSV rows");
  bench->add_option("--alg", alg_name)->required();
  bench->add_option("--sizes", sizes)->delimiter(',')->required();
  bench->add_option("--delta", delta);
  bench->add_option("--seed", seed);
  bench->add_option("--reps", reps);
  bench->add_option("--side", spec.side);
  bench->add_option("--slopes", spec.h, "Number of slope classes (segments)");
  bench->add_option("--csv", csv_path, "Append rows here (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const PredicateConfig cfg = config_from_env();

    if (gen->parsed()) {
      InstanceFile f;
      if (auto kind = parse_instance_kind(kind_name)) {
        f = random_instance(*kind, spec, seed);
      } else if (kind_name == "combk4") {
        f = to_instance_file(gen_k4_segments(random_four_partite(k, density, seed), tau));
        f.meta.insert(f.meta.begin(), {"generator", "combk4 k=" + std::to_string(k)});
      } else if (kind_name == "h6") {
        f = to_instance_file(gen_h6_triangles(random_six_partite(k, density, seed), {}, tau));
        f.meta.insert(f.meta.begin(), {"generator", "h6 k=" + std::to_string(k)});
      } else if (kind_name == "ov") {
        f = to_instance_file(gen_ov_strings(random_ov(d, k, seed)));
        f.meta.insert(f.meta.begin(), {"generator", "ov d=" + std::to_string(d) + " size=" + std::to_string(k)});
      } else {
        throw UsageError("unknown kind '" + kind_name + "'");
      }
      f.seed = seed;
      emit(f, out_path, out);
      return kExitOk;
    }

    if (diam->parsed()) {
      Alg alg = parse_alg(alg_name);
      InstanceFile f = read_instance_file(file);
      check_compatible(alg, f);
      if (!delta && alg == Alg::Oracle) {
        auto r = exact_diameter(build_graph(f.shapes, cfg));
        out << (r.infinite() ? std::string("inf") : std::to_string(*r.value)) << "\n";
        if (r.witness) out << "witness " << r.witness->first << " " << r.witness->second << "\n";
        return kExitOk;
      }
      if (!delta && alg != Alg::UnitDisk2) throw UsageError("--delta is required for this algorithm");
      out << yes_no(run_alg(alg, f, delta.value_or(2), cfg)) << "\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      Alg alg = parse_alg(alg_name);
      const int dl = delta.value_or(default_delta(alg));
      if (!file.empty()) {
        InstanceFile f = read_instance_file(file);
        bool a = run_alg(alg, f, dl, cfg);
        bool o = run_alg(Alg::Oracle, f, dl, cfg);
        out << (a == o ? "agree " : "disagree ") << alg_name << "=" << yes_no(a) << " oracle=" << yes_no(o) << "\n";
        return a == o ? kExitOk : kExitFailure;
      }
      if (spec.n < 3) throw UsageError("--n must be at least 3");
      const InstanceKind kind = kind_for(alg);
      int bad = 0;
      for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        RandomSpec si = spec;
        si.n = 3 + static_cast<int>(splitmix64(s) % static_cast<std::uint64_t>(spec.n - 2));
        InstanceFile f = random_instance(kind, si, s);
        bool a = run_alg(alg, f, dl, cfg);
        bool o = run_alg(Alg::Oracle, f, dl, cfg);
        if (a == o) continue;
        ++bad;
        f.meta.emplace_back("algorithm", alg_name + " answered " + yes_no(a));
        f.meta.emplace_back("oracle", std::string("answered ") + yes_no(o) + " for delta " + std::to_string(dl));
        std::filesystem::create_directories(out_dir);
        std::string path = (std::filesystem::path(out_dir) / ("verify-" + alg_name + "-seed" + std::to_string(s) + ".txt")).string();
        write_instance_file(path, f);
        out << "disagreement seed=" << s << " bundle=" << path << "\n";
      }
      out << "verified " << count << " instances, " << bad << " disagreements\n";
      return bad == 0 ? kExitOk : kExitFailure;
    }

    if (shatter->parsed()) {
      InstanceFile f = read_instance_file(file);
      auto g = build_graph(f.shapes, cfg);
      SetSystem sys;
      if (system == "neighborhood") {
        sys = neighborhood_system(g);
      } else if (system == "rainbow") {
        if (f.kind != InstanceKind::Segments) throw UsageError("rainbow balls need a segments instance");
        ColorSequence s;
        std::stringstream ss(seq_text);
        for (std::string tok; std::getline(ss, tok, ',');) {
          try {
            s.push_back(std::stoi(tok));
          } catch (const std::exception&) {
            throw UsageError("--seq expects comma-separated integers");
          }
        }
        if (s.empty()) throw UsageError("--seq is required for rainbow balls");
        sys = rainbow_system(g, s);
      } else {
        throw UsageError("unknown set system '" + system + "'");
      }
      ShatterReport r = search_shattered(sys, max_size, budget, seed);
      out << "size " << r.size << "\nwitness";
      for (int v : r.witness) out << " " << v;
      out << "\nexhaustive " << yes_no(r.exhaustive) << "\nchecks " << r.checks << "\nseed " << r.seed
          << "\nsets " << sys.family.size() << "\n";
      return kExitOk;
    }

    if (bench->parsed()) {
      Alg alg = parse_alg(alg_name);
      const int dl = delta.value_or(default_delta(alg));
      const InstanceKind kind = kind_for(alg);
      if (reps < 1) throw UsageError("--reps must be positive");
      for (int n : sizes)
        if (n < 1) throw UsageError("--sizes must be positive");
      std::ofstream csv;
      std::ostream* sink = &out;
      bool header = true;
      if (!csv_path.empty()) {
        header = !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
        csv.open(csv_path, std::ios::app);
        if (!csv) throw Error(ErrorKind::Parameter, "cannot open " + csv_path);
        sink = &csv;
      }
      if (header) *sink << "algorithm,n,delta,seed,answer,nanos\n";
      for (int n : sizes)
        for (int r = 0; r < reps; ++r) {
          const std::uint64_t s = seed + static_cast<std::uint64_t>(r);
          RandomSpec si = spec;
          si.n = n;
          InstanceFile f = random_instance(kind, si, s);
          auto t0 = std::chrono::steady_clock::now();
          bool a = run_alg(alg, f, dl, cfg);
          auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
          *sink << alg_name << "," << n << "," << dl << "," << s << "," << yes_no(a) << "," << ns << "\n";
          sink->flush();
        }
      if (!csv_path.empty()) out << "appended " << sizes.size() * reps << " rows to " << csv_path << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace geodiam::cli
