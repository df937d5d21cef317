#include "geodiam/instance_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

namespace geodiam {

namespace {

constexpr std::string_view kMagic = "geodiam-instance";
constexpr int kVersion = 1;

struct KindName {
  InstanceKind kind;
  const char* name;
  const char* shape;
};
constexpr KindName kKinds[] = {
    {InstanceKind::UnitDisks, "unit_disks", "disk"},
    {InstanceKind::UnitSquares, "unit_squares", "square"},
    {InstanceKind::Segments, "segments", "segment"},
    {InstanceKind::Triangles, "triangles", "triangle"},
    {InstanceKind::Polylines, "polylines", "polyline"},
};

const KindName& entry(InstanceKind k) { return kKinds[static_cast<int>(k)]; }

[[noreturn]] void fail(int line, std::string_view field, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ", field " + std::string(field) + ": " + msg);
}

void put(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.push_back(' ');
  out.append(buf, res.ptr);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double number(std::string_view tok, int line, std::string_view field) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    fail(line, field, "expected a number, got '" + std::string(tok) + "'");
  return v;
}

template <class Int>
Int integer(std::string_view tok, int line, std::string_view field) {
  Int v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    fail(line, field, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

void arity(const std::vector<std::string_view>& t, std::size_t n, int line, std::string_view field) {
  if (t.size() != n)
    fail(line, field, "expected " + std::to_string(n - 1) + " values, got " + std::to_string(t.size() - 1));
}

Shape parse_shape(const std::vector<std::string_view>& t, int line) {
  const std::string_view what = t[0];
  auto num = [&](std::size_t i) { return number(t[i], line, what); };
  if (what == "disk") {
    arity(t, 3, line, what);
    return UnitDisk{{num(1), num(2)}};
  }
  if (what == "square") {
    arity(t, 3, line, what);
    return UnitSquare{{num(1), num(2)}};
  }
  if (what == "segment") {
    arity(t, 6, line, what);
    return Segment{{num(1), num(2)}, {num(3), num(4)}, integer<int>(t[5], line, "segment class")};
  }
  if (what == "triangle") {
    arity(t, 7, line, what);
    return Triangle{{num(1), num(2)}, {num(3), num(4)}, {num(5), num(6)}};
  }
  if (what == "polyline") {
    if (t.size() < 2) fail(line, what, "missing vertex count");
    int m = integer<int>(t[1], line, "polyline count");
    if (m < 1) fail(line, "polyline count", "need at least one vertex");
    arity(t, 2 + 2 * static_cast<std::size_t>(m), line, what);
    Polyline p;
    for (int i = 0; i < m; ++i) p.vertices.push_back({num(2 + 2 * i), num(3 + 2 * i)});
    return p;
  }
  fail(line, "record", "unknown record '" + std::string(what) + "'");
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }
bool same_bits(Point a, Point b) { return same_bits(a.x, b.x) && same_bits(a.y, b.y); }

bool same_shape(const Shape& a, const Shape& b) {
  if (a.index() != b.index()) return false;
  switch (kind_of(a)) {
    case ShapeKind::UnitDisk: return same_bits(std::get<UnitDisk>(a).center, std::get<UnitDisk>(b).center);
    case ShapeKind::UnitSquare: return same_bits(std::get<UnitSquare>(a).center, std::get<UnitSquare>(b).center);
    case ShapeKind::Segment: {
      const auto &x = std::get<Segment>(a), &y = std::get<Segment>(b);
      return same_bits(x.a, y.a) && same_bits(x.b, y.b) && x.slope_class == y.slope_class;
    }
    case ShapeKind::Triangle: {
      const auto &x = std::get<Triangle>(a), &y = std::get<Triangle>(b);
      return same_bits(x.a, y.a) && same_bits(x.b, y.b) && same_bits(x.c, y.c);
    }
    case ShapeKind::Polyline: {
      const auto &x = std::get<Polyline>(a).vertices, &y = std::get<Polyline>(b).vertices;
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!same_bits(x[i], y[i])) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

const char* to_string(InstanceKind kind) noexcept { return entry(kind).name; }

std::optional<InstanceKind> parse_instance_kind(std::string_view name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  return std::nullopt;
}

ShapeKind shape_kind_of(InstanceKind kind) { return static_cast<ShapeKind>(static_cast<int>(kind)); }

InstanceFile parse_instance(std::string_view text) {
  InstanceFile inst;
  bool header = false, have_kind = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto t = tokens(line);
    if (t.empty() || t[0].front() == '#') continue;
    if (!header) {
      if (t[0] != kMagic) fail(line_no, "header", "expected '" + std::string(kMagic) + " " + std::to_string(kVersion) + "'");
      arity(t, 2, line_no, "header");
      if (integer<int>(t[1], line_no, "version") != kVersion) fail(line_no, "version", "unsupported version");
      header = true;
      continue;
    }
    const std::string_view key = t[0];
    if (key == "kind") {
      arity(t, 2, line_no, "kind");
      if (have_kind) fail(line_no, "kind", "repeated");
      if (!inst.shapes.empty()) fail(line_no, "kind", "must precede the shapes");
      auto k = parse_instance_kind(t[1]);
      if (!k) fail(line_no, "kind", "unknown kind '" + std::string(t[1]) + "'");
      inst.kind = *k;
      have_kind = true;
    } else if (key == "seed") {
      arity(t, 2, line_no, "seed");
      inst.seed = integer<std::uint64_t>(t[1], line_no, "seed");
    } else if (key == "meta") {
      if (t.size() < 2) fail(line_no, "meta", "missing key");
      std::string value;
      if (t.size() > 2) {
        value = std::string(line.substr(static_cast<std::size_t>(t[2].data() - line.data())));
        while (!value.empty() && (value.back() == '\r' || value.back() == ' ' || value.back() == '\t')) value.pop_back();
      }
      inst.meta.emplace_back(std::string(t[1]), std::move(value));
    } else if (key == "slopes") {
      SlopeTable s;
      for (std::size_t i = 1; i < t.size(); ++i) s.angles.push_back(number(t[i], line_no, "slopes"));
      inst.slopes = std::move(s);
    } else if (key == "expected") {
      arity(t, 4, line_no, "expected");
      ExpectedAnswer e;
      e.question = std::string(t[1]);
      e.delta = integer<int>(t[2], line_no, "expected delta");
      if (t[3] == "true") e.answer = true;
      else if (t[3] == "false") e.answer = false;
      else fail(line_no, "expected answer", "expected true or false");
      inst.expected = e;
    } else {
      if (!have_kind) fail(line_no, "kind", "shape before the kind line");
      Shape s = parse_shape(t, line_no);
      if (kind_of(s) != shape_kind_of(inst.kind))
        fail(line_no, "kind", "record '" + std::string(key) + "' does not match kind " + to_string(inst.kind));
      inst.shapes.push_back(std::move(s));
    }
  }
  if (!header) fail(line_no, "header", "missing");
  if (!have_kind) fail(line_no, "kind", "missing");
  return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
  std::string out;
  out += std::string(kMagic) + " " + std::to_string(kVersion) + "\n";
  out += std::string("kind ") + to_string(inst.kind) + "\n";
  if (inst.seed) out += "seed " + std::to_string(*inst.seed) + "\n";
  for (const auto& [k, v] : inst.meta) {
    if (k.empty() || k.find_first_of(" \t\n") != std::string::npos || v.find('\n') != std::string::npos)
      throw Error(ErrorKind::Parameter, "serialize_instance: meta keys are single words, values single lines");
    out += "meta " + k + (v.empty() ? "" : " " + v) + "\n";
  }
  if (inst.slopes) {
    out += "slopes";
    for (double a : inst.slopes->angles) put(out, a);
    out += "\n";
  }
  if (inst.expected) {
    const auto& e = *inst.expected;
    if (e.question.empty() || e.question.find_first_of(" \t\n") != std::string::npos)
      throw Error(ErrorKind::Parameter, "serialize_instance: expected question must be a single word");
    out += "expected " + e.question + " " + std::to_string(e.delta) + (e.answer ? " true\n" : " false\n");
  }
  const ShapeKind want = shape_kind_of(inst.kind);
  for (const Shape& s : inst.shapes) {
    if (kind_of(s) != want)
      throw Error(ErrorKind::Parameter, std::string("serialize_instance: shape does not match kind ") + to_string(inst.kind));
    out += entry(inst.kind).shape;
    switch (want) {
      case ShapeKind::UnitDisk: {
        Point c = std::get<UnitDisk>(s).center;
        put(out, c.x);
        put(out, c.y);
        break;
      }
      case ShapeKind::UnitSquare: {
        Point c = std::get<UnitSquare>(s).center;
        put(out, c.x);
        put(out, c.y);
        break;
      }
      case ShapeKind::Segment: {
        const auto& g = std::get<Segment>(s);
        for (double v : {g.a.x, g.a.y, g.b.x, g.b.y}) put(out, v);
        out += " " + std::to_string(g.slope_class);
        break;
      }
      case ShapeKind::Triangle: {
        const auto& g = std::get<Triangle>(s);
        for (double v : {g.a.x, g.a.y, g.b.x, g.b.y, g.c.x, g.c.y}) put(out, v);
        break;
      }
      case ShapeKind::Polyline: {
        const auto& v = std::get<Polyline>(s).vertices;
        out += " " + std::to_string(v.size());
        for (Point p : v) {
          put(out, p.x);
          put(out, p.y);
        }
        break;
      }
    }
    out += "\n";
  }
  return out;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_instance_file(const std::string& path, const InstanceFile& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parameter, "cannot write " + path);
  out << serialize_instance(inst);
  if (!out) throw Error(ErrorKind::Parameter, "write failed for " + path);
}

InstanceFile to_instance_file(const std::vector<Shape>& shapes) {
  InstanceFile inst;
  if (!shapes.empty()) inst.kind = static_cast<InstanceKind>(static_cast<int>(kind_of(shapes.front())));
  for (const Shape& s : shapes)
    if (kind_of(s) != shape_kind_of(inst.kind))
      throw Error(ErrorKind::Parameter, "to_instance_file: mixed shape kinds");
  inst.shapes = shapes;
  return inst;
}

InstanceFile to_instance_file(const GeneratedInstance& gen) {
  InstanceFile inst = to_instance_file(gen.shapes);
  inst.expected = gen.expected;
  inst.meta.emplace_back("tau", std::to_string(gen.tau));
  return inst;
}

bool same_instance(const InstanceFile& a, const InstanceFile& b) {
  if (a.kind != b.kind || a.seed != b.seed || a.meta != b.meta || a.shapes.size() != b.shapes.size()) return false;
  if (a.slopes.has_value() != b.slopes.has_value()) return false;
  if (a.slopes) {
    if (a.slopes->angles.size() != b.slopes->angles.size()) return false;
    for (std::size_t i = 0; i < a.slopes->angles.size(); ++i)
      if (!same_bits(a.slopes->angles[i], b.slopes->angles[i])) return false;
  }
  if (a.expected.has_value() != b.expected.has_value()) return false;
  if (a.expected && (a.expected->question != b.expected->question || a.expected->delta != b.expected->delta ||
                     a.expected->answer != b.expected->answer))
    return false;
  for (std::size_t i = 0; i < a.shapes.size(); ++i)
    if (!same_shape(a.shapes[i], b.shapes[i])) return false;
  return true;
}

}  // namespace geodiam
