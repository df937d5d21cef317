#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geodiam/generators.hpp"
#include "geodiam/geometry.hpp"

namespace geodiam {

enum class InstanceKind { UnitDisks, UnitSquares, Segments, Triangles, Polylines };

const char* to_string(InstanceKind kind) noexcept;
std::optional<InstanceKind> parse_instance_kind(std::string_view name);
ShapeKind shape_kind_of(InstanceKind kind);

struct InstanceFile {
  InstanceKind kind = InstanceKind::UnitDisks;
  std::vector<Shape> shapes;
  std::optional<SlopeTable> slopes;
  std::optional<ExpectedAnswer> expected;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> meta;  // ordered key/value pairs
};

// Line-oriented text format:
//
//   geodiam-instance 1
//   kind unit_disks            unit_disks|unit_squares|segments|triangles|polylines
//   seed 42                    optional
//   meta generator gen_k4      optional, repeatable: key, then the rest of the line
//   slopes 0 1.5707963267948966 optional, angles in [0, pi)
//   expected diam<=2 2 true    optional: question, delta, answer
//   disk 0.5 1.25              one shape per line:
//   square x y | segment ax ay bx by class | triangle ax ay bx by cx cy
//   polyline m x1 y1 ... xm ym
//
// Blank lines and lines starting with '#' are skipped. Numbers are written in
// the shortest decimal form that reads back to the same double.
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile& inst);

InstanceFile read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const InstanceFile& inst);

// Kind inferred from the first shape; all shapes must share it.
InstanceFile to_instance_file(const GeneratedInstance& gen);
InstanceFile to_instance_file(const std::vector<Shape>& shapes);

// Bitwise equality of every coordinate and field.
bool same_instance(const InstanceFile& a, const InstanceFile& b);

}  // namespace geodiam
