#pragma once

// Line-oriented trace format shared by the executor, verifier, renderer and
// oracle. The first line is a header object; each following line is one
// record. Coordinates are decimal strings and are claims, not inputs.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matchstick/config.hpp"
#include "matchstick/numerics.hpp"

namespace matchstick::trace {

struct PointId {
  std::uint32_t value = 0;
  auto operator<=>(const PointId&) const = default;
};

struct StickId {
  std::uint32_t value = 0;
  auto operator<=>(const StickId&) const = default;
};

std::string to_string(PointId id);
std::string to_string(StickId id);
std::optional<PointId> parse_point_id(std::string_view text);
std::optional<StickId> parse_stick_id(std::string_view text);

struct Coord {
  std::string x;
  std::string y;
  bool operator==(const Coord&) const = default;
};

struct Header {
  int version = 1;
  numerics::Bits precision_bits = numerics::kDefaultBits;
  numerics::Bits max_precision_bits = numerics::kDefaultMaxBits;
  std::string epsilon_eq = "2^-128";
  std::string epsilon_cmp = "2^-64";
  std::uint64_t seed = 42;
  std::string choice_strategy = "half";
  int output_digits = 40;
  bool operator==(const Header&) const = default;
};

namespace op {

/// Program input point (an axiom of the construction, not a primitive step).
struct Given {
  PointId point;
  Coord at;
};

/// Stick laid with both points as extremities.
struct LayBothEnds {
  PointId p;
  PointId q;
  StickId stick;
};

/// Stick laid with `p` as extremity, passing through `q`.
struct LayFromThrough {
  PointId p;
  PointId q;
  StickId stick;
  PointId far;
  Coord at;
};

/// Stick laid through two interior points; `t` is the overhang behind `p`.
struct LayThroughBoth {
  PointId p;
  PointId q;
  numerics::Ratio t;
  StickId stick;
  PointId a;
  Coord a_at;
  PointId b;
  Coord b_at;
};

/// A stick laid from `p` in a freely chosen direction, `angle` degrees
/// counter-clockwise from the reference stick (or from the x axis).
struct LayFree {
  PointId p;
  std::optional<StickId> ref;
  std::string angle;
  StickId stick;
  PointId far;
  Coord at;
};

/// Point chosen on a stick.
struct ChoosePoint {
  StickId stick;
  numerics::Ratio t;
  bool interior = true;
  PointId point;
  Coord at;
};

/// Unit-distance compass step against exactly one target stick.
struct Compass {
  PointId center;
  std::vector<StickId> sticks;
  std::uint32_t pick = 0;
  std::uint32_t candidates = 0;
  PointId point;
  Coord at;
};

/// Intersecting two unit circles in one step. Never legal; it exists so that
/// such a claim parses and can be rejected.
struct CompassCircles {
  std::vector<PointId> centers;
  std::uint32_t pick = 0;
  PointId point;
  Coord at;
};

struct MarkCrossing {
  StickId s1;
  StickId s2;
  PointId point;
  Coord at;
};

/// Stick laying used as a measurement.
struct CmpUnit {
  PointId p;
  PointId q;
  numerics::Cmp result = numerics::Cmp::Equal;
};

/// Names a program output. kind: "point" (1 id), "line" (2 ids on the
/// carrier), "circle" (center, on-point).
struct Output {
  std::string name;
  std::string kind;
  std::vector<PointId> points;
};

/// Full candidate list of an intersection statement.
struct IntersectNote {
  std::string name;
  std::vector<PointId> points;
};

}  // namespace op

using Instruction = std::variant<op::Given, op::LayBothEnds, op::LayFromThrough, op::LayThroughBoth,
                                 op::LayFree, op::ChoosePoint, op::Compass, op::CompassCircles,
                                 op::MarkCrossing, op::CmpUnit, op::Output, op::IntersectNote>;

std::string_view op_name(const Instruction& ins);
/// True for the primitive applications (everything but givens and notes).
bool is_primitive(const Instruction& ins);

struct Record {
  std::uint64_t seq = 0;
  Instruction ins;
};

struct Trace {
  Header header;
  std::vector<Record> records;

  std::size_t primitive_count() const;
};

Header make_header(const Config& config);
/// Settings a trace was produced under; throws ParseError on bad values.
Config config_of(const Header& header);

std::string write_header(const Header& header);
std::string write_record(const Record& record);
/// Header line, then one line per record, each terminated by '\n'.
std::string serialize(const Trace& trace);

Header parse_header(std::string_view line);
/// Throws ParseError carrying the offending line number.
Record parse_record(std::string_view line);
Trace parse(std::string_view text);

Trace read_file(const std::string& path);
void write_file(const std::string& path, const Trace& trace);

}  // namespace matchstick::trace
