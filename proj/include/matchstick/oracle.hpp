#pragma once

// Analytic ruler-and-compass semantics for .euclid programs, and the
// comparison of constructed outputs against them. Never reads board state
// while evaluating.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchstick/board.hpp"
#include "matchstick/config.hpp"
#include "matchstick/lang.hpp"
#include "matchstick/numerics.hpp"
#include "matchstick/trace.hpp"

namespace matchstick::oracle {

struct Value {
  lang::Type type = lang::Type::Point;
  numerics::Point2 point;
  numerics::Line2 line;
  numerics::Circle2 circle;
};

struct Evaluation {
  numerics::Bits bits = 0;
  std::map<std::string, Value> values;
  std::vector<std::string> outputs;                   // in statement order
  std::map<std::string, std::size_t> intersections;  // let name -> point count
  /// First failing statement when evaluated with stop_at_error.
  std::optional<ErrorCode> stopped;
  std::size_t stopped_at = 0;
};

/// Working precision of the analytic side: twice the configured precision,
/// at least 512 bits.
numerics::Bits analytic_bits(const Config& config);

/// Evaluates every statement with closed-form formulas. Failures mirror the
/// lowering (NoIntersection, PickOutOfRange, DegenerateSegment, ...): thrown,
/// or recorded in `stopped` when `stop_at_error` is set.
Evaluation evaluate_analytic(const lang::Program& program, const Config& config, bool stop_at_error = false);

/// What the constructive side produced, read from trace notes.
struct Constructed {
  std::map<std::string, std::vector<numerics::Point2>> outputs;
  std::map<std::string, std::size_t> intersections;
};

Constructed constructed_outputs(const Board& board);
/// Replays the trace to recover point coordinates.
Constructed constructed_outputs(const trace::Trace& t);

/// One constructed point against its analytic reference: the point itself,
/// the foot on an analytic line, or the radial projection onto a circle.
struct PointCheck {
  numerics::Point2 constructed;
  numerics::Point2 analytic;
  numerics::Scalar dx;
  numerics::Scalar dy;
};

struct OutputCheck {
  std::string name;
  lang::Type type = lang::Type::Point;
  std::vector<PointCheck> points;
  bool pass = false;
};

struct CountCheck {
  std::string name;
  std::size_t constructed = 0;
  std::size_t analytic = 0;
  bool pass() const { return constructed == analytic; }
};

struct OracleReport {
  numerics::Scalar epsilon;
  std::vector<OutputCheck> outputs;
  std::vector<CountCheck> counts;

  bool pass() const;
  /// Largest per-coordinate delta over all outputs (zero when none).
  numerics::Scalar max_delta() const;
  std::string to_text() const;
  std::string to_json() const;
};

/// Per-coordinate |delta| <= epsilon_cmp for every output, and equal
/// intersection counts. Throws MissingOutput when an output the analytic
/// side reached is absent from `constructed`.
OracleReport compare(const lang::Program& program, const Constructed& constructed, const Config& config);

}  // namespace matchstick::oracle
