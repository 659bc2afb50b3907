#pragma once

// Construction state and the primitive instruction set. Every mutating call
// appends exactly one trace record; nothing else touches the plane.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchstick/config.hpp"
#include "matchstick/numerics.hpp"
#include "matchstick/trace.hpp"

namespace matchstick {

using trace::PointId;
using trace::StickId;

/// Deterministic stand-in for "an arbitrary point" and the other free choices
/// made by the macros.
class ChoiceSource {
 public:
  ChoiceSource(ChoiceStrategy strategy, std::uint64_t seed);

  ChoiceStrategy strategy() const { return strategy_; }
  std::uint64_t seed() const { return seed_; }

  /// Parameter of an interior point on a stick.
  numerics::Ratio interior_parameter();
  /// Height of the zig-zag start in the bisector construction.
  numerics::Ratio zigzag_height();
  /// Angle in degrees, strictly between 10 and 29 inclusive, for trial `k`.
  std::string trial_angle(std::size_t k);
  /// Side of the base line for trial `k`: true means counter-clockwise.
  bool trial_left(std::size_t k) const;
  /// Raw draw for re-choices inside the macros.
  std::uint64_t next() { return rng_(); }

 private:
  ChoiceStrategy strategy_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

struct Stick {
  StickId id;
  PointId a;
  PointId b;
  numerics::Segment2 segment;
  std::uint64_t seq = 0;  // record that created it
};

class Board {
 public:
  explicit Board(Config config);

  Board(const Board&) = delete;
  Board& operator=(const Board&) = delete;
  Board(Board&&) = default;
  Board& operator=(Board&&) = default;

  const Config& config() const { return config_; }
  const numerics::Tolerance& tolerance() const { return tol_; }
  const numerics::EscalationMonitor& monitor() const { return *monitor_; }
  ChoiceSource& choices() { return choices_; }

  // -- primitives ---------------------------------------------------------

  /// Declares an input point. The stored value is the decimal rendering that
  /// goes into the trace, so replays start from identical inputs.
  PointId given(const numerics::Point2& p);
  StickId lay_stick_both_ends(PointId p, PointId q);
  std::pair<StickId, PointId> lay_stick_from_through(PointId p, PointId q);
  StickId lay_stick_through_both(PointId p, PointId q, numerics::Ratio t);
  /// Stick from `p` at `angle_degrees` counter-clockwise from `ref`'s
  /// direction (or from the x axis).
  std::pair<StickId, PointId> lay_stick_free(PointId p, std::optional<StickId> ref,
                                             std::string_view angle_degrees);
  PointId choose_point_on_stick(StickId s, numerics::Ratio t, bool interior_only = true);
  PointId compass_intersect(PointId center, StickId s, std::uint32_t pick);
  PointId mark_crossing(StickId s1, StickId s2);
  numerics::Cmp cmp_unit(PointId p, PointId q);

  void note_output(std::string name, std::string kind, std::vector<PointId> points);
  void note_intersection(std::string name, std::vector<PointId> points);

  // -- inspection (no trace effect) ----------------------------------------

  const numerics::Point2& point(PointId id) const;
  const Stick& stick(StickId id) const;
  std::size_t point_count() const { return points_.size(); }
  std::size_t stick_count() const { return sticks_.size(); }
  /// Sorted unit-distance hits of `center` on stick `s`.
  std::vector<numerics::Point2> compass_candidates(PointId center, StickId s) const;
  /// Existing point within epsilon of `p`, if any.
  std::optional<PointId> find_point(const numerics::Point2& p) const;

  const trace::Trace& trace() const { return trace_; }
  std::size_t primitive_count() const { return primitives_; }

  /// Re-executes a trace on a fresh board under the trace's own settings.
  /// Throws IdSequenceViolation when a recorded id differs from the one
  /// produced.
  static Board replay(const trace::Trace& t);

 private:
  struct CellKey {
    std::int64_t x;
    std::int64_t y;
    bool operator==(const CellKey&) const = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& k) const {
      return std::hash<std::int64_t>()(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
    }
  };

  void check(PointId id) const;
  void check(StickId id) const;
  CellKey cell_of(double x, double y) const;
  /// Unifies with an existing point or creates a new one.
  PointId register_point(numerics::Point2 p);
  PointId create_point(numerics::Point2 p);
  StickId create_stick(PointId a, PointId b);
  std::uint64_t append(trace::Instruction ins, bool primitive);
  const trace::Coord& text(PointId id) const { return point_text_[id.value]; }

  Config config_;
  std::unique_ptr<numerics::EscalationMonitor> monitor_;
  numerics::Tolerance tol_;
  ChoiceSource choices_;
  std::vector<numerics::Point2> points_;
  std::vector<trace::Coord> point_text_;
  std::vector<Stick> sticks_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> cells_;
  double cell_size_ = 0;
  trace::Trace trace_;
  std::size_t primitives_ = 0;
};

}  // namespace matchstick
