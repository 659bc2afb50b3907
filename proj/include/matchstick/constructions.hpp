#pragma once

// Macro library. Every construction here is a procedure over Board
// primitives; nothing is drawn except through the board. Lines are chains of
// overlapping unit sticks, extended on demand.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matchstick/board.hpp"

namespace matchstick::constructions {

/// Plain double vector used only for planning (which stick, which pick).
struct Vec {
  double x = 0;
  double y = 0;
};

Vec to_vec(const numerics::Point2& p);

using LineId = std::uint32_t;

struct ChainStick {
  StickId id;
  double lo = 0;  // parameter range along the carrier
  double hi = 0;
  numerics::Ratio start;  // exact offset of the stick's first extremity
  bool forward = true;    // second extremity at start + 1
};

/// A line as an extendable chain of collinear sticks. Offsets are measured
/// from vertex 0 along the carrier direction. The chain grows along two
/// interleaved point sequences at non-integer offsets x0 + j and y0 + j, so
/// extension never passes through an integer vertex; vertices are marked on
/// demand.
struct LineHandle {
  numerics::Line2 carrier;
  Vec anchor;  // vertex 0
  Vec dir;
  std::vector<ChainStick> sticks;
  std::map<long, PointId> vertices;
  bool grown = false;
  numerics::Ratio x0;
  numerics::Ratio y0;
  std::map<long, PointId> xs;
  std::map<long, PointId> ys;
  double cover_lo = 0;
  double cover_hi = 1;

  double param(const Vec& p) const { return (p.x - anchor.x) * dir.x + (p.y - anchor.y) * dir.y; }
  Vec at(double t) const { return {anchor.x + t * dir.x, anchor.y + t * dir.y}; }
};

struct CircleSpec {
  PointId center;
  PointId on_point;
};

/// Unit-spaced lines around an origin: vertical[k] is parallel to the second
/// axis at signed distance k along the first; horizontal[k] likewise.
struct GridHandle {
  PointId origin;
  LineId first_axis;
  LineId second_axis;
  std::map<long, LineId> vertical;
  std::map<long, LineId> horizontal;
  long cell_x = 0;  // covered cell is [cell_x, cell_x+1] x [cell_y, cell_y+1]
  long cell_y = 0;
  Vec target;       // target in grid coordinates
  std::size_t spiral_lines = 0;
};

struct Bisector {
  LineId line;
  PointId midpoint;
  PointId upper;  // crossing of the upper zig-zag chains
  PointId lower;
};

struct NearLines {
  LineId parallel;
  LineId perpendicular;
};

/// Forced trial settings for the perpendicular construction.
struct TrialPlan {
  std::vector<std::string> angles;  // degrees; empty means the board's choice source
  std::vector<bool> left;           // side per trial; empty means by seed
};

struct PerpendicularReport {
  std::size_t trials = 0;
  std::vector<PointId> apexes;  // the S points, in trial order
  bool used_pair = false;
};

struct CircleLineReport {
  bool direct = false;
  std::optional<PointId> reference;       // A on the line
  std::optional<PointId> scaled_center;   // O'
};

struct CircleCircleReport {
  std::optional<PointId> radical_center;  // P
  bool swapped = false;
};

class Constructor {
 public:
  explicit Constructor(Board& board);

  Board& board() { return board_; }
  const LineHandle& line(LineId id) const { return lines_.at(id); }
  std::size_t line_count() const { return lines_.size(); }

  LineId line_from_stick(StickId s);
  /// Line seeded by a stick whose first extremity sits at offset `start`
  /// from `origin`, which becomes vertex 0.
  LineId line_from_seed(StickId s, numerics::Ratio start, PointId origin);
  /// Extends `line` until the chain has a vertex at `offset`; returns it.
  PointId vertex(LineId line, long offset);
  /// Marks the point at an exact rational offset (vertices excluded).
  PointId point_at(LineId line, numerics::Ratio offset);
  std::optional<long> vertex_offset(LineId line, PointId p) const;
  /// Extends the chain so that every parameter in [lo, hi] lies well inside
  /// some stick.
  void ensure_covers(LineId line, double lo, double hi);

  /// Unit-distance point from `center` on `line` nearest to `predicted`.
  PointId compass_to(PointId center, LineId line, const Vec& predicted);
  PointId intersect_lines(LineId l1, LineId l2);

  // -- constructions -------------------------------------------------------

  LineId extend_line(StickId seed, bool toward_second, long length);
  LineId perpendicular_at(LineId d, PointId a, const TrialPlan& plan = {},
                          PerpendicularReport* report = nullptr);
  GridHandle coordinate_grid(PointId origin, LineId first_axis, LineId second_axis, PointId target);
  Bisector perpendicular_bisector(PointId a, PointId b, LineId ab);
  NearLines parallel_and_perpendicular_near(LineId d, PointId a);
  bool are_parallel(LineId l1, LineId l2);
  LineId line_through(PointId a, PointId b, std::size_t* halvings = nullptr);
  LineId parallel_through(LineId l, PointId b);
  LineId perpendicular_through(LineId l, PointId b);
  std::vector<PointId> circle_line_intersect(const CircleSpec& circle, LineId l,
                                             CircleLineReport* report = nullptr);
  std::vector<PointId> circle_circle_intersect(const CircleSpec& c1, const CircleSpec& c2,
                                               CircleCircleReport* report = nullptr);
  PointId antipodal_on_circle(const CircleSpec& circle);
  PointId rotate90_on_circle(const CircleSpec& circle, bool counter_clockwise = true);
  PointId translate_segment(PointId p, PointId q, PointId t);
  PointId midpoint(PointId a, PointId b);

 private:
  LineHandle& handle(LineId id) { return lines_.at(id); }
  Vec vec(PointId p) const { return to_vec(board_.point(p)); }
  void start_growth(LineId line);
  void extend_high(LineId line);
  void extend_low(LineId line);
  void add_chain_stick(LineHandle& h, StickId s, numerics::Ratio start, bool forward);
  std::size_t best_stick(const LineHandle& h, double t) const;
  bool on(LineId line, PointId p) const;
  /// Distance of `p` from the line compared to 1.
  numerics::Cmp distance_vs_unit(LineId line, PointId p) const;
  LineId parallel_or_perpendicular(LineId l, PointId b, bool parallel);
  std::vector<PointId> sorted(std::vector<PointId> ids) const;

  /// Spiral of grid lines around an origin; line i+1 is perpendicular to
  /// line i. Grows on demand so one lattice is never built twice.
  struct Spiral {
    PointId origin;
    Vec u;  // positive first-axis direction
    Vec n;  // positive second-axis direction
    std::vector<LineId> lines;
    long next_offset = 0;  // offset of the current corner's predecessor on the last line
  };
  Spiral start_spiral(PointId origin, LineId first_axis, LineId second_axis, const Vec& toward);
  void grow_spiral(Spiral& s, std::size_t count);
  GridHandle grid_view(Spiral& s, PointId target);

  Board& board_;
  std::deque<LineHandle> lines_;  // stable references while lines are added
  std::map<std::pair<std::uint32_t, std::uint32_t>, LineId> line_cache_;
  std::map<std::pair<LineId, std::uint32_t>, LineId> parallel_cache_;
  std::map<LineId, Spiral> spirals_;  // keyed by base line
  std::map<std::uint32_t, Spiral> point_spirals_;  // axis-aligned, keyed by origin point
};

}  // namespace matchstick::constructions
