#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "matchstick/constructions.hpp"

namespace matchstick::constructions {

using numerics::Cmp;
using numerics::Point2;
using numerics::Ratio;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Angles travel as decimal strings with at most three fractional digits.
long parse_millidegrees(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  long whole = 0;
  long frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any = false;
  for (char ch : text) {
    if (ch == '.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9' || (seen_dot && frac_digits == 3)) {
      throw Error(ErrorCode::DegenerateConfiguration, "bad trial angle '" + std::string(text) + "'");
    }
    any = true;
    if (seen_dot) {
      frac = frac * 10 + (ch - '0');
      ++frac_digits;
    } else {
      whole = whole * 10 + (ch - '0');
    }
  }
  if (!any) {
    throw Error(ErrorCode::DegenerateConfiguration, "empty trial angle");
  }
  while (frac_digits < 3) {
    frac *= 10;
    ++frac_digits;
  }
  const long v = whole * 1000 + frac;
  return negative ? -v : v;
}

std::string format_millidegrees(long v) {
  std::string out = v < 0 ? "-" : "";
  const long a = v < 0 ? -v : v;
  out += std::to_string(a / 1000);
  if (a % 1000 != 0) {
    std::string digits = std::to_string(1000 + a % 1000).substr(1);
    while (digits.back() == '0') {
      digits.pop_back();
    }
    out += '.' + digits;
  }
  return out;
}

Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }
double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
double length(Vec a) { return std::hypot(a.x, a.y); }

Ratio add(Ratio a, Ratio b) {
  const long num = a.num * b.den + b.num * a.den;
  const long den = a.den * b.den;
  const long g = std::gcd(num, den);
  return {num / g, den / g};
}

Ratio negate(Ratio a) { return {-a.num, a.den}; }

}  // namespace

Vec to_vec(const Point2& p) { return {p.x.to_double(), p.y.to_double()}; }

Constructor::Constructor(Board& board) : board_(board) {}

LineId Constructor::line_from_stick(StickId s) {
  const Stick& st = board_.stick(s);
  LineId line = line_from_seed(s, Ratio{0, 1}, st.a);
  handle(line).vertices[1] = st.b;
  return line;
}

LineId Constructor::line_from_seed(StickId s, Ratio start, PointId origin) {
  const Stick& st = board_.stick(s);
  LineHandle h;
  h.carrier = numerics::Line2::through(board_.point(st.a), board_.point(st.b));
  h.anchor = vec(origin);
  const Vec d = vec(st.b) - vec(st.a);
  h.dir = (1.0 / length(d)) * d;
  h.vertices = {{0, origin}};
  add_chain_stick(h, s, start, true);
  lines_.push_back(std::move(h));
  return static_cast<LineId>(lines_.size() - 1);
}

void Constructor::add_chain_stick(LineHandle& h, StickId s, Ratio start, bool forward) {
  const double lo = forward ? start.to_double() : start.to_double() - 1.0;
  h.sticks.push_back({s, lo, lo + 1.0, start, forward});
  h.cover_lo = h.sticks.size() == 1 ? lo : std::min(h.cover_lo, lo);
  h.cover_hi = h.sticks.size() == 1 ? lo + 1.0 : std::max(h.cover_hi, lo + 1.0);
}

// The two growth sequences start on the seed. An integer-aligned seed gets
// two chosen interior points; an offset seed already has its extremities at
// non-integer offsets and needs one.
void Constructor::start_growth(LineId line) {
  LineHandle& h = handle(line);
  const ChainStick seed = h.sticks.front();
  Ratio first = board_.choices().interior_parameter();
  if (seed.start.num == 0) {
    const Ratio second = add(Ratio{first.num, 2 * first.den}, Ratio{1, 2});
    h.x0 = first;
    h.y0 = second;
    h.xs[0] = board_.choose_point_on_stick(seed.id, first);
    h.ys[0] = board_.choose_point_on_stick(seed.id, second);
  } else {
    if (add(first, seed.start).num == 0) {
      first = add(Ratio{first.num, 2 * first.den}, Ratio{1, 2});
    }
    h.x0 = seed.start;
    h.y0 = add(seed.start, first);
    h.xs[0] = board_.stick(seed.id).a;
    h.xs[1] = board_.stick(seed.id).b;
    h.ys[0] = board_.choose_point_on_stick(seed.id, first);
  }
  h.grown = true;
}

// Each call lays one stick: from the last point of one sequence through the
// next point of the other, landing one unit past the first.
void Constructor::extend_high(LineId line) {
  if (!handle(line).grown) {
    start_growth(line);
  }
  LineHandle& h = handle(line);
  const long xh = h.xs.rbegin()->first;
  const long yh = h.ys.rbegin()->first;
  if (xh <= yh) {
    auto [s, next] = board_.lay_stick_from_through(h.xs.at(xh), h.ys.at(xh));
    h.xs[xh + 1] = next;
    add_chain_stick(h, s, add(h.x0, Ratio{xh, 1}), true);
  } else {
    auto [s, next] = board_.lay_stick_from_through(h.ys.at(yh), h.xs.at(yh + 1));
    h.ys[yh + 1] = next;
    add_chain_stick(h, s, add(h.y0, Ratio{yh, 1}), true);
  }
}

void Constructor::extend_low(LineId line) {
  if (!handle(line).grown) {
    start_growth(line);
  }
  LineHandle& h = handle(line);
  const long xl = h.xs.begin()->first;
  const long yl = h.ys.begin()->first;
  if (yl < xl) {
    auto [s, next] = board_.lay_stick_from_through(h.xs.at(xl), h.ys.at(xl - 1));
    h.xs[xl - 1] = next;
    add_chain_stick(h, s, add(h.x0, Ratio{xl, 1}), false);
  } else {
    auto [s, next] = board_.lay_stick_from_through(h.ys.at(yl), h.xs.at(yl));
    h.ys[yl - 1] = next;
    add_chain_stick(h, s, add(h.y0, Ratio{yl, 1}), false);
  }
}

void Constructor::ensure_covers(LineId line, double lo, double hi) {
  constexpr double kMargin = 0.25;
  while (handle(line).cover_hi < hi + kMargin) {
    extend_high(line);
  }
  while (handle(line).cover_lo > lo - kMargin) {
    extend_low(line);
  }
}

PointId Constructor::vertex(LineId line, long offset) {
  if (auto it = handle(line).vertices.find(offset); it != handle(line).vertices.end()) {
    return it->second;
  }
  const PointId v = point_at(line, Ratio{offset, 1});
  handle(line).vertices[offset] = v;
  return v;
}

PointId Constructor::point_at(LineId line, Ratio offset) {
  const double t = offset.to_double();
  ensure_covers(line, t, t);
  const LineHandle& h = handle(line);
  const ChainStick& st = h.sticks[best_stick(h, t)];
  return board_.choose_point_on_stick(st.id, st.forward ? add(offset, negate(st.start)) : add(st.start, negate(offset)));
}

std::optional<long> Constructor::vertex_offset(LineId line, PointId p) const {
  for (const auto& [k, id] : lines_.at(line).vertices) {
    if (id == p) {
      return k;
    }
  }
  return std::nullopt;
}

std::size_t Constructor::best_stick(const LineHandle& h, double t) const {
  std::size_t best = 0;
  double margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.sticks.size(); ++i) {
    const double m = std::min(t - h.sticks[i].lo, h.sticks[i].hi - t);
    if (m > margin) {
      margin = m;
      best = i;
    }
  }
  return best;
}

bool Constructor::on(LineId line, PointId p) const {
  return numerics::on_line(lines_.at(line).carrier, board_.point(p), board_.tolerance());
}

Cmp Constructor::distance_vs_unit(LineId line, PointId p) const {
  const Point2& pp = board_.point(p);
  return numerics::cmp_unit_distance(pp, lines_.at(line).carrier.foot_of(pp), board_.tolerance());
}

std::vector<PointId> Constructor::sorted(std::vector<PointId> ids) const {
  std::sort(ids.begin(), ids.end(), [&](PointId a, PointId b) {
    return numerics::lex_compare(board_.point(a), board_.point(b), board_.tolerance()) < 0;
  });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

PointId Constructor::compass_to(PointId center, LineId line, const Vec& predicted) {
  const double t = handle(line).param(predicted);
  ensure_covers(line, t, t);
  const LineHandle& h = handle(line);
  const StickId s = h.sticks[best_stick(h, t)].id;
  const std::vector<Point2> hits = board_.compass_candidates(center, s);
  std::uint32_t pick = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < hits.size(); ++i) {
    const double d = length(to_vec(hits[i]) - predicted);
    if (d < best) {
      best = d;
      pick = i;
    }
  }
  if (hits.empty() || best > 1e-6 * std::max(1.0, length(predicted))) {
    throw Error(ErrorCode::DegenerateConfiguration,
                "no unit-distance point from " + trace::to_string(center) + " where one was expected");
  }
  return board_.compass_intersect(center, s, pick);
}

PointId Constructor::intersect_lines(LineId l1, LineId l2) {
  const numerics::LineMeet meet =
      numerics::line_line_intersection(handle(l1).carrier, handle(l2).carrier, board_.tolerance());
  if (meet.kind != numerics::LineMeet::Kind::Point) {
    throw Error(ErrorCode::NoIntersection,
                meet.kind == numerics::LineMeet::Kind::Parallel ? "lines are parallel" : "lines coincide");
  }
  const Vec x = to_vec(*meet.point);
  const double t1 = handle(l1).param(x);
  const double t2 = handle(l2).param(x);
  ensure_covers(l1, t1, t1);
  ensure_covers(l2, t2, t2);
  const StickId s1 = handle(l1).sticks[best_stick(handle(l1), t1)].id;
  const StickId s2 = handle(l2).sticks[best_stick(handle(l2), t2)].id;
  return board_.mark_crossing(s1, s2);
}

// -- extension --------------------------------------------------------------

LineId Constructor::extend_line(StickId seed, bool toward_second, long length) {
  const LineId line = line_from_stick(seed);
  vertex(line, toward_second ? length : 1 - length);
  return line;
}

// -- perpendicular at a point -----------------------------------------------

LineId Constructor::perpendicular_at(LineId d, PointId a, const TrialPlan& plan, PerpendicularReport* report) {
  if (!on(d, a)) {
    throw Error(ErrorCode::DegenerateConfiguration,
                trace::to_string(a) + " is not on the base line (off by " +
                    handle(d).carrier.signed_distance(board_.point(a)).to_decimal(6) + ")");
  }
  const Vec av = vec(a);
  const double ta = handle(d).param(av);
  const double lean = (handle(d).cover_hi - ta >= ta - handle(d).cover_lo) ? 1.0 : -1.0;
  ensure_covers(d, lean > 0 ? ta - 0.5 : ta - 2.5, lean > 0 ? ta + 2.5 : ta + 0.5);
  const LineHandle& h = handle(d);
  const StickId ref = h.sticks[best_stick(h, ta)].id;
  const Vec ref_dir = vec(board_.stick(ref).b) - vec(board_.stick(ref).a);
  const bool ref_along_lean = dot(ref_dir, h.dir) * lean > 0;
  const Vec w = lean * h.dir;

  struct Apex {
    PointId id;
    bool left;
  };
  std::vector<Apex> apexes;
  constexpr std::size_t kMaxTrials = 16;
  for (std::size_t k = 0; k < kMaxTrials; ++k) {
    const std::string angle = k < plan.angles.size() ? plan.angles[k] : board_.choices().trial_angle(k);
    const bool left = k < plan.left.size() ? plan.left[k] : board_.choices().trial_left(k);
    const long theta = parse_millidegrees(angle);
    if (theta <= 0 || theta >= 90000) {
      throw Error(ErrorCode::DegenerateConfiguration, "trial angle must lie strictly between 0 and 90 degrees");
    }
    const long relative = (left ? theta : -theta) + (ref_along_lean ? 0 : 180000);
    auto [first, q] = board_.lay_stick_free(a, ref, format_millidegrees(relative));
    const double th = static_cast<double>(theta) * kPi / 180000.0;
    const PointId r = compass_to(q, d, av + (2.0 * std::cos(th)) * w);
    const StickId second = board_.lay_stick_both_ends(r, q);
    const PointId inner = board_.choose_point_on_stick(second, board_.choices().interior_parameter());
    auto [helper, beyond] = board_.lay_stick_from_through(inner, q);
    auto [third, apex] = board_.lay_stick_from_through(q, beyond);
    if (report != nullptr) {
      report->trials = k + 1;
      report->apexes.push_back(apex);
    }
    const Cmp reach = board_.cmp_unit(a, apex);
    if (reach == Cmp::Equal) {
      return line_from_stick(board_.lay_stick_both_ends(a, apex));
    }
    if (reach == Cmp::Less) {
      // overhang behind `a` keeps both extremities off integer offsets
      const double room = 1.0 - 2.0 * std::sin(th);
      const long thousandths =
          std::max(1L, static_cast<long>(std::floor(room * board_.choices().interior_parameter().to_double() * 1000.0)));
      const Ratio overhang{thousandths, 1000};
      const StickId s = board_.lay_stick_through_both(a, apex, overhang);
      return line_from_seed(s, negate(overhang), a);
    }
    for (const Apex& other : apexes) {
      if (other.left == left && other.id != apex && board_.cmp_unit(other.id, apex) != Cmp::Greater) {
        auto [s, f] = board_.lay_stick_from_through(other.id, apex);
        const LineId through_pair = line_from_stick(s);
        // reseed at the foot so that the result starts at `a`
        const Vec n = vec(apex) - av;
        const PointId unit = compass_to(a, through_pair, av + (1.0 / length(n)) * n);
        if (report != nullptr) {
          report->used_pair = true;
        }
        return line_from_stick(board_.lay_stick_both_ends(a, unit));
      }
    }
    apexes.push_back({apex, left});
  }
  throw Error(ErrorCode::TrialExhaustion, "no usable perpendicular after 16 trials");
}

// -- grid -------------------------------------------------------------------

namespace {

long vertical_index(long k) { return k == 0 ? 0 : (k > 0 ? 4 * k - 2 : -4 * k); }
long horizontal_index(long k) { return k == 0 ? 1 : (k > 0 ? 4 * k - 1 : -4 * k + 1); }

// Lower corner of the cell holding coordinate c; on a grid line, the cell
// reachable with fewer spiral lines.
long cell_corner(double c, long (*index)(long)) {
  const double r = std::round(c);
  if (std::fabs(c - r) < 1e-9) {
    const long k = static_cast<long>(r);
    return std::max(index(k - 1), index(k)) < std::max(index(k), index(k + 1)) ? k - 1 : k;
  }
  return static_cast<long>(std::floor(c));
}

}  // namespace

Constructor::Spiral Constructor::start_spiral(PointId origin, LineId first_axis, LineId second_axis,
                                              const Vec& toward) {
  const std::optional<long> start = vertex_offset(first_axis, origin);
  if (!start) {
    throw Error(ErrorCode::DegenerateConfiguration, "grid origin must be a vertex of the first axis");
  }
  Spiral s;
  s.origin = origin;
  s.u = (dot(toward, handle(first_axis).dir) >= 0 ? 1.0 : -1.0) * handle(first_axis).dir;
  s.n = (dot(toward, handle(second_axis).dir) >= 0 ? 1.0 : -1.0) * handle(second_axis).dir;
  s.lines = {second_axis, first_axis};
  s.next_offset = *start;
  return s;
}

// Line i+1 is the perpendicular to line i at A_i; A_i lies ceil(i/2) units
// from A_{i-1} along line i, turning +u, +n, -u, -n.
void Constructor::grow_spiral(Spiral& s, std::size_t count) {
  const Vec turns[4] = {s.u, s.n, -1.0 * s.u, -1.0 * s.n};
  while (s.lines.size() < count) {
    const long i = static_cast<long>(s.lines.size()) - 1;
    const LineId li = s.lines.back();
    const long sign = dot(turns[(i - 1) % 4], handle(li).dir) > 0 ? 1 : -1;
    const PointId ai = vertex(li, s.next_offset + sign * ((i + 1) / 2));
    s.lines.push_back(perpendicular_at(li, ai));
    s.next_offset = 0;  // A_i is vertex 0 of the new line
  }
}

GridHandle Constructor::grid_view(Spiral& s, PointId target) {
  const Vec rel = vec(target) - vec(s.origin);
  GridHandle g;
  g.origin = s.origin;
  g.first_axis = s.lines[1];
  g.second_axis = s.lines[0];
  g.target = {dot(rel, s.u), dot(rel, s.n)};
  g.cell_x = cell_corner(g.target.x, vertical_index);
  g.cell_y = cell_corner(g.target.y, horizontal_index);
  const long last = std::max({vertical_index(g.cell_x), vertical_index(g.cell_x + 1),
                              horizontal_index(g.cell_y), horizontal_index(g.cell_y + 1)});
  grow_spiral(s, static_cast<std::size_t>(last) + 1);
  g.spiral_lines = s.lines.size();
  for (long idx = 0; idx < static_cast<long>(s.lines.size()); ++idx) {
    const LineId id = s.lines[static_cast<std::size_t>(idx)];
    if (idx == 0) {
      g.vertical[0] = id;
    } else if (idx == 1) {
      g.horizontal[0] = id;
    } else if (idx % 4 == 2) {
      g.vertical[(idx + 2) / 4] = id;
    } else if (idx % 4 == 0) {
      g.vertical[-idx / 4] = id;
    } else if (idx % 4 == 3) {
      g.horizontal[(idx + 1) / 4] = id;
    } else {
      g.horizontal[-(idx - 1) / 4] = id;
    }
  }
  return g;
}

GridHandle Constructor::coordinate_grid(PointId origin, LineId first_axis, LineId second_axis, PointId target) {
  Spiral s = start_spiral(origin, first_axis, second_axis, vec(target) - vec(origin));
  return grid_view(s, target);
}

// -- perpendicular bisector -------------------------------------------------

Bisector Constructor::perpendicular_bisector(PointId a, PointId b, LineId ab) {
  if (a == b || numerics::points_equal(board_.point(a), board_.point(b), board_.tolerance())) {
    throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
  }
  if (!on(ab, a) || !on(ab, b)) {
    throw Error(ErrorCode::DegenerateConfiguration, "segment endpoints are not on the given line");
  }
  const Vec av = vec(a);
  const Vec bv = vec(b);
  const double span = length(bv - av);
  const Vec e = (1.0 / span) * (bv - av);
  const LineId at_a = perpendicular_at(ab, a);
  const LineId at_b = perpendicular_at(ab, b);
  const Vec n = handle(at_a).dir;

  // Two mirrored zig-zag chains between `base` and `parallel`, started at
  // `from_a` and `from_b`; returns the crossing of the mirror-index sticks.
  auto zigzag = [&](PointId from_a, PointId from_b, LineId parallel, const Vec& to_base) -> PointId {
    const double height = length(to_base);
    const double advance = std::sqrt(std::max(0.0, 1.0 - height * height));
    PointId ra = from_a;
    PointId rb = from_b;
    const long limit = 4 + static_cast<long>(span / std::max(advance, 1e-3));
    for (long i = 1; i <= limit; ++i) {
      const bool to_base_line = i % 2 == 1;
      const Vec drop = to_base_line ? to_base : -1.0 * to_base;
      const LineId target = to_base_line ? ab : parallel;
      const PointId na = compass_to(ra, target, vec(ra) + advance * e + drop);
      const StickId sa = board_.lay_stick_both_ends(ra, na);
      const PointId nb = compass_to(rb, target, vec(rb) - advance * e + drop);
      const StickId sb = board_.lay_stick_both_ends(rb, nb);
      const numerics::SegmentMeet meet = numerics::segment_intersection(
          board_.stick(sa).segment, board_.stick(sb).segment, board_.tolerance());
      if (meet.kind == numerics::SegmentMeet::Kind::Point) {
        return board_.mark_crossing(sa, sb);
      }
      ra = na;
      rb = nb;
    }
    throw Error(ErrorCode::DegenerateConfiguration, "zig-zag chains never crossed");
  };

  for (int attempt = 0; attempt < 8; ++attempt) {
    const Ratio h = attempt == 0 ? board_.choices().zigzag_height()
                                 : Ratio{static_cast<long>(300 + board_.choices().next() % 401), 1000};
    const PointId r0 = point_at(at_a, h);
    const double hv = h.to_double();
    const PointId s0 = compass_to(r0, at_a, av - (1.0 - hv) * n);
    const LineId upper = perpendicular_at(at_a, r0);
    const LineId lower = perpendicular_at(at_a, s0);
    const PointId t0 = intersect_lines(upper, at_b);
    const PointId u0 = intersect_lines(lower, at_b);
    const PointId p = zigzag(r0, t0, upper, -hv * n);
    const PointId q = zigzag(s0, u0, lower, (1.0 - hv) * n);
    if (p == q) {
      continue;
    }
    if (board_.cmp_unit(q, p) == Cmp::Greater) {
      throw Error(ErrorCode::DegenerateConfiguration, "bisector crossings are more than a unit apart");
    }
    auto [s, f] = board_.lay_stick_from_through(q, p);
    const LineId line = line_from_stick(s);
    return {line, intersect_lines(line, ab), p, q};
  }
  throw Error(ErrorCode::DegenerateConfiguration, "bisector crossings kept coinciding");
}

PointId Constructor::midpoint(PointId a, PointId b) {
  return perpendicular_bisector(a, b, line_through(a, b)).midpoint;
}

// -- near parallel and perpendicular ----------------------------------------

NearLines Constructor::parallel_and_perpendicular_near(LineId d, PointId a) {
  if (on(d, a)) {
    return {d, perpendicular_at(d, a)};
  }
  const Cmp c = distance_vs_unit(d, a);
  if (c == Cmp::Greater) {
    throw Error(ErrorCode::NoIntersection, trace::to_string(a) + " is more than a unit from the line");
  }
  const Vec av = vec(a);
  const Vec foot = handle(d).at(handle(d).param(av));
  LineId perp = 0;
  if (c == Cmp::Equal) {
    const PointId f = compass_to(a, d, foot);
    perp = line_from_stick(board_.lay_stick_both_ends(a, f));
  } else {
    const double dist = length(av - foot);
    const double half = std::sqrt(std::max(0.0, 1.0 - dist * dist));
    const Vec dir = handle(d).dir;
    const PointId p = compass_to(a, d, foot - half * dir);
    const PointId q = compass_to(a, d, foot + half * dir);
    perp = perpendicular_bisector(p, q, d).line;
  }
  return {perpendicular_at(perp, a), perp};
}

bool Constructor::are_parallel(LineId l1, LineId l2) {
  const PointId x = vertex(l2, 0);
  const LineId par = parallel_through(l1, x);
  return on(l2, vertex(par, 0)) && on(l2, vertex(par, 1));
}

// -- distant points ---------------------------------------------------------

LineId Constructor::line_through(PointId a, PointId b, std::size_t* halvings) {
  if (halvings != nullptr) {
    *halvings = 0;
  }
  const auto key = std::minmax(a.value, b.value);
  if (auto it = line_cache_.find(key); it != line_cache_.end() && halvings == nullptr) {
    return it->second;
  }
  if (a == b || numerics::points_equal(board_.point(a), board_.point(b), board_.tolerance())) {
    throw Error(ErrorCode::DegenerateSegment, "a line needs two distinct points");
  }
  LineId result = 0;
  if (board_.cmp_unit(a, b) != Cmp::Greater) {
    result = line_from_stick(board_.lay_stick_from_through(a, b).first);
  } else {
    if (!point_spirals_.contains(a.value) && point_spirals_.contains(b.value)) {
      std::swap(a, b);
    }
    auto it = point_spirals_.find(a.value);
    if (it == point_spirals_.end()) {
      const LineId l = line_from_stick(board_.lay_stick_free(a, std::nullopt, "0").first);
      const LineId p = perpendicular_at(l, a);
      it = point_spirals_.emplace(a.value, start_spiral(a, l, p, vec(b) - vec(a))).first;
    }
    Spiral& spiral = it->second;
    const LineId l = spiral.lines[1];
    const LineId p = spiral.lines[0];
    if (on(l, b)) {
      result = l;
    } else if (on(p, b)) {
      result = p;
    } else {
      const GridHandle grid = grid_view(spiral, b);
      const long kx = grid.cell_x + (grid.target.x - static_cast<double>(grid.cell_x) > 0.5 ? 1 : 0);
      const LineId across = parallel_and_perpendicular_near(grid.vertical.at(kx), b).perpendicular;
      const PointId c = intersect_lines(across, p);
      PointId ai = a;
      PointId bi = b;
      std::size_t count = 0;
      while (board_.cmp_unit(ai, bi) == Cmp::Greater) {
        ai = perpendicular_bisector(ai, c, p).midpoint;
        bi = perpendicular_bisector(bi, c, across).midpoint;
        ++count;
      }
      if (halvings != nullptr) {
        *halvings = count;
      }
      const LineId m = line_from_stick(board_.lay_stick_from_through(ai, bi).first);
      result = parallel_through(m, b);
    }
  }
  line_cache_[key] = result;
  return result;
}

LineId Constructor::parallel_or_perpendicular(LineId l, PointId b, bool parallel) {
  if (on(l, b)) {
    return parallel ? l : perpendicular_at(l, b);
  }
  if (distance_vs_unit(l, b) != Cmp::Greater) {
    const NearLines near = parallel_and_perpendicular_near(l, b);
    return parallel ? near.parallel : near.perpendicular;
  }
  auto it = spirals_.find(l);
  if (it == spirals_.end()) {
    const PointId origin = vertex(l, std::lround(handle(l).param(vec(b))));
    const LineId p = perpendicular_at(l, origin);
    it = spirals_.emplace(l, start_spiral(origin, l, p, vec(b) - vec(origin))).first;
  }
  const GridHandle grid = grid_view(it->second, b);
  const long ky = grid.cell_y + (grid.target.y - static_cast<double>(grid.cell_y) > 0.5 ? 1 : 0);
  const NearLines near = parallel_and_perpendicular_near(grid.horizontal.at(ky), b);
  return parallel ? near.parallel : near.perpendicular;
}

LineId Constructor::parallel_through(LineId l, PointId b) {
  const auto key = std::make_pair(l, b.value);
  if (auto it = parallel_cache_.find(key); it != parallel_cache_.end()) {
    return it->second;
  }
  const LineId result = parallel_or_perpendicular(l, b, true);
  parallel_cache_[key] = result;
  return result;
}

LineId Constructor::perpendicular_through(LineId l, PointId b) { return parallel_or_perpendicular(l, b, false); }

}  // namespace matchstick::constructions
