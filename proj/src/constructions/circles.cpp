#include <cmath>

#include "matchstick/constructions.hpp"

namespace matchstick::constructions {

using numerics::Circle2;
using numerics::Cmp;
using numerics::Point2;
using numerics::Side;

namespace {

Circle2 circle_of(const Board& b, const CircleSpec& c) {
  return {b.point(c.center), numerics::distance(b.point(c.center), b.point(c.on_point))};
}

}  // namespace

// -- circle meets line ------------------------------------------------------

std::vector<PointId> Constructor::circle_line_intersect(const CircleSpec& circle, LineId l,
                                                        CircleLineReport* report) {
  const PointId o = circle.center;
  const PointId s = circle.on_point;
  const auto& tol = board_.tolerance();
  if (o == s || numerics::points_equal(board_.point(o), board_.point(s), tol)) {
    throw Error(ErrorCode::DegenerateSegment, "circle has zero radius");
  }
  const std::vector<Point2> predicted =
      numerics::circle_line_intersection_analytic(circle_of(board_, circle), handle(l).carrier, tol);
  if (predicted.empty()) {
    return {};
  }
  std::vector<PointId> out;
  if (board_.cmp_unit(o, s) == Cmp::Equal) {
    if (report != nullptr) {
      report->direct = true;
    }
    for (const Point2& hit : predicted) {
      out.push_back(compass_to(o, l, to_vec(hit)));
    }
    return sorted(out);
  }
  const bool center_on_line = on(l, o);
  if (center_on_line && on(l, s)) {
    return sorted({s, translate_segment(s, o, o)});
  }

  // Reference point A on the line: not O, not on the line OS, not on the circle.
  const numerics::Scalar radius = numerics::distance(board_.point(o), board_.point(s));
  const double t0 = handle(l).param(vec(o));
  const long base = std::lround(t0);
  std::optional<PointId> ref;
  for (long k : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
    const PointId a = vertex(l, base + k);
    if (a == o || numerics::points_equal(board_.point(a), board_.point(o), tol)) {
      continue;
    }
    if (numerics::orientation(board_.point(a), board_.point(o), board_.point(s), tol) == Side::On ||
        numerics::cmp_distance(board_.point(a), board_.point(o), radius, tol) == Cmp::Equal) {
      continue;
    }
    ref = a;
    break;
  }
  if (!ref) {
    throw Error(ErrorCode::DegenerateConfiguration, "no usable reference point on the line");
  }
  const PointId a = *ref;

  // Scale about A by 1/r: S' is the unit point on ray OS, S'' = A + (S - A)/r,
  // O' = A + (O - A)/r.
  const Point2 op = board_.point(o);
  const Point2 sp = board_.point(s);
  const LineId os = line_through(o, s);
  const Vec unit_dir = to_vec(Point2{(sp.x - op.x) / radius, (sp.y - op.y) / radius});
  const Vec ov = vec(o);
  const PointId s1 = compass_to(o, os, {ov.x + unit_dir.x, ov.y + unit_dir.y});
  const LineId ao = line_through(a, o);
  const PointId s2 = intersect_lines(parallel_through(ao, s1), line_through(a, s));
  const PointId o2 = intersect_lines(ao, parallel_through(os, s2));
  if (report != nullptr) {
    report->reference = a;
    report->scaled_center = o2;
  }

  const std::vector<Point2> scaled = numerics::circle_line_intersection_analytic(
      Circle2{board_.point(o2), numerics::Scalar::from_ratio(1, 1, tol.working_bits)}, handle(l).carrier, tol);
  if (scaled.size() != predicted.size()) {
    throw Error(ErrorCode::DegenerateConfiguration, "scaled circle meets the line differently");
  }
  for (const Point2& hit : scaled) {
    const PointId r1 = compass_to(o2, l, to_vec(hit));
    // Undo the scaling: R lies on the parallel through O (or S) to the ray
    // from O' (or S'') to R'.
    const LineId ray = center_on_line ? line_through(s2, r1) : line_through(o2, r1);
    out.push_back(intersect_lines(parallel_through(ray, center_on_line ? s : o), l));
  }
  return sorted(out);
}

// -- circle meets circle ----------------------------------------------------

std::vector<PointId> Constructor::circle_circle_intersect(const CircleSpec& c1, const CircleSpec& c2,
                                                          CircleCircleReport* report) {
  const auto& tol = board_.tolerance();
  for (const CircleSpec& c : {c1, c2}) {
    if (c.center == c.on_point || numerics::points_equal(board_.point(c.center), board_.point(c.on_point), tol)) {
      throw Error(ErrorCode::DegenerateSegment, "circle has zero radius");
    }
  }
  const Circle2 g1 = circle_of(board_, c1);
  const Circle2 g2 = circle_of(board_, c2);
  if (numerics::circle_circle_intersection_analytic(g1, g2, tol).empty()) {
    return {};
  }
  CircleSpec big = c1;
  CircleSpec small = c2;
  if (g2.radius > g1.radius) {
    std::swap(big, small);
    if (report != nullptr) {
      report->swapped = true;
    }
  }
  const PointId o1 = big.center;
  const PointId o2 = small.center;
  const Point2 p1 = board_.point(o1);
  const Point2 p2 = board_.point(o2);

  std::optional<PointId> antipode;
  for (int attempt = 0; attempt < 8; ++attempt) {
    PointId x = small.on_point;
    if (attempt % 4 >= 2) {
      if (!antipode) {
        antipode = antipodal_on_circle(small);
      }
      x = *antipode;
    }
    const PointId y = rotate90_on_circle({o2, x}, attempt % 2 == 0);
    const Point2 xp = board_.point(x);
    const Point2 yp = board_.point(y);
    const numerics::Line2 chord = numerics::Line2::through(xp, yp);
    const numerics::Line2 centers = numerics::Line2::through(p1, p2);
    const numerics::Scalar along = numerics::dot(chord.direction, centers.direction);
    if (numerics::abs(along) < tol.epsilon) {
      continue;  // chord perpendicular to the line of centres: bisector is that line
    }
    const LineId a1 = line_through(x, y);
    const Bisector xy = perpendicular_bisector(x, y, a1);
    const PointId moved = translate_segment(o1, big.on_point, x);
    std::optional<PointId> o3;
    for (PointId c : circle_line_intersect({x, moved}, xy.line)) {
      if (!numerics::points_equal(board_.point(c), p1, tol) && !numerics::points_equal(board_.point(c), p2, tol)) {
        o3 = c;
        break;
      }
    }
    if (!o3) {
      continue;
    }
    const LineId a2 = perpendicular_bisector(o1, *o3, line_through(o1, *o3)).line;
    if (numerics::line_line_intersection(handle(a1).carrier, handle(a2).carrier, tol).kind !=
        numerics::LineMeet::Kind::Point) {
      continue;
    }
    const PointId radical = intersect_lines(a1, a2);
    if (report != nullptr) {
      report->radical_center = radical;
    }
    const LineId a3 = perpendicular_through(line_through(o1, o2), radical);
    return circle_line_intersect(big, a3);
  }
  throw Error(ErrorCode::DegenerateConfiguration, "no usable auxiliary circle after 8 attempts");
}

// -- derived -----------------------------------------------------------------

PointId Constructor::antipodal_on_circle(const CircleSpec& circle) {
  for (PointId c : circle_line_intersect(circle, line_through(circle.center, circle.on_point))) {
    if (c != circle.on_point) {
      return c;
    }
  }
  throw Error(ErrorCode::DegenerateConfiguration, "antipode coincides with the given point");
}

PointId Constructor::rotate90_on_circle(const CircleSpec& circle, bool counter_clockwise) {
  const LineId radius = line_through(circle.center, circle.on_point);
  const LineId across = perpendicular_at(radius, circle.center);
  const Side wanted = counter_clockwise ? Side::Left : Side::Right;
  for (PointId c : circle_line_intersect(circle, across)) {
    if (numerics::orientation(board_.point(circle.center), board_.point(circle.on_point), board_.point(c),
                              board_.tolerance()) == wanted) {
      return c;
    }
  }
  throw Error(ErrorCode::DegenerateConfiguration, "quarter turn not found");
}

PointId Constructor::translate_segment(PointId p, PointId q, PointId t) {
  const auto& tol = board_.tolerance();
  if (p == q || numerics::points_equal(board_.point(p), board_.point(q), tol)) {
    throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
  }
  if (t == p || numerics::points_equal(board_.point(t), board_.point(p), tol)) {
    return q;
  }
  const LineId pq = line_through(p, q);
  if (on(pq, t)) {
    // detour through a point off the line
    const PointId w = vertex(perpendicular_at(pq, p), 1);
    return translate_segment(w, translate_segment(p, q, w), t);
  }
  return intersect_lines(parallel_through(pq, t), parallel_through(line_through(p, t), q));
}

}  // namespace matchstick::constructions
