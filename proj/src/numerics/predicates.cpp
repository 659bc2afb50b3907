#include <algorithm>
#include <cmath>

#include "matchstick/numerics.hpp"

namespace matchstick::numerics {

namespace detail {

void throw_ambiguous(Bits bits) {
  throw Error(ErrorCode::AmbiguousPredicate,
              "comparison undecided at " + std::to_string(bits) + " bits");
}

void note_escalation(const Tolerance& tol, Bits bits) {
  if (tol.monitor != nullptr) {
    tol.monitor->peak_bits = std::max(tol.monitor->peak_bits, bits);
    ++tol.monitor->escalations;
  }
}

Scalar error_bound(double scale, Bits bits) {
  Scalar out = Scalar::pow2(10 - static_cast<long>(bits), bits);
  const double s = std::max(1.0, std::isfinite(scale) ? scale : 1e300);
  mpfr_mul_d(out.get(), out.get(), s, MPFR_RNDU);
  return out;
}

}  // namespace detail

namespace {

// Either a reference to the caller's point or a copy raised to `bits`.
class Lifted {
 public:
  Lifted(const Point2& p, Bits bits) : ref_(&p) {
    if (p.x.bits() < bits || p.y.bits() < bits) {
      copy_ = p.with_bits(bits);
      ref_ = &*copy_;
    }
  }
  const Point2& operator*() const { return *ref_; }
  const Point2* operator->() const { return ref_; }

 private:
  const Point2* ref_;
  std::optional<Point2> copy_;
};

Scalar lifted(const Scalar& s, Bits bits) { return s.bits() < bits ? s.with_bits(bits) : s; }

double magnitude(const Point2& p) { return std::fabs(p.x.to_double()) + std::fabs(p.y.to_double()); }

Cmp band_to_cmp(Band b) {
  switch (b) {
    case Band::Below:
      return Cmp::Less;
    case Band::Within:
      return Cmp::Equal;
    case Band::Above:
      break;
  }
  return Cmp::Greater;
}

struct Approx {
  double x;
  double y;
};

Approx approx(const Point2& p) { return {p.x.to_double(), p.y.to_double()}; }

// Double-precision filter: decides the band when the value lies far from its
// edges, otherwise defers to the multiprecision evaluation.
std::optional<Band> quick_band(const Tolerance& tol, double value, double scale) {
  if (!std::isfinite(value) || !std::isfinite(scale)) {
    return std::nullopt;
  }
  const double eps = tol.epsilon.to_double();
  const double slack = 1e-9 * std::max(1.0, scale);
  if (std::fabs(value) > eps + slack) {
    return value > 0 ? Band::Above : Band::Below;
  }
  if (std::fabs(value) + slack < eps) {
    return Band::Within;
  }
  return std::nullopt;
}

template <class Eval>
Band filtered(const Tolerance& tol, double value, double scale, Eval&& eval) {
  if (auto quick = quick_band(tol, value, scale)) {
    return *quick;
  }
  return classify(tol, std::forward<Eval>(eval));
}

// Non-negative arguments only; guards against rounding just below zero.
Scalar safe_sqrt(const Scalar& x) { return sqrt(x); }

}  // namespace

Point2 Point2::from_decimal(std::string_view px, std::string_view py, Bits bits) {
  return {Scalar::from_decimal(px, bits), Scalar::from_decimal(py, bits)};
}

Scalar dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
Scalar cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
Scalar norm2(const Point2& v) { return square(v.x) + square(v.y); }
Scalar norm(const Point2& v) {
  Scalar out(std::max(v.x.bits(), v.y.bits()));
  mpfr_sqr(out.get(), v.x.get(), MPFR_RNDN);
  mpfr_fma(out.get(), v.y.get(), v.y.get(), out.get(), MPFR_RNDN);
  mpfr_sqrt(out.get(), out.get(), MPFR_RNDN);
  return out;
}
Scalar distance(const Point2& a, const Point2& b) { return norm(b - a); }
Point2 perp_left(const Point2& v) { return {-v.y, v.x}; }

Point2 rotate_degrees(const Point2& v, const Scalar& degrees) {
  const Bits bits = std::max(v.x.bits(), v.y.bits());
  auto [c, s] = cos_sin_degrees(degrees, bits);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

Line2 Line2::through(const Point2& p, const Point2& q) {
  Point2 d = q - p;
  Scalar n = norm(d);
  if (n.is_zero()) {
    throw Error(ErrorCode::DegenerateDirection, "line through coincident points");
  }
  return {p, d / n};
}

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::Less:
      return "Less";
    case Cmp::Equal:
      return "Equal";
    case Cmp::Greater:
      break;
  }
  return "Greater";
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::Left:
      return "Left";
    case Side::Right:
      return "Right";
    case Side::On:
      break;
  }
  return "On";
}

std::optional<Cmp> cmp_from_string(std::string_view text) {
  if (text == "Less") return Cmp::Less;
  if (text == "Equal") return Cmp::Equal;
  if (text == "Greater") return Cmp::Greater;
  return std::nullopt;
}

Band classify_value(const Tolerance& tol, const Scalar& value) {
  const double v = value.to_double();
  return filtered(tol, v, std::fabs(v), [&](Bits bits) {
    return Estimate{lifted(value, bits), std::fabs(value.to_double())};
  });
}

Cmp cmp_distance(const Point2& p, const Point2& q, const Scalar& r, const Tolerance& tol) {
  const Approx a = approx(p);
  const Approx b = approx(q);
  const double rd = r.to_double();
  const double scale = std::fabs(a.x) + std::fabs(a.y) + std::fabs(b.x) + std::fabs(b.y) + std::fabs(rd);
  return band_to_cmp(filtered(tol, std::hypot(b.x - a.x, b.y - a.y) - rd, scale, [&](Bits bits) {
    Lifted lp(p, bits);
    Lifted lq(q, bits);
    Scalar d = norm(*lq - *lp) - lifted(r, bits);
    return Estimate{std::move(d), magnitude(*lp) + magnitude(*lq) + std::fabs(r.to_double())};
  }));
}

Cmp cmp_unit_distance(const Point2& p, const Point2& q, const Tolerance& tol) {
  const Approx a = approx(p);
  const Approx b = approx(q);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double scale = std::fabs(a.x) + std::fabs(a.y) + std::fabs(b.x) + std::fabs(b.y);
  return band_to_cmp(filtered(tol, (dx * dx + dy * dy - 1.0) / 2.0, scale * std::max(1.0, scale), [&](Bits bits) {
    Lifted lp(p, bits);
    Lifted lq(q, bits);
    // (|pq|^2 - 1) / 2 has the sign of |pq| - 1 and matches it near the unit
    Scalar d = norm2(*lq - *lp) - 1L;
    mpfr_div_2ui(d.get(), d.get(), 1, MPFR_RNDN);
    const double scale = magnitude(*lp) + magnitude(*lq);
    return Estimate{std::move(d), scale * std::max(1.0, scale)};
  }));
}

bool points_equal(const Point2& p, const Point2& q, const Tolerance& tol) {
  const Approx a = approx(p);
  const Approx b = approx(q);
  const double scale = std::fabs(a.x) + std::fabs(a.y) + std::fabs(b.x) + std::fabs(b.y);
  const Band bx = filtered(tol, a.x - b.x, scale, [&](Bits bits) {
    return Estimate{lifted(p.x, bits) - lifted(q.x, bits), scale};
  });
  if (bx != Band::Within) {
    return false;
  }
  return filtered(tol, a.y - b.y, scale, [&](Bits bits) {
           return Estimate{lifted(p.y, bits) - lifted(q.y, bits), scale};
         }) == Band::Within;
}

int lex_compare(const Point2& p, const Point2& q, const Tolerance& tol) {
  const Approx a = approx(p);
  const Approx b = approx(q);
  const double scale = std::fabs(a.x) + std::fabs(a.y) + std::fabs(b.x) + std::fabs(b.y);
  const Band bx = filtered(tol, a.x - b.x, scale, [&](Bits bits) {
    return Estimate{lifted(p.x, bits) - lifted(q.x, bits), scale};
  });
  if (bx != Band::Within) {
    return bx == Band::Below ? -1 : 1;
  }
  const Band by = filtered(tol, a.y - b.y, scale, [&](Bits bits) {
    return Estimate{lifted(p.y, bits) - lifted(q.y, bits), scale};
  });
  if (by == Band::Within) {
    return 0;
  }
  return by == Band::Below ? -1 : 1;
}

void sort_lexicographic(std::vector<Point2>& points, const Tolerance& tol) {
  std::stable_sort(points.begin(), points.end(), [&](const Point2& a, const Point2& b) {
    return lex_compare(a, b, tol) < 0;
  });
}

Side orientation(const Point2& p, const Point2& q, const Point2& r, const Tolerance& tol) {
  if (points_equal(p, q, tol)) {
    throw Error(ErrorCode::DegenerateDirection, "orientation of a degenerate base");
  }
  const Approx ap = approx(p);
  const Approx aq = approx(q);
  const Approx ar = approx(r);
  const double qx = aq.x - ap.x;
  const double qy = aq.y - ap.y;
  const double rx = ar.x - ap.x;
  const double ry = ar.y - ap.y;
  const double quick = (qx * ry - qy * rx) / std::hypot(qx, qy);
  const Band b = filtered(tol, quick, std::fabs(qx) + std::fabs(qy) + std::fabs(rx) + std::fabs(ry), [&](Bits bits) {
    Lifted lp(p, bits);
    Point2 pq = *Lifted(q, bits) - *lp;
    Point2 pr = *Lifted(r, bits) - *lp;
    Scalar value = cross(pq, pr) / norm(pq);
    return Estimate{std::move(value), magnitude(pq) + magnitude(pr)};
  });
  if (b == Band::Within) {
    return Side::On;
  }
  return b == Band::Above ? Side::Left : Side::Right;
}

Side side_of_line(const Line2& line, const Point2& p, const Tolerance& tol) {
  const Approx a = approx(line.anchor);
  const Approx d = approx(line.direction);
  const Approx q = approx(p);
  const double px = q.x - a.x;
  const double py = q.y - a.y;
  const double scale = std::fabs(a.x) + std::fabs(a.y) + std::fabs(q.x) + std::fabs(q.y);
  const Band b = filtered(tol, d.x * py - d.y * px, scale, [&](Bits bits) {
    Lifted a(line.anchor, bits);
    Lifted d(line.direction, bits);
    Point2 ap = *Lifted(p, bits) - *a;
    return Estimate{cross(*d, ap), magnitude(ap)};
  });
  if (b == Band::Within) {
    return Side::On;
  }
  return b == Band::Above ? Side::Left : Side::Right;
}

bool on_line(const Line2& line, const Point2& p, const Tolerance& tol) {
  return side_of_line(line, p, tol) == Side::On;
}

Point2 unit_point_on_ray(const Point2& origin, const Point2& through, const Tolerance& tol) {
  if (points_equal(origin, through, tol)) {
    throw Error(ErrorCode::DegenerateDirection, "ray origin coincides with its through point");
  }
  Point2 v = through - origin;
  Scalar n = norm(v);
  return origin + v / n;
}

LineMeet line_line_intersection(const Line2& l1, const Line2& l2, const Tolerance& tol) {
  const Approx d1 = approx(l1.direction);
  const Approx d2 = approx(l2.direction);
  const Band parallel = filtered(tol, d1.x * d2.y - d1.y * d2.x, 2.0, [&](Bits bits) {
    return Estimate{cross(*Lifted(l1.direction, bits), *Lifted(l2.direction, bits)), 2.0};
  });
  if (parallel == Band::Within) {
    if (on_line(l1, l2.anchor, tol)) {
      return {LineMeet::Kind::Coincident, std::nullopt};
    }
    return {LineMeet::Kind::Parallel, std::nullopt};
  }
  const Scalar denom = cross(l1.direction, l2.direction);
  const Scalar t = cross(l2.anchor - l1.anchor, l2.direction) / denom;
  return {LineMeet::Kind::Point, l1.at(t)};
}

SegmentMeet segment_intersection(const Segment2& s1, const Segment2& s2, const Tolerance& tol) {
  const Line2 l1 = Line2::through(s1.a, s1.b);
  const Line2 l2 = Line2::through(s2.a, s2.b);
  const Scalar len1 = distance(s1.a, s1.b);
  const Scalar len2 = distance(s2.a, s2.b);
  auto inside = [&](const Scalar& t, const Scalar& len) {
    return classify_value(tol, t) != Band::Below && classify_value(tol, len - t) != Band::Below;
  };
  const LineMeet meet = line_line_intersection(l1, l2, tol);
  if (meet.kind == LineMeet::Kind::Parallel) {
    return {SegmentMeet::Kind::None, std::nullopt};
  }
  if (meet.kind == LineMeet::Kind::Coincident) {
    const Scalar ta = l1.param_of(s2.a);
    const Scalar tb = l1.param_of(s2.b);
    const Scalar lo = ta < tb ? ta : tb;
    const Scalar hi = ta < tb ? tb : ta;
    // closed intervals [0, len1] and [lo, hi] meet
    if (classify_value(tol, hi) != Band::Below && classify_value(tol, len1 - lo) != Band::Below) {
      return {SegmentMeet::Kind::Overlap, std::nullopt};
    }
    return {SegmentMeet::Kind::None, std::nullopt};
  }
  const Point2& p = *meet.point;
  if (inside(l1.param_of(p), len1) && inside(l2.param_of(p), len2)) {
    return {SegmentMeet::Kind::Point, p};
  }
  return {SegmentMeet::Kind::None, std::nullopt};
}

namespace {

// Points of `line` at distance `radius` from `center`, tangency collapsed to
// the foot point.
std::vector<Point2> circle_meets_line(const Point2& center, const Scalar& radius, const Line2& line,
                                      const Tolerance& tol) {
  const Approx la = approx(line.anchor);
  const Approx ld = approx(line.direction);
  const Approx c = approx(center);
  const double cx = c.x - la.x;
  const double cy = c.y - la.y;
  const double rd = radius.to_double();
  const double scale = std::fabs(la.x) + std::fabs(la.y) + std::fabs(c.x) + std::fabs(c.y) + std::fabs(rd);
  const Band b = filtered(tol, std::fabs(ld.x * cy - ld.y * cx) - rd, scale, [&](Bits bits) {
    Lifted a(line.anchor, bits);
    Lifted d(line.direction, bits);
    Point2 ac = *Lifted(center, bits) - *a;
    Scalar h = abs(cross(*d, ac)) - lifted(radius, bits);
    return Estimate{std::move(h), magnitude(ac) + std::fabs(radius.to_double())};
  });
  std::vector<Point2> out;
  if (b == Band::Above) {
    return out;
  }
  const Scalar s = line.param_of(center);
  if (b == Band::Within) {
    out.push_back(line.at(s));
    return out;
  }
  const Scalar h = line.signed_distance(center);
  const Scalar w = safe_sqrt(square(radius) - square(h));
  out.push_back(line.at(s - w));
  out.push_back(line.at(s + w));
  return out;
}

}  // namespace

std::vector<Point2> unit_circle_segment_intersection(const Point2& center, const Segment2& seg,
                                                     const Tolerance& tol) {
  const Line2 line = Line2::through(seg.a, seg.b);
  const Scalar len = distance(seg.a, seg.b);
  std::vector<Point2> candidates =
      circle_meets_line(center, Scalar(1L, tol.working_bits), line, tol);
  std::vector<Point2> out;
  for (auto& p : candidates) {
    const Scalar t = line.param_of(p);
    if (classify_value(tol, t) != Band::Below && classify_value(tol, len - t) != Band::Below) {
      out.push_back(std::move(p));
    }
  }
  sort_lexicographic(out, tol);
  return out;
}

std::vector<Point2> circle_line_intersection_analytic(const Circle2& c, const Line2& l,
                                                      const Tolerance& tol) {
  std::vector<Point2> out = circle_meets_line(c.center, c.radius, l, tol);
  sort_lexicographic(out, tol);
  return out;
}

std::vector<Point2> circle_circle_intersection_analytic(const Circle2& c1, const Circle2& c2,
                                                        const Tolerance& tol) {
  const Point2 delta = c2.center - c1.center;
  const Scalar d = norm(delta);
  const double scale = magnitude(c1.center) + magnitude(c2.center) + std::fabs(c1.radius.to_double()) +
                       std::fabs(c2.radius.to_double());
  std::vector<Point2> out;
  if (classify(tol, [&](Bits bits) {
        return Estimate{norm(*Lifted(c2.center, bits) - *Lifted(c1.center, bits)), scale};
      }) == Band::Within) {
    if (classify(tol, [&](Bits bits) {
          return Estimate{lifted(c1.radius, bits) - lifted(c2.radius, bits), scale};
        }) == Band::Within) {
      throw Error(ErrorCode::CoincidentCircles, "circles coincide; infinite intersection");
    }
    return out;
  }
  auto band_of = [&](auto&& expr) {
    return classify(tol, [&](Bits bits) {
      Scalar dd = norm(*Lifted(c2.center, bits) - *Lifted(c1.center, bits));
      return Estimate{expr(dd, lifted(c1.radius, bits), lifted(c2.radius, bits)), scale};
    });
  };
  const Band outer = band_of([](const Scalar& dd, const Scalar& r1, const Scalar& r2) {
    return dd - (r1 + r2);
  });
  const Band inner = band_of([](const Scalar& dd, const Scalar& r1, const Scalar& r2) {
    return dd - abs(r1 - r2);
  });
  const Point2 e = delta / d;
  if (outer == Band::Above || inner == Band::Below) {
    return out;
  }
  if (outer == Band::Within) {
    out.push_back(c1.center + e * c1.radius);
  } else if (inner == Band::Within) {
    if (c1.radius > c2.radius) {
      out.push_back(c1.center + e * c1.radius);
    } else {
      out.push_back(c1.center - e * c1.radius);
    }
  } else {
    const Scalar a = (square(d) + square(c1.radius) - square(c2.radius)) / (d * 2L);
    const Scalar h = safe_sqrt(square(c1.radius) - square(a));
    const Point2 base = c1.center + e * a;
    const Point2 n = perp_left(e);
    out.push_back(base + n * h);
    out.push_back(base - n * h);
  }
  sort_lexicographic(out, tol);
  return out;
}

}  // namespace matchstick::numerics
