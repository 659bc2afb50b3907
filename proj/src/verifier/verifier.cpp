#include "matchstick/verifier.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "matchstick/config.hpp"

namespace matchstick::verifier {

using numerics::Cmp;
using numerics::Point2;
using numerics::Scalar;
using numerics::Segment2;
using trace::Coord;
using trace::PointId;
using trace::StickId;

std::string_view to_string(Verdict v) { return v == Verdict::Accept ? "Accept" : "Reject"; }

bool VerifyReport::has(ErrorCode code) const {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "verdict: " << to_string(verdict) << '\n';
  out << "records: " << stats.records << " (" << stats.primitives << " primitive)\n";
  out << "precision: " << stats.working_bits << " bits working, " << stats.peak_bits << " peak, "
      << stats.escalations << " escalations\n";
  for (const auto& [kind, n] : stats.by_kind) {
    out << "  " << kind << ": " << n << '\n';
  }
  for (const Finding& f : findings) {
    out << "seq " << f.seq << ": " << matchstick::to_string(f.code) << ": " << f.message << '\n';
  }
  return out.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["findings"] = nlohmann::ordered_json::array();
  for (const Finding& f : findings) {
    j["findings"].push_back({{"seq", f.seq}, {"code", matchstick::to_string(f.code)}, {"message", f.message}});
  }
  nlohmann::ordered_json kinds = nlohmann::ordered_json::object();
  for (const auto& [kind, n] : stats.by_kind) {
    kinds[kind] = n;
  }
  j["stats"] = {{"records", stats.records},
                {"primitives", stats.primitives},
                {"by_kind", kinds},
                {"working_bits", stats.working_bits},
                {"peak_bits", stats.peak_bits},
                {"escalations", stats.escalations}};
  return j.dump();
}

Scalar claim_tolerance(std::string_view decimal, int output_digits, const Scalar& epsilon) {
  const numerics::Bits bits = epsilon.bits();
  std::string_view mantissa = decimal;
  long exponent = 0;
  if (auto e = decimal.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = decimal.substr(0, e);
    exponent = std::stol(std::string(decimal.substr(e + 1)));
  }
  // place value (power of ten) of the first significant and the last written digit
  long place = 0;
  auto dot = mantissa.find('.');
  long int_digits = 0;
  for (char ch : mantissa.substr(0, dot)) {
    int_digits += std::isdigit(static_cast<unsigned char>(ch)) ? 1 : 0;
  }
  place = int_digits - 1;
  std::optional<long> first;
  long last = place;
  for (char ch : mantissa) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      continue;
    }
    if (!first && ch != '0') {
      first = place;
    }
    last = place;
    --place;
  }
  if (!first) {
    return epsilon;  // an exact zero claim
  }
  const long written = *first - last + 1;
  const long lsd = *first + exponent - std::max<long>(written, output_digits) + 1;
  thread_local std::map<std::pair<long, numerics::Bits>, Scalar> half_ulps;
  auto it = half_ulps.find({lsd, bits});
  if (it == half_ulps.end()) {
    it = half_ulps.emplace(std::make_pair(lsd, bits), Scalar::from_decimal("5e" + std::to_string(lsd - 1), bits)).first;
  }
  return epsilon + it->second;
}

namespace {

class Referee {
 public:
  Referee(const trace::Trace& t, VerifyOptions options)
      : trace_(t), options_(options), config_(trace::config_of(t.header)), tol_(config_.tolerance(&monitor_)) {}

  VerifyReport run() {
    report_.stats.records = trace_.records.size();
    report_.stats.working_bits = tol_.working_bits;
    for (std::size_t i = 0; i < trace_.records.size(); ++i) {
      const trace::Record& rec = trace_.records[i];
      ++report_.stats.by_kind[std::string(trace::op_name(rec.ins))];
      report_.stats.primitives += trace::is_primitive(rec.ins) ? 1 : 0;
      if (rec.seq != i) {
        fail(rec.seq, ErrorCode::IdSequenceViolation, "record " + std::to_string(i) + " carries seq " +
                                                          std::to_string(rec.seq));
      }
      const std::uint64_t before = monitor_.escalations;
      try {
        std::visit([&](const auto& r) { step(rec.seq, r); }, rec.ins);
      } catch (const Error& e) {
        fail(rec.seq, e.code(), e.detail());
        std::visit([&](const auto& r) { adopt(r); }, rec.ins);
      }
      if (options_.strict && monitor_.escalations != before) {
        fail(rec.seq, ErrorCode::PrecisionEscalation,
             "a predicate needed more than " + std::to_string(tol_.working_bits) + " bits");
      }
    }
    report_.stats.peak_bits = std::max(monitor_.peak_bits, tol_.working_bits);
    report_.stats.escalations = monitor_.escalations;
    report_.verdict = report_.findings.empty() ? Verdict::Accept : Verdict::Reject;
    return std::move(report_);
  }

 private:
  void fail(std::uint64_t seq, ErrorCode code, std::string message) {
    report_.findings.push_back({seq, code, std::move(message)});
  }

  const Point2& point(PointId id) const {
    if (id.value >= points_.size()) {
      throw Error(ErrorCode::UnknownId, "no point " + trace::to_string(id));
    }
    return points_[id.value];
  }
  const Segment2& segment(StickId id) const {
    if (id.value >= sticks_.size()) {
      throw Error(ErrorCode::UnknownId, "no stick " + trace::to_string(id));
    }
    return sticks_[id.value];
  }

  Point2 parse_claim(const Coord& c) const { return Point2::from_decimal(c.x, c.y, tol_.working_bits); }

  /// Binds a result to its recorded id and checks the recorded coordinates.
  void settle(std::uint64_t seq, PointId id, const Point2& computed, const Coord& claimed) {
    if (id.value < points_.size()) {
      if (!numerics::points_equal(points_[id.value], computed, tol_)) {
        fail(seq, ErrorCode::CoordinateMismatch,
             "result does not coincide with existing " + trace::to_string(id));
      }
    } else {
      if (id.value > points_.size()) {
        fail(seq, ErrorCode::IdSequenceViolation,
             "fresh point should be " + trace::to_string(PointId{static_cast<std::uint32_t>(points_.size())}) +
                 ", trace has " + trace::to_string(id));
      }
      while (points_.size() <= id.value) {
        points_.push_back(computed);
      }
    }
    check_claim(seq, computed, claimed);
  }

  void check_claim(std::uint64_t seq, const Point2& computed, const Coord& claimed) {
    const Point2 stated = parse_claim(claimed);
    const bool x_ok = numerics::abs(stated.x - computed.x) <=
                      claim_tolerance(claimed.x, config_.output_digits, tol_.epsilon);
    const bool y_ok = numerics::abs(stated.y - computed.y) <=
                      claim_tolerance(claimed.y, config_.output_digits, tol_.epsilon);
    if (!x_ok || !y_ok) {
      fail(seq, ErrorCode::CoordinateMismatch,
           "recorded (" + claimed.x + ", " + claimed.y + ") but recomputed (" +
               computed.x.to_decimal(config_.output_digits) + ", " + computed.y.to_decimal(config_.output_digits) +
               ")");
    }
  }

  void add_stick(std::uint64_t seq, StickId id, PointId a, PointId b) {
    if (id.value != sticks_.size()) {
      fail(seq, ErrorCode::IdSequenceViolation,
           "fresh stick should be " + trace::to_string(StickId{static_cast<std::uint32_t>(sticks_.size())}) +
               ", trace has " + trace::to_string(id));
    }
    while (sticks_.size() <= id.value) {
      sticks_.push_back(Segment2{point(a), point(b)});
    }
  }

  void require_unit_reach(PointId p, PointId q, bool exact) {
    const Cmp c = numerics::cmp_unit_distance(point(p), point(q), tol_);
    if (exact ? c != Cmp::Equal : c == Cmp::Greater) {
      throw Error(ErrorCode::UnitLengthViolation, trace::to_string(p) + " and " + trace::to_string(q) +
                                                      (exact ? " are not at unit distance"
                                                             : " are more than a unit apart"));
    }
  }

  // -- per-instruction recomputation -----------------------------------------

  void step(std::uint64_t seq, const trace::op::Given& r) {
    const Point2 value = parse_claim(r.at);
    settle(seq, r.point, value, r.at);
  }

  void step(std::uint64_t seq, const trace::op::LayBothEnds& r) {
    require_unit_reach(r.p, r.q, true);
    add_stick(seq, r.stick, r.p, r.q);
  }

  void step(std::uint64_t seq, const trace::op::LayFromThrough& r) {
    require_unit_reach(r.p, r.q, false);
    settle(seq, r.far, numerics::unit_point_on_ray(point(r.p), point(r.q), tol_), r.at);
    add_stick(seq, r.stick, r.p, r.far);
  }

  void step(std::uint64_t seq, const trace::op::LayThroughBoth& r) {
    const Point2& p = point(r.p);
    const Point2& q = point(r.q);
    if (numerics::points_equal(p, q, tol_)) {
      throw Error(ErrorCode::DegenerateDirection, "a stick through one point has no direction");
    }
    if (numerics::cmp_unit_distance(p, q, tol_) != Cmp::Less) {
      throw Error(ErrorCode::UnitLengthViolation,
                  trace::to_string(r.p) + " and " + trace::to_string(r.q) + " do not fit inside one stick");
    }
    if (r.t.den <= 0 || r.t.num <= 0) {
      throw Error(ErrorCode::OffsetOutOfRange, "overhang " + r.t.to_string() + " must be positive");
    }
    const numerics::Band room = numerics::classify(tol_, [&](numerics::Bits bits) {
      const Scalar d = numerics::distance(p.with_bits(bits), q.with_bits(bits));
      return numerics::Estimate{Scalar(1, bits) - d - r.t.value(bits), 4.0};
    });
    if (room != numerics::Band::Above) {
      throw Error(ErrorCode::OffsetOutOfRange, "overhang " + r.t.to_string() + " pushes an end inside the points");
    }
    const Point2 u = numerics::unit_point_on_ray(p, q, tol_) - p;
    const Scalar t = r.t.value(tol_.working_bits);
    const Point2 a = p - u * t;
    const Point2 b = p + u * (Scalar(1, tol_.working_bits) - t);
    settle(seq, r.a, a, r.a_at);
    settle(seq, r.b, b, r.b_at);
    add_stick(seq, r.stick, r.a, r.b);
  }

  void step(std::uint64_t seq, const trace::op::LayFree& r) {
    const Point2& p = point(r.p);
    Point2 dir{Scalar(1, tol_.working_bits), Scalar(0, tol_.working_bits)};
    if (r.ref) {
      const Segment2& seg = segment(*r.ref);
      dir = seg.b - seg.a;
      dir = dir / numerics::norm(dir);
    }
    const Scalar angle = Scalar::from_decimal(r.angle, tol_.working_bits);
    settle(seq, r.far, p + numerics::rotate_degrees(dir, angle), r.at);
    add_stick(seq, r.stick, r.p, r.far);
  }

  void step(std::uint64_t seq, const trace::op::ChoosePoint& r) {
    const Segment2& seg = segment(r.stick);
    const bool inside = r.t.den > 0 && (r.interior ? (r.t.num > 0 && r.t.num < r.t.den)
                                                   : (r.t.num >= 0 && r.t.num <= r.t.den));
    if (!inside) {
      throw Error(ErrorCode::OffsetOutOfRange, "parameter " + r.t.to_string() + " outside the stick");
    }
    settle(seq, r.point, seg.a + (seg.b - seg.a) * r.t.value(tol_.working_bits), r.at);
  }

  void step(std::uint64_t seq, const trace::op::Compass& r) {
    if (r.sticks.size() != 1) {
      throw Error(ErrorCode::SimultaneityViolation,
                  "compass used against " + std::to_string(r.sticks.size()) + " sticks at once");
    }
    const std::vector<Point2> hits =
        numerics::unit_circle_segment_intersection(point(r.center), segment(r.sticks.front()), tol_);
    if (hits.size() != r.candidates) {
      throw Error(ErrorCode::CandidateCountMismatch, "recorded " + std::to_string(r.candidates) +
                                                         " candidates, recomputed " + std::to_string(hits.size()));
    }
    if (r.pick >= hits.size()) {
      throw Error(ErrorCode::PickOutOfRange,
                  "pick " + std::to_string(r.pick) + " of " + std::to_string(hits.size()) + " candidates");
    }
    settle(seq, r.point, hits[r.pick], r.at);
  }

  void step(std::uint64_t, const trace::op::CompassCircles& r) {
    throw Error(ErrorCode::SimultaneityViolation, "intersecting " + std::to_string(r.centers.size()) +
                                                      " unit circles needs two sticks as compasses at once");
  }

  void step(std::uint64_t seq, const trace::op::MarkCrossing& r) {
    const numerics::SegmentMeet meet = numerics::segment_intersection(segment(r.s1), segment(r.s2), tol_);
    if (meet.kind == numerics::SegmentMeet::Kind::None) {
      throw Error(ErrorCode::NoCrossing, trace::to_string(r.s1) + " and " + trace::to_string(r.s2) + " do not cross");
    }
    if (meet.kind == numerics::SegmentMeet::Kind::Overlap) {
      throw Error(ErrorCode::CollinearOverlap,
                  trace::to_string(r.s1) + " and " + trace::to_string(r.s2) + " overlap along a line");
    }
    settle(seq, r.point, *meet.point, r.at);
  }

  void step(std::uint64_t, const trace::op::CmpUnit& r) {
    const Cmp c = numerics::cmp_unit_distance(point(r.p), point(r.q), tol_);
    if (c != r.result) {
      throw Error(ErrorCode::MeasurementMismatch, "recorded " + std::string(numerics::to_string(r.result)) +
                                                      ", recomputed " + std::string(numerics::to_string(c)));
    }
  }

  void step(std::uint64_t, const trace::op::Output& r) {
    for (PointId id : r.points) {
      point(id);
    }
  }

  void step(std::uint64_t, const trace::op::IntersectNote& r) {
    for (PointId id : r.points) {
      point(id);
    }
  }

  // -- recovery after a rejected record ----------------------------------------
  // Created ids take their recorded values so later records stay checkable.

  void adopt_point(PointId id, const Coord& at) {
    while (points_.size() <= id.value) {
      try {
        points_.push_back(parse_claim(at));
      } catch (const Error&) {
        points_.push_back(Point2::from_decimal("0", "0", tol_.working_bits));
      }
    }
  }
  void adopt_stick(StickId id, PointId a, PointId b) {
    while (sticks_.size() <= id.value) {
      const bool known = a.value < points_.size() && b.value < points_.size();
      const Point2 zero = Point2::from_decimal("0", "0", tol_.working_bits);
      sticks_.push_back(known ? Segment2{points_[a.value], points_[b.value]} : Segment2{zero, zero});
    }
  }

  void adopt(const trace::op::Given& r) { adopt_point(r.point, r.at); }
  void adopt(const trace::op::LayBothEnds& r) { adopt_stick(r.stick, r.p, r.q); }
  void adopt(const trace::op::LayFromThrough& r) {
    adopt_point(r.far, r.at);
    adopt_stick(r.stick, r.p, r.far);
  }
  void adopt(const trace::op::LayThroughBoth& r) {
    adopt_point(r.a, r.a_at);
    adopt_point(r.b, r.b_at);
    adopt_stick(r.stick, r.a, r.b);
  }
  void adopt(const trace::op::LayFree& r) {
    adopt_point(r.far, r.at);
    adopt_stick(r.stick, r.p, r.far);
  }
  void adopt(const trace::op::ChoosePoint& r) { adopt_point(r.point, r.at); }
  void adopt(const trace::op::Compass& r) { adopt_point(r.point, r.at); }
  void adopt(const trace::op::CompassCircles& r) { adopt_point(r.point, r.at); }
  void adopt(const trace::op::MarkCrossing& r) { adopt_point(r.point, r.at); }
  void adopt(const trace::op::CmpUnit&) {}
  void adopt(const trace::op::Output&) {}
  void adopt(const trace::op::IntersectNote&) {}

  const trace::Trace& trace_;
  VerifyOptions options_;
  Config config_;
  numerics::EscalationMonitor monitor_;
  numerics::Tolerance tol_;
  std::vector<Point2> points_;
  std::vector<Segment2> sticks_;
  VerifyReport report_;
};

}  // namespace

VerifyReport verify(const trace::Trace& t, VerifyOptions options) { return Referee(t, options).run(); }

VerifyReport verify_trace(std::string_view text, VerifyOptions options) {
  return verify(trace::parse(text), options);
}

}  // namespace matchstick::verifier
