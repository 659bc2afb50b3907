#include "matchstick/board.hpp"

#include <cmath>

namespace matchstick {

using numerics::Band;
using numerics::Bits;
using numerics::Cmp;
using numerics::Estimate;
using numerics::Point2;
using numerics::Ratio;
using numerics::Scalar;
using numerics::Segment2;

namespace {

constexpr int kHalfAngles[] = {20, 25, 28, 15, 22, 27, 12, 18, 24, 29, 11, 14, 17, 21, 23, 26};

std::string thousandths(std::uint64_t v) {
  std::string out = std::to_string(v / 1000);
  std::uint64_t frac = v % 1000;
  if (frac != 0) {
    std::string digits = std::to_string(1000 + frac).substr(1);
    while (digits.back() == '0') {
      digits.pop_back();
    }
    out += '.' + digits;
  }
  return out;
}

}  // namespace

ChoiceSource::ChoiceSource(ChoiceStrategy strategy, std::uint64_t seed)
    : strategy_(strategy), seed_(seed), rng_(seed) {}

Ratio ChoiceSource::interior_parameter() {
  if (strategy_ == ChoiceStrategy::Half) {
    return {1, 2};
  }
  return numerics::ratio_near(static_cast<double>(100 + rng_() % 801) / 1000.0, 1000);
}

Ratio ChoiceSource::zigzag_height() {
  if (strategy_ == ChoiceStrategy::Half) {
    return {3, 5};
  }
  return numerics::ratio_near(static_cast<double>(300 + rng_() % 601) / 1000.0, 1000);
}

std::string ChoiceSource::trial_angle(std::size_t k) {
  if (strategy_ == ChoiceStrategy::Half) {
    return std::to_string(kHalfAngles[k % std::size(kHalfAngles)]);
  }
  return thousandths(10000 + 1 + rng_() % 19000);
}

bool ChoiceSource::trial_left(std::size_t k) const { return (seed_ + k) % 2 == 0; }

// -- board ----------------------------------------------------------------

Board::Board(Config config)
    : config_(std::move(config)),
      monitor_(std::make_unique<numerics::EscalationMonitor>()),
      choices_(config_.choice_strategy, config_.seed) {
  config_.validate();
  tol_ = config_.tolerance(monitor_.get());
  cell_size_ = std::max(std::ldexp(1.0, -20), 4.0 * tol_.epsilon.to_double());
  trace_.header = trace::make_header(config_);
}

void Board::check(PointId id) const {
  if (id.value >= points_.size()) {
    throw Error(ErrorCode::UnknownId, "no point " + trace::to_string(id));
  }
}

void Board::check(StickId id) const {
  if (id.value >= sticks_.size()) {
    throw Error(ErrorCode::UnknownId, "no stick " + trace::to_string(id));
  }
}

const Point2& Board::point(PointId id) const {
  check(id);
  return points_[id.value];
}

const Stick& Board::stick(StickId id) const {
  check(id);
  return sticks_[id.value];
}

Board::CellKey Board::cell_of(double x, double y) const {
  return {static_cast<std::int64_t>(std::floor(x / cell_size_)),
          static_cast<std::int64_t>(std::floor(y / cell_size_))};
}

std::optional<PointId> Board::find_point(const Point2& p) const {
  const CellKey home = cell_of(p.x.to_double(), p.y.to_double());
  std::optional<PointId> best;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      auto it = cells_.find({home.x + dx, home.y + dy});
      if (it == cells_.end()) {
        continue;
      }
      for (std::uint32_t idx : it->second) {
        if ((!best || idx < best->value) && numerics::points_equal(points_[idx], p, tol_)) {
          best = PointId{idx};
        }
      }
    }
  }
  return best;
}

PointId Board::create_point(Point2 p) {
  if (p.x.bits() != tol_.working_bits || p.y.bits() != tol_.working_bits) {
    p = p.with_bits(tol_.working_bits);
  }
  const PointId id{static_cast<std::uint32_t>(points_.size())};
  const CellKey key = cell_of(p.x.to_double(), p.y.to_double());
  point_text_.push_back({p.x.to_decimal(config_.output_digits), p.y.to_decimal(config_.output_digits)});
  points_.push_back(std::move(p));
  cells_[key].push_back(id.value);
  return id;
}

PointId Board::register_point(Point2 p) {
  if (auto existing = find_point(p)) {
    return *existing;
  }
  return create_point(std::move(p));
}

StickId Board::create_stick(PointId a, PointId b) {
  const StickId id{static_cast<std::uint32_t>(sticks_.size())};
  sticks_.push_back({id, a, b, Segment2{points_[a.value], points_[b.value]}, trace_.records.size()});
  return id;
}

std::uint64_t Board::append(trace::Instruction ins, bool primitive) {
  const std::uint64_t seq = trace_.records.size();
  trace_.records.push_back({seq, std::move(ins)});
  primitives_ += primitive ? 1 : 0;
  return seq;
}

PointId Board::given(const Point2& p) {
  const trace::Coord text{p.x.to_decimal(config_.output_digits), p.y.to_decimal(config_.output_digits)};
  const PointId id = create_point(Point2::from_decimal(text.x, text.y, tol_.working_bits));
  append(trace::op::Given{id, text}, false);
  return id;
}

StickId Board::lay_stick_both_ends(PointId p, PointId q) {
  check(p);
  check(q);
  if (numerics::cmp_unit_distance(points_[p.value], points_[q.value], tol_) != Cmp::Equal) {
    throw Error(ErrorCode::UnitLengthViolation,
                trace::to_string(p) + " and " + trace::to_string(q) + " are not at unit distance");
  }
  const StickId s = create_stick(p, q);
  append(trace::op::LayBothEnds{p, q, s}, true);
  return s;
}

std::pair<StickId, PointId> Board::lay_stick_from_through(PointId p, PointId q) {
  check(p);
  check(q);
  const Point2& pp = points_[p.value];
  const Point2& qq = points_[q.value];
  if (numerics::cmp_unit_distance(pp, qq, tol_) == Cmp::Greater) {
    throw Error(ErrorCode::UnitLengthViolation,
                trace::to_string(p) + " and " + trace::to_string(q) + " are more than a unit apart");
  }
  const PointId far = register_point(numerics::unit_point_on_ray(pp, qq, tol_));
  const StickId s = create_stick(p, far);
  append(trace::op::LayFromThrough{p, q, s, far, text(far)}, true);
  return {s, far};
}

StickId Board::lay_stick_through_both(PointId p, PointId q, Ratio t) {
  check(p);
  check(q);
  const Point2& pp = points_[p.value];
  const Point2& qq = points_[q.value];
  if (numerics::points_equal(pp, qq, tol_)) {
    throw Error(ErrorCode::DegenerateDirection, "a stick through one point has no direction");
  }
  if (numerics::cmp_unit_distance(pp, qq, tol_) != Cmp::Less) {
    throw Error(ErrorCode::UnitLengthViolation,
                trace::to_string(p) + " and " + trace::to_string(q) + " leave no room inside one stick");
  }
  // 0 < t < 1 - |pq|
  const Band room = numerics::classify(tol_, [&](Bits bits) {
    const Scalar d = numerics::distance(pp.with_bits(bits), qq.with_bits(bits));
    return Estimate{Scalar(1, bits) - d - t.value(bits), 4.0};
  });
  if (t.num <= 0 || room != Band::Above) {
    throw Error(ErrorCode::OffsetOutOfRange, "offset " + t.to_string() + " outside the admissible interval");
  }
  const Point2 u = numerics::unit_point_on_ray(pp, qq, tol_) - pp;
  const Scalar tv = t.value(tol_.working_bits);
  Point2 end_b = pp + u * (Scalar(1, tol_.working_bits) - tv);
  const PointId a = register_point(pp - u * tv);  // may reallocate points_
  const PointId b = register_point(std::move(end_b));
  const StickId s = create_stick(a, b);
  append(trace::op::LayThroughBoth{p, q, t, s, a, text(a), b, text(b)}, true);
  return s;
}

std::pair<StickId, PointId> Board::lay_stick_free(PointId p, std::optional<StickId> ref,
                                                  std::string_view angle_degrees) {
  check(p);
  Point2 dir{Scalar(1, tol_.working_bits), Scalar(0, tol_.working_bits)};
  if (ref) {
    check(*ref);
    const Segment2& seg = sticks_[ref->value].segment;
    dir = seg.b - seg.a;
    dir = dir / numerics::norm(dir);
  }
  const Scalar angle = Scalar::from_decimal(angle_degrees, tol_.working_bits);
  const PointId far = register_point(points_[p.value] + numerics::rotate_degrees(dir, angle));
  if (far == p) {
    throw Error(ErrorCode::DegenerateDirection, "free stick collapsed onto its origin");
  }
  const StickId s = create_stick(p, far);
  append(trace::op::LayFree{p, ref, std::string(angle_degrees), s, far, text(far)}, true);
  return {s, far};
}

PointId Board::choose_point_on_stick(StickId s, Ratio t, bool interior_only) {
  check(s);
  const bool inside = interior_only ? (t.num > 0 && t.num < t.den) : (t.num >= 0 && t.num <= t.den);
  if (!inside) {
    throw Error(ErrorCode::OffsetOutOfRange, "parameter " + t.to_string() + " outside the stick");
  }
  const Segment2& seg = sticks_[s.value].segment;
  const PointId id = register_point(seg.a + (seg.b - seg.a) * t.value(tol_.working_bits));
  append(trace::op::ChoosePoint{s, t, interior_only, id, text(id)}, true);
  return id;
}

std::vector<Point2> Board::compass_candidates(PointId center, StickId s) const {
  check(center);
  check(s);
  return numerics::unit_circle_segment_intersection(points_[center.value], sticks_[s.value].segment, tol_);
}

PointId Board::compass_intersect(PointId center, StickId s, std::uint32_t pick) {
  std::vector<Point2> hits = compass_candidates(center, s);
  if (hits.empty()) {
    throw Error(ErrorCode::NoIntersection,
                "unit circle about " + trace::to_string(center) + " misses " + trace::to_string(s));
  }
  if (pick >= hits.size()) {
    throw Error(ErrorCode::PickOutOfRange,
                "pick " + std::to_string(pick) + " of " + std::to_string(hits.size()) + " candidates");
  }
  const PointId id = register_point(std::move(hits[pick]));
  append(trace::op::Compass{center, {s}, pick, static_cast<std::uint32_t>(hits.size()), id, text(id)}, true);
  return id;
}

PointId Board::mark_crossing(StickId s1, StickId s2) {
  check(s1);
  check(s2);
  numerics::SegmentMeet meet =
      numerics::segment_intersection(sticks_[s1.value].segment, sticks_[s2.value].segment, tol_);
  if (meet.kind == numerics::SegmentMeet::Kind::None) {
    throw Error(ErrorCode::NoCrossing, trace::to_string(s1) + " and " + trace::to_string(s2) + " do not cross");
  }
  if (meet.kind == numerics::SegmentMeet::Kind::Overlap) {
    throw Error(ErrorCode::CollinearOverlap,
                trace::to_string(s1) + " and " + trace::to_string(s2) + " overlap along a line");
  }
  const PointId id = register_point(std::move(*meet.point));
  append(trace::op::MarkCrossing{s1, s2, id, text(id)}, true);
  return id;
}

Cmp Board::cmp_unit(PointId p, PointId q) {
  check(p);
  check(q);
  const Cmp c = numerics::cmp_unit_distance(points_[p.value], points_[q.value], tol_);
  append(trace::op::CmpUnit{p, q, c}, true);
  return c;
}

void Board::note_output(std::string name, std::string kind, std::vector<PointId> points) {
  for (PointId id : points) {
    check(id);
  }
  append(trace::op::Output{std::move(name), std::move(kind), std::move(points)}, false);
}

void Board::note_intersection(std::string name, std::vector<PointId> points) {
  for (PointId id : points) {
    check(id);
  }
  append(trace::op::IntersectNote{std::move(name), std::move(points)}, false);
}

// -- replay -----------------------------------------------------------------

namespace {

[[noreturn]] void diverged(std::uint64_t seq, const std::string& what) {
  throw Error(ErrorCode::IdSequenceViolation, "record " + std::to_string(seq) + ": " + what);
}

template <class Id>
void expect(std::uint64_t seq, Id got, Id recorded) {
  if (got != recorded) {
    diverged(seq, "produced " + trace::to_string(got) + " where the trace has " + trace::to_string(recorded));
  }
}

}  // namespace

Board Board::replay(const trace::Trace& t) {
  Board board(trace::config_of(t.header));
  for (const trace::Record& rec : t.records) {
    const std::uint64_t seq = rec.seq;
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          namespace op = trace::op;
          if constexpr (std::is_same_v<T, op::Given>) {
            expect(seq, board.given(Point2::from_decimal(r.at.x, r.at.y, board.tol_.working_bits)), r.point);
          } else if constexpr (std::is_same_v<T, op::LayBothEnds>) {
            expect(seq, board.lay_stick_both_ends(r.p, r.q), r.stick);
          } else if constexpr (std::is_same_v<T, op::LayFromThrough>) {
            auto [s, far] = board.lay_stick_from_through(r.p, r.q);
            expect(seq, s, r.stick);
            expect(seq, far, r.far);
          } else if constexpr (std::is_same_v<T, op::LayThroughBoth>) {
            const StickId s = board.lay_stick_through_both(r.p, r.q, r.t);
            expect(seq, s, r.stick);
            expect(seq, board.stick(s).a, r.a);
            expect(seq, board.stick(s).b, r.b);
          } else if constexpr (std::is_same_v<T, op::LayFree>) {
            auto [s, far] = board.lay_stick_free(r.p, r.ref, r.angle);
            expect(seq, s, r.stick);
            expect(seq, far, r.far);
          } else if constexpr (std::is_same_v<T, op::ChoosePoint>) {
            expect(seq, board.choose_point_on_stick(r.stick, r.t, r.interior), r.point);
          } else if constexpr (std::is_same_v<T, op::Compass>) {
            if (r.sticks.size() != 1) {
              throw Error(ErrorCode::SimultaneityViolation, "compass against several sticks at once");
            }
            expect(seq, board.compass_intersect(r.center, r.sticks.front(), r.pick), r.point);
          } else if constexpr (std::is_same_v<T, op::CompassCircles>) {
            throw Error(ErrorCode::SimultaneityViolation, "two unit circles cannot be intersected in one step");
          } else if constexpr (std::is_same_v<T, op::MarkCrossing>) {
            expect(seq, board.mark_crossing(r.s1, r.s2), r.point);
          } else if constexpr (std::is_same_v<T, op::CmpUnit>) {
            if (board.cmp_unit(r.p, r.q) != r.result) {
              diverged(seq, "measurement differs");
            }
          } else if constexpr (std::is_same_v<T, op::Output>) {
            board.note_output(r.name, r.kind, r.points);
          } else {
            board.note_intersection(r.name, r.points);
          }
        },
        rec.ins);
  }
  return board;
}

}  // namespace matchstick
