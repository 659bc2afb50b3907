#include <optional>

#include "matchstick/constructions.hpp"
#include "matchstick/lang.hpp"

namespace matchstick::lang {

namespace {

using constructions::CircleSpec;
using constructions::Constructor;
using constructions::LineId;
using numerics::Point2;
using numerics::Scalar;

struct Value {
  Type type = Type::Point;
  PointId point;
  LineId line = 0;
  CircleSpec circle;
};

class Lowering {
 public:
  explicit Lowering(const Config& config) : board_(config), c_(board_) {}

  void run(const Program& program) {
    for (const Statement& st : program.statements) {
      try {
        statement(st);
      } catch (const CompileError& e) {
        error_ = e;
        return;
      } catch (const Error& e) {
        error_ = CompileError(e.code(), e.detail(), st.span);
        return;
      }
    }
  }

  Lowered finish() && { return {std::move(board_), std::move(outputs_), std::move(error_)}; }

 private:
  const Value& get(const Name& n) const { return env_.at(n.text); }

  void statement(const Statement& st) {
    if (const auto* decl = std::get_if<PointDecl>(&st.node)) {
      const auto bits = board_.config().precision_bits;
      env_[decl->name.text] = point(board_.given(Point2::from_decimal(decl->x, decl->y, bits)));
    } else if (const auto* let = std::get_if<Let>(&st.node)) {
      env_[let->name.text] = evaluate(let->name.text, let->value);
    } else if (const auto* out = std::get_if<Output>(&st.node)) {
      output(out->name.text, get(out->name));
    } else {
      check_on(std::get<Assert>(st.node), st.span);
    }
  }

  Value evaluate(const std::string& name, const Expr& e) {
    const auto& a = e.args;
    switch (e.op) {
      case Op::Line:
        return line(c_.line_through(get(a[0]).point, get(a[1]).point));
      case Op::Circle:
        if (get(a[0]).point == get(a[1]).point) {
          throw Error(ErrorCode::DegenerateSegment, "circle has zero radius");
        }
        return {Type::Circle, {}, 0, {get(a[0]).point, get(a[1]).point}};
      case Op::Midpoint:
        return point(c_.midpoint(get(a[0]).point, get(a[1]).point));
      case Op::PerpBisector: {
        const PointId p = get(a[0]).point;
        const PointId q = get(a[1]).point;
        return line(c_.perpendicular_bisector(p, q, c_.line_through(p, q)).line);
      }
      case Op::Perp:
        return line(c_.perpendicular_through(get(a[0]).line, get(a[1]).point));
      case Op::Parallel:
        return line(c_.parallel_through(get(a[0]).line, get(a[1]).point));
      case Op::Translate:
        return point(c_.translate_segment(get(a[0]).point, get(a[1]).point, get(a[2]).point));
      case Op::Intersect:
        return point(intersect(name, e));
    }
    throw Error(ErrorCode::SyntaxError, "unknown expression");
  }

  static Value point(PointId p) { return {Type::Point, p, 0, {}}; }
  static Value line(LineId l) { return {Type::Line, {}, l, {}}; }

  PointId intersect(const std::string& name, const Expr& e) {
    const std::string& first = e.args[0].text;
    const std::string& second = e.args[1].text;
    const auto key = first < second ? std::make_pair(first, second) : std::make_pair(second, first);
    auto it = meets_.find(key);
    if (it == meets_.end()) {
      it = meets_.emplace(key, meet(get(e.args[0]), get(e.args[1]))).first;
    }
    const std::vector<PointId>& points = it->second;
    board_.note_intersection(name, points);
    if (points.empty()) {
      throw Error(ErrorCode::NoIntersection, "'" + first + "' and '" + second + "' do not meet");
    }
    if (static_cast<std::size_t>(e.index) >= points.size()) {
      throw Error(ErrorCode::PickOutOfRange, "index " + std::to_string(e.index) + " of an intersection with " +
                                                 std::to_string(points.size()) + " point");
    }
    return points[static_cast<std::size_t>(e.index)];
  }

  std::vector<PointId> meet(const Value& x, const Value& y) {
    if (x.type == Type::Line && y.type == Type::Line) {
      const auto kind =
          numerics::line_line_intersection(c_.line(x.line).carrier, c_.line(y.line).carrier, board_.tolerance())
              .kind;
      if (kind == numerics::LineMeet::Kind::Parallel) {
        return {};
      }
      return {c_.intersect_lines(x.line, y.line)};
    }
    if (x.type == Type::Circle && y.type == Type::Circle) {
      return c_.circle_circle_intersect(x.circle, y.circle);
    }
    return x.type == Type::Circle ? c_.circle_line_intersect(x.circle, y.line)
                                  : c_.circle_line_intersect(y.circle, x.line);
  }

  void output(const std::string& name, const Value& v) {
    std::vector<PointId> ids;
    switch (v.type) {
      case Type::Point: ids = {v.point}; break;
      case Type::Line: ids = {c_.vertex(v.line, 0), c_.vertex(v.line, 1)}; break;
      case Type::Circle: ids = {v.circle.center, v.circle.on_point}; break;
    }
    board_.note_output(name, std::string(to_string(v.type)), ids);
    outputs_.emplace_back(name, std::move(ids));
  }

  void check_on(const Assert& a, const SourceSpan& span) {
    const Point2& p = board_.point(get(a.args[0]).point);
    const Value& target = get(a.args[1]);
    Scalar off;
    if (target.type == Type::Line) {
      off = abs(c_.line(target.line).carrier.signed_distance(p));
    } else {
      const Point2& o = board_.point(target.circle.center);
      off = abs(numerics::distance(o, p) - numerics::distance(o, board_.point(target.circle.on_point)));
    }
    if (off > board_.config().epsilon_cmp_value()) {
      throw CompileError(ErrorCode::AssertionFailed,
                         "'" + a.args[0].text + "' is off '" + a.args[1].text + "' by " + off.to_decimal(6), span);
    }
  }

  Board board_;
  Constructor c_;
  std::map<std::string, Value> env_;
  std::map<std::pair<std::string, std::string>, std::vector<PointId>> meets_;
  std::vector<std::pair<std::string, std::vector<PointId>>> outputs_;
  std::optional<CompileError> error_;
};

}  // namespace

Lowered lower_partial(const Program& program, const Config& config) {
  config.validate();
  Lowering lowering(config);
  lowering.run(program);
  return std::move(lowering).finish();
}

Lowered lower(const Program& program, const Config& config) {
  Lowered result = lower_partial(program, config);
  if (result.error) {
    throw *result.error;
  }
  return result;
}

}  // namespace matchstick::lang
