#include "matchstick/oracle.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace matchstick::oracle {

namespace {

using lang::Type;
using numerics::Circle2;
using numerics::Line2;
using numerics::Point2;
using numerics::Scalar;

class Evaluator {
 public:
  Evaluator(const Config& config, Evaluation& out) : out_(out) {
    out_.bits = analytic_bits(config);
    tol_.working_bits = out_.bits;
    tol_.max_bits = std::max(config.max_precision_bits, out_.bits * 4);
    tol_.epsilon = parse_epsilon(config.epsilon_eq, out_.bits);
  }

  void statement(const lang::Statement& st) {
    if (const auto* decl = std::get_if<lang::PointDecl>(&st.node)) {
      Value v;
      v.point = Point2::from_decimal(decl->x, decl->y, out_.bits);
      out_.values[decl->name.text] = v;
    } else if (const auto* let = std::get_if<lang::Let>(&st.node)) {
      out_.values[let->name.text] = evaluate(let->name.text, let->value);
    } else if (const auto* o = std::get_if<lang::Output>(&st.node)) {
      out_.outputs.push_back(o->name.text);
    }
  }

 private:
  const Value& get(const lang::Name& n) const { return out_.values.at(n.text); }
  const Point2& pt(const lang::Name& n) const { return get(n).point; }

  void distinct(const Point2& p, const Point2& q, const char* what) const {
    if (numerics::points_equal(p, q, tol_)) {
      throw Error(ErrorCode::DegenerateSegment, what);
    }
  }

  static Value point(Point2 p) {
    Value v;
    v.point = std::move(p);
    return v;
  }

  static Value line(Line2 l) {
    Value v;
    v.type = Type::Line;
    v.line = std::move(l);
    return v;
  }

  Value evaluate(const std::string& name, const lang::Expr& e) {
    const auto& a = e.args;
    switch (e.op) {
      case lang::Op::Line:
        distinct(pt(a[0]), pt(a[1]), "a line needs two distinct points");
        return line(Line2::through(pt(a[0]), pt(a[1])));
      case lang::Op::Circle: {
        distinct(pt(a[0]), pt(a[1]), "circle has zero radius");
        Value v;
        v.type = Type::Circle;
        v.circle = {pt(a[0]), numerics::distance(pt(a[0]), pt(a[1]))};
        return v;
      }
      case lang::Op::Midpoint:
        distinct(pt(a[0]), pt(a[1]), "a line needs two distinct points");
        return point((pt(a[0]) + pt(a[1])) / Scalar(2L, out_.bits));
      case lang::Op::PerpBisector: {
        distinct(pt(a[0]), pt(a[1]), "a line needs two distinct points");
        const Point2 mid = (pt(a[0]) + pt(a[1])) / Scalar(2L, out_.bits);
        const Line2 ab = Line2::through(pt(a[0]), pt(a[1]));
        return line({mid, numerics::perp_left(ab.direction)});
      }
      case lang::Op::Perp:
        return line({pt(a[1]), numerics::perp_left(get(a[0]).line.direction)});
      case lang::Op::Parallel:
        return line({pt(a[1]), get(a[0]).line.direction});
      case lang::Op::Translate:
        distinct(pt(a[0]), pt(a[1]), "segment endpoints coincide");
        return point(pt(a[2]) + (pt(a[1]) - pt(a[0])));
      case lang::Op::Intersect:
        return point(intersect(name, e));
    }
    throw Error(ErrorCode::SyntaxError, "unknown expression");
  }

  Point2 intersect(const std::string& name, const lang::Expr& e) {
    const Value& x = get(e.args[0]);
    const Value& y = get(e.args[1]);
    std::vector<Point2> points;
    if (x.type == Type::Line && y.type == Type::Line) {
      const numerics::LineMeet m = numerics::line_line_intersection(x.line, y.line, tol_);
      if (m.kind == numerics::LineMeet::Kind::Coincident) {
        throw Error(ErrorCode::NoIntersection, "lines coincide");
      }
      if (m.point) {
        points.push_back(*m.point);
      }
    } else if (x.type == Type::Circle && y.type == Type::Circle) {
      points = numerics::circle_circle_intersection_analytic(x.circle, y.circle, tol_);
    } else {
      const Circle2& c = x.type == Type::Circle ? x.circle : y.circle;
      const Line2& l = x.type == Type::Circle ? y.line : x.line;
      points = numerics::circle_line_intersection_analytic(c, l, tol_);
    }
    out_.intersections[name] = points.size();
    if (points.empty()) {
      throw Error(ErrorCode::NoIntersection, "'" + e.args[0].text + "' and '" + e.args[1].text + "' do not meet");
    }
    if (static_cast<std::size_t>(e.index) >= points.size()) {
      throw Error(ErrorCode::PickOutOfRange, "index " + std::to_string(e.index) + " of an intersection with " +
                                                 std::to_string(points.size()) + " point");
    }
    return points[static_cast<std::size_t>(e.index)];
  }

  Evaluation& out_;
  numerics::Tolerance tol_;
};

PointCheck check_point(const Point2& constructed, Point2 analytic) {
  const Point2 c = constructed.with_bits(analytic.x.bits());
  Scalar dx = abs(c.x - analytic.x);
  Scalar dy = abs(c.y - analytic.y);
  return {c, std::move(analytic), std::move(dx), std::move(dy)};
}

OutputCheck check_output(const std::string& name, const Value& v, const std::vector<Point2>& got,
                         const Scalar& eps) {
  OutputCheck out{name, v.type, {}, false};
  const std::size_t expected = v.type == Type::Point ? 1 : 2;
  if (got.size() != expected) {
    return out;
  }
  switch (v.type) {
    case Type::Point:
      out.points.push_back(check_point(got[0], v.point));
      break;
    case Type::Line:
      for (const Point2& p : got) {
        out.points.push_back(check_point(p, v.line.foot_of(p.with_bits(v.line.anchor.x.bits()))));
      }
      break;
    case Type::Circle: {
      const Circle2& c = v.circle;
      out.points.push_back(check_point(got[0], c.center));
      const Point2 on = got[1].with_bits(c.radius.bits());
      const Point2 radial = on - c.center;
      const Scalar len = numerics::norm(radial);
      out.points.push_back(check_point(on, len.is_zero() ? on : c.center + radial * (c.radius / len)));
      break;
    }
  }
  out.pass = std::all_of(out.points.begin(), out.points.end(),
                         [&](const PointCheck& p) { return p.dx <= eps && p.dy <= eps; });
  return out;
}

std::string short_decimal(const Scalar& s) { return s.to_decimal(6); }

}  // namespace

numerics::Bits analytic_bits(const Config& config) { return std::max<numerics::Bits>(512, config.precision_bits * 2); }

Evaluation evaluate_analytic(const lang::Program& program, const Config& config, bool stop_at_error) {
  config.validate();
  Evaluation out;
  Evaluator ev(config, out);
  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    try {
      ev.statement(program.statements[i]);
    } catch (const Error& e) {
      if (!stop_at_error) {
        throw;
      }
      out.stopped = e.code();
      out.stopped_at = i;
      break;
    }
  }
  return out;
}

Constructed constructed_outputs(const Board& board) {
  Constructed out;
  for (const trace::Record& r : board.trace().records) {
    if (const auto* o = std::get_if<trace::op::Output>(&r.ins)) {
      auto& pts = out.outputs[o->name];
      pts.clear();
      for (const PointId id : o->points) {
        pts.push_back(board.point(id));
      }
    } else if (const auto* n = std::get_if<trace::op::IntersectNote>(&r.ins)) {
      out.intersections[n->name] = n->points.size();
    }
  }
  return out;
}

Constructed constructed_outputs(const trace::Trace& t) { return constructed_outputs(Board::replay(t)); }

OracleReport compare(const lang::Program& program, const Constructed& constructed, const Config& config) {
  const Evaluation ev = evaluate_analytic(program, config, true);
  OracleReport report;
  report.epsilon = parse_epsilon(config.epsilon_cmp, ev.bits);
  for (const std::string& name : ev.outputs) {
    const auto it = constructed.outputs.find(name);
    if (it == constructed.outputs.end()) {
      throw Error(ErrorCode::MissingOutput, "output '" + name + "' is absent from the trace");
    }
    report.outputs.push_back(check_output(name, ev.values.at(name), it->second, report.epsilon));
  }
  for (const auto& [name, points] : constructed.outputs) {
    if (std::find(ev.outputs.begin(), ev.outputs.end(), name) == ev.outputs.end()) {
      report.outputs.push_back({name, Type::Point, {}, false});
    }
  }
  for (const auto& [name, count] : ev.intersections) {
    const auto it = constructed.intersections.find(name);
    if (it == constructed.intersections.end()) {
      throw Error(ErrorCode::MissingOutput, "intersection '" + name + "' is absent from the trace");
    }
    report.counts.push_back({name, it->second, count});
  }
  return report;
}

bool OracleReport::pass() const {
  return std::all_of(outputs.begin(), outputs.end(), [](const OutputCheck& o) { return o.pass; }) &&
         std::all_of(counts.begin(), counts.end(), [](const CountCheck& c) { return c.pass(); });
}

Scalar OracleReport::max_delta() const {
  Scalar worst(0L, epsilon.bits());
  for (const OutputCheck& o : outputs) {
    for (const PointCheck& p : o.points) {
      worst = numerics::max(worst, numerics::max(p.dx, p.dy));
    }
  }
  return worst;
}

std::string OracleReport::to_text() const {
  std::ostringstream out;
  out << "oracle: " << (pass() ? "pass" : "FAIL") << " (" << outputs.size() << " outputs, " << counts.size()
      << " intersections, max delta " << short_decimal(max_delta()) << ", epsilon " << short_decimal(epsilon)
      << ")\n";
  for (const OutputCheck& o : outputs) {
    out << "  " << (o.pass ? "ok  " : "FAIL") << ' ' << lang::to_string(o.type) << ' ' << o.name;
    if (o.points.empty()) {
      out << ": no analytic counterpart";
    }
    out << '\n';
    for (const PointCheck& p : o.points) {
      out << "       (" << p.constructed.x.to_decimal(20) << ", " << p.constructed.y.to_decimal(20) << ") vs ("
          << p.analytic.x.to_decimal(20) << ", " << p.analytic.y.to_decimal(20) << ")  dx " << short_decimal(p.dx)
          << " dy " << short_decimal(p.dy) << '\n';
    }
  }
  for (const CountCheck& c : counts) {
    out << "  " << (c.pass() ? "ok  " : "FAIL") << " count " << c.name << ": " << c.constructed
        << " constructed, " << c.analytic << " analytic\n";
  }
  return out.str();
}

std::string OracleReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = pass() ? "pass" : "fail";
  j["epsilon"] = epsilon.to_decimal(20);
  j["max_delta"] = max_delta().to_decimal(20);
  auto& outs = j["outputs"] = nlohmann::ordered_json::array();
  for (const OutputCheck& o : outputs) {
    nlohmann::ordered_json entry;
    entry["name"] = o.name;
    entry["kind"] = lang::to_string(o.type);
    entry["pass"] = o.pass;
    auto& pts = entry["points"] = nlohmann::ordered_json::array();
    for (const PointCheck& p : o.points) {
      pts.push_back({{"constructed", {p.constructed.x.to_decimal(40), p.constructed.y.to_decimal(40)}},
                     {"analytic", {p.analytic.x.to_decimal(40), p.analytic.y.to_decimal(40)}},
                     {"dx", p.dx.to_decimal(6)},
                     {"dy", p.dy.to_decimal(6)}});
    }
    outs.push_back(std::move(entry));
  }
  auto& counts_json = j["intersections"] = nlohmann::ordered_json::array();
  for (const CountCheck& c : counts) {
    counts_json.push_back(
        {{"name", c.name}, {"constructed", c.constructed}, {"analytic", c.analytic}, {"pass", c.pass()}});
  }
  return j.dump();
}

}  // namespace matchstick::oracle
