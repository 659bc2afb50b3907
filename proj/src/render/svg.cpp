#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "matchstick/render.hpp"

namespace matchstick::render {

namespace {

struct Xy {
  double x = 0;
  double y = 0;
};

std::string num(double v) {
  if (v == 0) {
    v = 0;  // no "-0"
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

class Scene {
 public:
  void point(trace::PointId id, const trace::Coord& at) {
    // SVG's y axis points down
    points_.try_emplace(id.value, Xy{std::strtod(at.x.c_str(), nullptr), -std::strtod(at.y.c_str(), nullptr)});
  }

  void stick(trace::StickId id, trace::PointId a, trace::PointId b) { sticks_.push_back({id.value, a.value, b.value}); }

  void add(const trace::Instruction& ins) {
    namespace op = trace::op;
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, op::Given>) {
            point(r.point, r.at);
          } else if constexpr (std::is_same_v<T, op::LayBothEnds>) {
            stick(r.stick, r.p, r.q);
          } else if constexpr (std::is_same_v<T, op::LayFromThrough> || std::is_same_v<T, op::LayFree>) {
            point(r.far, r.at);
            stick(r.stick, r.p, r.far);
          } else if constexpr (std::is_same_v<T, op::LayThroughBoth>) {
            point(r.a, r.a_at);
            point(r.b, r.b_at);
            stick(r.stick, r.a, r.b);
          } else if constexpr (std::is_same_v<T, op::ChoosePoint> || std::is_same_v<T, op::Compass> ||
                               std::is_same_v<T, op::CompassCircles> || std::is_same_v<T, op::MarkCrossing>) {
            point(r.point, r.at);
          }
        },
        ins);
  }

  std::string write() const {
    std::ostringstream out;
    out << R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox=")" << view_box() << "\">\n";
    out << R"(<g stroke="black" stroke-width="0.01" stroke-linecap="round">)" << '\n';
    for (const auto& s : sticks_) {
      const Xy a = at(s.a);
      const Xy b = at(s.b);
      out << "<line id=\"S" << s.id << "\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
          << "\" y2=\"" << num(b.y) << "\"/>\n";
    }
    out << "</g>\n<g fill=\"#c0392b\">\n";
    for (const auto& [id, p] : points_) {
      out << "<circle id=\"P" << id << "\" cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\""
          << num(kPointRadius) << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"monospace\" font-size=\"0.08\" fill=\"#2c3e50\">\n";
    for (const auto& [id, p] : points_) {
      out << "<text x=\"" << num(p.x + 0.03) << "\" y=\"" << num(p.y - 0.03) << "\">P" << id << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
  }

 private:
  struct StickRef {
    std::uint32_t id;
    std::uint32_t a;
    std::uint32_t b;
  };

  Xy at(std::uint32_t id) const {
    const auto it = points_.find(id);
    return it == points_.end() ? Xy{} : it->second;
  }

  std::string view_box() const {
    if (points_.empty()) {
      return "-1 -1 2 2";
    }
    double lo_x = points_.begin()->second.x;
    double hi_x = lo_x;
    double lo_y = points_.begin()->second.y;
    double hi_y = lo_y;
    for (const auto& [id, p] : points_) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    return num(lo_x - 1) + " " + num(lo_y - 1) + " " + num(hi_x - lo_x + 2) + " " + num(hi_y - lo_y + 2);
  }

  std::map<std::uint32_t, Xy> points_;
  std::vector<StickRef> sticks_;
};

}  // namespace

std::string svg(const trace::Trace& t) {
  Scene scene;
  for (const trace::Record& r : t.records) {
    scene.add(r.ins);
  }
  return scene.write();
}

}  // namespace matchstick::render
