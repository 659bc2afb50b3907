#include <doctest.h>

#include "matchstick/board.hpp"
#include "matchstick/render.hpp"
#include "support.hpp"

using namespace matchstick;
using test::pt;

namespace {

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t at = text.find(what); at != std::string::npos; at = text.find(what, at + 1)) {
    ++n;
  }
  return n;
}

/// A seed stick extended twice: three sticks, five points.
trace::Trace extension() {
  Board b{Config{}};
  const StickId seed = b.lay_stick_both_ends(b.given(pt(0, 0)), b.given(pt(1, 0)));
  const PointId half = b.choose_point_on_stick(seed, {1, 2});
  auto [s1, far] = b.lay_stick_from_through(half, b.stick(seed).b);
  b.lay_stick_from_through(b.stick(seed).b, far);
  return b.trace();
}

}  // namespace

TEST_CASE("one line per stick, one dot and label per point") {
  const std::string svg = render::svg(extension());
  CHECK(count(svg, "<line ") == 3);
  CHECK(count(svg, "<circle ") == 5);
  CHECK(count(svg, "<text ") == 5);
  CHECK(count(svg, "r=\"0.02\"") == 5);
  CHECK(svg.find(">P4</text>") != std::string::npos);
  // sticks in record order
  CHECK(svg.find("id=\"S0\"") < svg.find("id=\"S1\""));
  CHECK(svg.find("id=\"S1\"") < svg.find("id=\"S2\""));
  // x from 0 to 2, y = 0, padded by one unit
  CHECK(svg.find("viewBox=\"-1 -1 4 2\"") != std::string::npos);
}

TEST_CASE("an empty trace draws the default box") {
  const std::string svg = render::svg(trace::Trace{});
  CHECK(svg.find("viewBox=\"-1 -1 2 2\"") != std::string::npos);
  CHECK(count(svg, "<line ") == 0);
  CHECK(count(svg, "<circle ") == 0);
}

TEST_CASE("rendering is deterministic and y points up") {
  Board b{Config{}};
  b.given(pt("0.25", "3"));
  const std::string svg = render::svg(b.trace());
  CHECK(svg == render::svg(trace::parse(trace::serialize(b.trace()))));
  CHECK(svg.find("cx=\"0.25\" cy=\"-3\"") != std::string::npos);
}
