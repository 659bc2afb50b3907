#include <doctest.h>

#include "matchstick/trace.hpp"
#include "support.hpp"

using namespace matchstick;
using namespace matchstick::trace;

namespace {

const char* kSample =
    R"({"version":1,"precision_bits":256,"max_precision_bits":4096,"epsilon_eq":"2^-128","epsilon_cmp":"2^-64","seed":42,"choice_strategy":"half","output_digits":40})"
    "\n"
    R"({"seq":0,"op":"given","point":"P0","x":"0","y":"0"})"
    "\n"
    R"({"seq":1,"op":"given","point":"P1","x":"1","y":"0"})"
    "\n"
    R"({"seq":2,"op":"lay_both_ends","p":"P0","q":"P1","stick":"S0"})"
    "\n"
    R"({"seq":3,"op":"choose_point","stick":"S0","t":"1/2","interior":true,"point":"P2","x":"0.5","y":"0"})"
    "\n"
    R"({"seq":4,"op":"lay_from_through","p":"P2","q":"P1","stick":"S1","far":"P3","x":"1.5","y":"0"})"
    "\n"
    R"({"seq":5,"op":"lay_through_both","p":"P2","q":"P1","t":"1/4","stick":"S2","a":"P4","ax":"0.25","ay":"0","b":"P5","bx":"1.25","by":"0"})"
    "\n"
    R"({"seq":6,"op":"lay_free","p":"P0","ref":null,"angle":"20","stick":"S3","far":"P6","x":"0.9396926207859083840541092773247314699362","y":"0.3420201433256687330440996146184053700726"})"
    "\n"
    R"({"seq":7,"op":"compass","center":"P6","stick":"S1","pick":0,"candidates":1,"point":"P7","x":"1.879385241571816768108218554649462939872","y":"0"})"
    "\n"
    R"({"seq":8,"op":"mark_crossing","s1":"S0","s2":"S3","point":"P0","x":"0","y":"0"})"
    "\n"
    R"({"seq":9,"op":"cmp_unit","p":"P0","q":"P3","result":"Greater"})"
    "\n"
    R"({"seq":10,"op":"output","name":"X","kind":"point","points":["P7"]})"
    "\n"
    R"({"seq":11,"op":"intersect","name":"X","count":1,"points":["P7"]})"
    "\n";

}  // namespace

TEST_CASE("ids render and parse") {
  CHECK(to_string(PointId{12}) == "P12");
  CHECK(to_string(StickId{0}) == "S0");
  CHECK(parse_point_id("P999")->value == 999);
  CHECK_FALSE(parse_point_id("S1"));
  CHECK_FALSE(parse_point_id("P"));
  CHECK_FALSE(parse_point_id("P01"));
  CHECK_FALSE(parse_stick_id("S-1"));
}

TEST_CASE("read then write is byte-identical") {
  const Trace t = parse(kSample);
  CHECK(t.records.size() == 12);
  CHECK(t.primitive_count() == 8);
  CHECK(serialize(t) == kSample);
  const auto& compass = std::get<op::Compass>(t.records[7].ins);
  CHECK(compass.sticks.size() == 1);
  CHECK(compass.candidates == 1);
  CHECK(std::get<op::LayThroughBoth>(t.records[5].ins).t == numerics::Ratio{1, 4});
  CHECK_FALSE(std::get<op::LayFree>(t.records[6].ins).ref.has_value());
}

TEST_CASE("two-stick compass and two-circle records survive the format") {
  const std::string text = std::string(kSample) +
                           R"({"seq":12,"op":"compass","center":"P6","stick":["S1","S2"],"pick":0,"candidates":1,"point":"P8","x":"1","y":"0"})"
                           "\n"
                           R"({"seq":13,"op":"compass_circles","centers":["P0","P1"],"pick":0,"point":"P9","x":"0.5","y":"0.8660254037844386467637231707529361834714"})"
                           "\n";
  const Trace t = parse(text);
  CHECK(std::get<op::Compass>(t.records[12].ins).sticks.size() == 2);
  CHECK(std::get<op::CompassCircles>(t.records[13].ins).centers.size() == 2);
  CHECK(serialize(t) == text);
}

TEST_CASE("malformed input is a parse error") {
  test::check_error(ErrorCode::ParseError, [] { parse(""); });
  // last line without its terminator: truncated
  std::string cut(kSample);
  cut.resize(cut.size() - 20);
  test::check_error(ErrorCode::ParseError, [&] { parse(cut); });
  const std::string header = std::string(kSample).substr(0, std::string(kSample).find('\n') + 1);
  test::check_error(ErrorCode::ParseError, [&] { parse(header + R"({"seq":0,"op":"teleport"})" "\n"); });
  test::check_error(ErrorCode::ParseError, [&] { parse(header + R"({"seq":0,"op":"given","point":"Q0","x":"0","y":"0"})" "\n"); });
  test::check_error(ErrorCode::ParseError, [&] { parse(header + R"({"seq":0,"op":"given","point":"P0","x":0,"y":"0"})" "\n"); });
  test::check_error(ErrorCode::ParseError, [&] { parse(header + "{not json\n"); });
  test::check_error(ErrorCode::ParseError,
                    [&] { parse(header + R"({"seq":0,"op":"intersect","name":"X","count":2,"points":["P1"]})" "\n"); });
}
