#include <doctest.h>

#include "matchstick/constructions.hpp"
#include "matchstick/lang.hpp"
#include "program_gen.hpp"
#include "support.hpp"

using namespace matchstick;
using namespace matchstick::lang;
using test::near;

namespace {

const char* const kCircleLine =
    "point O = (0, 1);\n"
    "point S = (1, 2);\n"
    "point A = (5, 0);\n"
    "point B = (5.5, 0);\n"
    "let g = circle(O, S);\n"
    "let l = line(A, B);\n"
    "let X = intersect(g, l)[1];\n"
    "output X;\n";

CompileError compile_error(std::string_view source) {
  try {
    lower(parse(source), Config{});
  } catch (const CompileError& e) {
    return e;
  }
  FAIL("expected a compile error");
  return CompileError(ErrorCode::SyntaxError, "", {});
}

}  // namespace

TEST_CASE("a point declaration") {
  const Program p = parse("point A = (0,0);");
  REQUIRE(p.statements.size() == 1);
  const auto& decl = std::get<PointDecl>(p.statements[0].node);
  CHECK(decl.name.text == "A");
  CHECK(decl.x == "0");
  CHECK(p.types.at("A") == Type::Point);
}

TEST_CASE("lines, circles and an indexed intersection") {
  const Program p = parse(
      "point A = (0, 0); point B = (1, -2.5); point O = (+3, 1);\n"
      "let c = circle(O, A);  # comment\n"
      "let l = line(A,B); let X = intersect(l, c)[0];");
  REQUIRE(p.statements.size() == 6);
  const auto& line = std::get<Let>(p.statements[4].node);
  CHECK(line.value.op == Op::Line);
  const auto& meet = std::get<Let>(p.statements[5].node);
  CHECK(meet.value.op == Op::Intersect);
  CHECK(meet.value.index == 0);
  CHECK(meet.value.args[1].text == "c");
  CHECK(p.types.at("X") == Type::Point);
  CHECK(p.types.at("c") == Type::Circle);
}

TEST_CASE("spans point into the source") {
  const std::string src = "point A = (0, 0);\n  let l = line(A, B);\n";
  try {
    parse(src);
    FAIL("unbound name accepted");
  } catch (const CompileError& e) {
    CHECK(e.code() == ErrorCode::UnboundName);
    CHECK(e.span().line == 2);
    CHECK(e.span().column == 19);
    CHECK(src.substr(e.span().begin, e.span().end - e.span().begin) == "B");
    const std::string shown = e.render(src, "prog.euclid");
    CHECK(shown.rfind("prog.euclid:2:19: error[UnboundName]:", 0) == 0);
    CHECK(shown.find("  let l = line(A, B);\n") != std::string::npos);
    CHECK(shown.find("^") != std::string::npos);
  }
}

TEST_CASE("front-end errors") {
  test::check_error(ErrorCode::SyntaxError, [] { parse("point A = (0,0); point B = (1,0); let l = line(A);"); });
  test::check_error(ErrorCode::SyntaxError, [] { parse("point A = (0,0) "); });
  test::check_error(ErrorCode::SyntaxError, [] { parse("let = line(A, B);"); });
  test::check_error(ErrorCode::SyntaxError, [] { parse("point let = (0,0);"); });
  test::check_error(ErrorCode::SyntaxError, [] { parse("point A = (0,0); let X = spiral(A);"); });
  test::check_error(ErrorCode::SyntaxError, [] {
    parse("point A=(0,0); point B=(1,0); point C=(0,1); let l=line(A,B); let m=line(A,C);"
          "let X=intersect(l,m)[2];");
  });
  test::check_error(ErrorCode::SyntaxError, [] {
    parse("point A=(0,0); point B=(1,0); point C=(0,1); let l=line(A,B); let m=line(A,C);"
          "let X=intersect(l,m);");
  });
  test::check_error(ErrorCode::LexError, [] { parse("point A = (0, 0$);"); });
  test::check_error(ErrorCode::LexError, [] { parse("point A = (1., 0);"); });
  test::check_error(ErrorCode::LexError, [] { parse("point A = (- 1, 0);"); });
  test::check_error(ErrorCode::LexError, [] { parse("point A = (1.5.2, 0);"); });
  test::check_error(ErrorCode::DuplicateBinding, [] { parse("point A = (0,0); point A = (1,0);"); });
  test::check_error(ErrorCode::UnboundName, [] { parse("output Z;"); });
  test::check_error(ErrorCode::TypeMismatch,
                    [] { parse("point A=(0,0); point B=(1,0); let l=line(A,B); let M=midpoint(l, A);"); });
  test::check_error(ErrorCode::TypeMismatch,
                    [] { parse("point A=(0,0); point B=(1,0); let l=line(A,B); let m=perp(A, l);"); });
  test::check_error(ErrorCode::TypeMismatch,
                    [] { parse("point A=(0,0); point B=(1,0); let l=line(A,B); let X=intersect(A, l)[0];"); });
  test::check_error(ErrorCode::TypeMismatch, [] { parse("point A=(0,0); point B=(1,0); assert_on(A, B);"); });
}

TEST_CASE("print then parse is a fixpoint") {
  const Program p = parse(kCircleLine);
  const std::string once = print(p);
  const Program again = parse(once);
  CHECK(equivalent(p, again));
  CHECK(print(again) == once);
  CHECK_FALSE(equivalent(p, parse("point O = (0, 1);")));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    test::ProgramGenerator gen(seed);
    const Program q = parse(gen.generate());
    const Program r = parse(print(q));
    CHECK(equivalent(q, r));
    CHECK(print(r) == print(q));
  }
}

TEST_CASE("a line through two given points") {
  const Lowered out = lower(parse("point A=(0,0); point B=(6.4,2.5); let l=line(A,B); output l;"), Config{});
  REQUIRE(out.outputs.size() == 1);
  const auto& ids = out.outputs[0].second;
  REQUIRE(ids.size() == 2);
  const numerics::Line2 carrier = numerics::Line2::through(out.board.point(ids[0]), out.board.point(ids[1]));
  const numerics::Scalar eps = Config{}.epsilon_eq_value();
  CHECK(abs(carrier.signed_distance(test::pt(0, 0))) <= eps);
  CHECK(abs(carrier.signed_distance(test::pt("6.4", "2.5"))) <= eps);
}

TEST_CASE("circle meets line through the language") {
  const Lowered out = lower(parse(kCircleLine), Config{});
  REQUIRE(out.outputs.size() == 1);
  CHECK(out.outputs[0].first == "X");
  CHECK(near(out.board.point(out.outputs[0].second[0]), 1, 0, 1e-30));
  bool noted = false;
  for (const auto& r : out.board.trace().records) {
    if (const auto* n = std::get_if<trace::op::IntersectNote>(&r.ins)) {
      noted = n->name == "X" && n->points.size() == 2;
    }
  }
  CHECK(noted);
}

TEST_CASE("lowering errors carry the statement span") {
  const std::string src =
      "point A=(0,0); point B=(1,0); point C=(0,1); point D=(1,1);\n"
      "let l=line(A,B); let m=line(C,D);\n"
      "let X=intersect(l, m)[0];\n";
  const CompileError e = compile_error(src);
  CHECK(e.code() == ErrorCode::NoIntersection);
  CHECK(e.span().line == 3);
  CHECK(e.span().column == 1);
  CHECK(src.substr(e.span().begin, e.span().end - e.span().begin) == "let X=intersect(l, m)[0];");

  CHECK(compile_error("point A=(0,0); point B=(1,0); point C=(0,1); let l=line(A,B); let m=line(A,C);"
                      "let X=intersect(l,m)[1];")
            .code() == ErrorCode::PickOutOfRange);
  CHECK(compile_error("point A=(0,0); let l=line(A,A);").code() == ErrorCode::DegenerateSegment);

  const Lowered partial = lower_partial(parse(src), Config{});
  REQUIRE(partial.error.has_value());
  CHECK(partial.error->code() == ErrorCode::NoIntersection);
}

TEST_CASE("assertions") {
  const std::string base =
      "point O=(0,0); point S=(2,0); point A=(-3,1); point B=(3,1);"
      "let c=circle(O,S); let l=line(A,B); let X=intersect(c,l)[0];";
  CHECK_NOTHROW(lower(parse(base + "assert_on(X, c); assert_on(X, l);"), Config{}));
  CHECK(compile_error(base + "assert_on(A, c);").code() == ErrorCode::AssertionFailed);
  CHECK(compile_error(base + "assert_on(O, l);").code() == ErrorCode::AssertionFailed);
}

TEST_CASE("every construction lowers without a two-circle step") {
  const std::string src =
      "point A=(0,0); point B=(3,1); point C=(1,2.5);"
      "let l=line(A,B); let c=circle(A,C); let d=circle(B,C);"
      "let M=midpoint(A,B); let b=perp_bisector(A,C); let p=perp(l,C); let q=parallel(l,C);"
      "let T=translate(A,B,C); let X=intersect(p,q)[0]; let Y=intersect(c,l)[1]; let Z=intersect(c,d)[0];"
      "let W=intersect(b,l)[0];"
      "output M; output T; output Y; output Z; output W; output b; output c;";
  const Lowered out = lower(parse(src), Config{});
  CHECK(out.outputs.size() == 7);
  for (const auto& r : out.board.trace().records) {
    CHECK_FALSE(std::holds_alternative<trace::op::CompassCircles>(r.ins));
    if (const auto* c = std::get_if<trace::op::Compass>(&r.ins)) {
      CHECK(c->sticks.size() == 1);
    }
  }
  CHECK(near(out.board.point(out.outputs[0].second[0]), 1.5, 0.5, 1e-30));
  CHECK(near(out.board.point(out.outputs[1].second[0]), 4, 3.5, 1e-30));
}

TEST_CASE("lowering is deterministic") {
  Config random;
  random.choice_strategy = ChoiceStrategy::Random;
  random.seed = 9;
  for (const Config& cfg : {Config{}, random}) {
    const std::string a = trace::serialize(lower(parse(kCircleLine), cfg).board.trace());
    const std::string b = trace::serialize(lower(parse(kCircleLine), cfg).board.trace());
    CHECK(a == b);
  }
}
