#include <doctest.h>

#include "matchstick/board.hpp"
#include "matchstick/constructions.hpp"
#include "matchstick/verifier.hpp"
#include "support.hpp"

using namespace matchstick;
using namespace matchstick::verifier;
using numerics::Scalar;
using test::pt;

namespace {

const std::string kHeader =
    R"({"version":1,"precision_bits":256,"max_precision_bits":4096,"epsilon_eq":"2^-128","epsilon_cmp":"2^-64","seed":42,"choice_strategy":"half","output_digits":40})"
    "\n";

std::string given(int seq, int id, const char* x, const char* y) {
  return R"({"seq":)" + std::to_string(seq) + R"(,"op":"given","point":"P)" + std::to_string(id) +
         R"(","x":")" + x + R"(","y":")" + y + "\"}\n";
}

/// Small legal trace touching every primitive.
trace::Trace sample() {
  Board b{Config{}};
  const PointId o = b.given(pt(0, 0));
  const PointId e = b.given(pt(1, 0));
  const StickId s = b.lay_stick_both_ends(o, e);
  const PointId m = b.choose_point_on_stick(s, {1, 2});
  auto [s1, far] = b.lay_stick_from_through(m, e);
  b.lay_stick_through_both(m, e, {1, 4});
  auto [s3, q] = b.lay_stick_free(o, s, "70");
  b.compass_intersect(q, s1, 0);
  auto [s4, up] = b.lay_stick_free(b.given(pt("0.5", "-0.5")), std::nullopt, "90");
  b.mark_crossing(s, s4);
  b.cmp_unit(o, far);
  b.note_output("X", "point", {far});
  return b.trace();
}

}  // namespace

TEST_CASE("macro output is accepted") {
  Board b{Config{}};
  constructions::Constructor c(b);
  const StickId seed = b.lay_stick_both_ends(b.given(pt(0, 0)), b.given(pt(1, 0)));
  c.extend_line(seed, true, 3);
  const VerifyReport r = verify_trace(trace::serialize(b.trace()));
  CHECK(r.accepted());
  CHECK(r.findings.empty());
  CHECK(r.stats.primitives == b.primitive_count());
  CHECK(r.stats.by_kind.at("lay_from_through") == 5);
  CHECK(verify(sample()).accepted());
}

TEST_CASE("a stick longer than the unit is rejected") {
  const std::string text = kHeader + given(0, 0, "0", "0") + given(1, 1, "1.2", "0") +
                           R"({"seq":2,"op":"lay_both_ends","p":"P0","q":"P1","stick":"S0"})" "\n";
  const VerifyReport r = verify_trace(text);
  CHECK_FALSE(r.accepted());
  REQUIRE(r.findings.size() == 1);
  CHECK(r.findings[0].code == ErrorCode::UnitLengthViolation);
  CHECK(r.findings[0].seq == 2);
}

TEST_CASE("a reference to a point never created is rejected") {
  const std::string text =
      kHeader + given(0, 0, "0", "0") + given(1, 1, "1", "0") +
      R"({"seq":2,"op":"lay_both_ends","p":"P0","q":"P1","stick":"S0"})" "\n"
      R"({"seq":3,"op":"compass","center":"P999","stick":"S0","pick":0,"candidates":1,"point":"P2","x":"1","y":"0"})" "\n";
  const VerifyReport r = verify_trace(text);
  CHECK_FALSE(r.accepted());
  CHECK(r.findings.front().code == ErrorCode::UnknownId);
}

TEST_CASE("nudged coordinates are rejected, renderings are not") {
  trace::Trace t = sample();
  auto& lay = std::get<trace::op::LayFromThrough>(t.records[4].ins);
  const Scalar eps = Scalar::pow2(-128, 256);
  const Scalar x = Scalar::from_decimal(lay.at.x, 256);
  lay.at.x = (x + eps * 10).to_decimal(60);
  const VerifyReport r = verify(t);
  CHECK(r.has(ErrorCode::CoordinateMismatch));
  CHECK(r.findings.size() == 1);

  trace::Trace u = sample();
  auto& lay2 = std::get<trace::op::LayFromThrough>(u.records[4].ins);
  lay2.at.x = (Scalar::from_decimal(lay2.at.x, 256) + eps / 4).to_decimal(60);
  CHECK(verify(u).accepted());
}

TEST_CASE("simultaneous compass use is rejected") {
  trace::Trace t = sample();
  auto& compass = std::get<trace::op::Compass>(t.records[7].ins);
  compass.sticks.push_back(StickId{0});
  CHECK(verify(t).has(ErrorCode::SimultaneityViolation));

  trace::Trace u = sample();
  const auto& original = std::get<trace::op::Compass>(u.records[7].ins);
  u.records[7].ins = trace::op::CompassCircles{{PointId{0}, PointId{1}}, 0, original.point, original.at};
  CHECK(verify(u).has(ErrorCode::SimultaneityViolation));
}

TEST_CASE("recorded claims must match recomputation") {
  trace::Trace t = sample();
  std::get<trace::op::Compass>(t.records[7].ins).candidates = 2;
  CHECK(verify(t).has(ErrorCode::CandidateCountMismatch));

  trace::Trace u = sample();
  std::get<trace::op::CmpUnit>(u.records[11].ins).result = numerics::Cmp::Less;
  CHECK(verify(u).has(ErrorCode::MeasurementMismatch));

  trace::Trace v = sample();
  std::get<trace::op::ChoosePoint>(v.records[3].ins).t = {0, 1};
  CHECK(verify(v).has(ErrorCode::OffsetOutOfRange));

  trace::Trace w = sample();
  std::get<trace::op::LayFromThrough>(w.records[4].ins).far = PointId{9};
  CHECK(verify(w).has(ErrorCode::IdSequenceViolation));

  trace::Trace s = sample();
  std::get<trace::op::Compass>(s.records[7].ins).pick = 3;
  std::get<trace::op::Compass>(s.records[7].ins).candidates = 1;
  CHECK(verify(s).has(ErrorCode::PickOutOfRange));
}

TEST_CASE("a forged 31 degree apex stick is rejected") {
  Board b{Config{}};
  constructions::Constructor c(b);
  const PointId a = b.given(pt(0, 0));
  const constructions::LineId d = c.line_from_stick(b.lay_stick_free(a, std::nullopt, "0").first);
  constructions::PerpendicularReport report;
  c.perpendicular_at(d, a, {{"31", "31", "30.5"}, {true, false, true}}, &report);
  trace::Trace t = b.trace();
  CHECK(verify(t).accepted());
  const auto next_point = static_cast<std::uint32_t>(b.point_count());
  const auto next_stick = static_cast<std::uint32_t>(b.stick_count());
  t.records.push_back({t.records.size(), trace::op::LayFromThrough{a, report.apexes[0], StickId{next_stick},
                                                                    PointId{next_point}, {"0", "1"}}});
  const VerifyReport r = verify(t);
  CHECK(r.findings.front().code == ErrorCode::UnitLengthViolation);
}

TEST_CASE("claim tolerance follows the written digits") {
  const Scalar eps = Scalar::pow2(-128, 256);
  CHECK(claim_tolerance("0", 40, eps) == eps);
  // 40 significant digits of a value near 12: last place 1e-38
  auto half_ulp = [&](const char* text) { return (claim_tolerance(text, 40, eps) - eps).to_double(); };
  CHECK(half_ulp("12.34") == doctest::Approx(5e-39));
  CHECK(half_ulp("1.2345678901234567890123456789012345678901234567890") == doctest::Approx(5e-50));
  CHECK(half_ulp("-3.5e-7") == doctest::Approx(5e-47));
  CHECK(half_ulp("0.00250") == doctest::Approx(5e-43));
}

TEST_CASE("strict mode reports escalation") {
  // a measurement just outside the band: 1 + 1.25 * 2^-60, undecidable at 64 bits
  Config cfg;
  cfg.precision_bits = 64;
  cfg.epsilon_eq = "2^-60";
  cfg.epsilon_cmp = "2^-30";
  Board b(cfg);
  const PointId o = b.given(pt(0, 0));
  const PointId q = b.given(pt("1.000000000000000001084202172485504434007453", "0"));
  b.cmp_unit(o, q);
  const VerifyReport relaxed = verify(b.trace());
  const VerifyReport strict = verify(b.trace(), {true});
  CHECK(relaxed.accepted());
  CHECK(relaxed.stats.escalations > 0);
  CHECK(relaxed.stats.peak_bits > 64);
  CHECK(strict.has(ErrorCode::PrecisionEscalation));
}

TEST_CASE("reports render") {
  const VerifyReport r = verify(sample());
  CHECK(r.to_text().rfind("verdict: Accept", 0) == 0);
  CHECK(r.to_json().find(R"("verdict":"Accept")") != std::string::npos);
  test::check_error(ErrorCode::ParseError, [] { verify_trace("not a trace"); });
}
