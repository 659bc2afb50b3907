// Acceptance run: one PASS/FAIL line per criterion. Tolerances and bounds are
// fixed below.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "matchstick/cli.hpp"
#include "matchstick/constructions.hpp"
#include "matchstick/verifier.hpp"
#include "program_gen.hpp"

using namespace matchstick;
using namespace matchstick::constructions;
using numerics::Point2;
using numerics::Scalar;
namespace fs = std::filesystem;

namespace {

constexpr int kPrograms = 500;
constexpr double kProgramBudgetSeconds = 300;
constexpr long kExtensionLength = 100;
constexpr std::size_t kExtensionBound = 300;
constexpr std::size_t kGridBound = 1018;  // measured instruction count for the 10.3 grid
constexpr int kMutations = 10000;
constexpr long kAnalyticBits = 512;

const Scalar& eps_cmp() {
  static const Scalar e = Scalar::pow2(-64, kAnalyticBits);
  return e;
}
const Scalar& eps_eq() {
  static const Scalar e = Scalar::pow2(-128, kAnalyticBits);
  return e;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Point2 pt(std::string_view x, std::string_view y) { return Point2::from_decimal(x, y, numerics::kDefaultBits); }

bool within(const Point2& p, const Point2& q, const Scalar& tol) {
  return abs(p.x - q.x) <= tol && abs(p.y - q.y) <= tol;
}

std::string sci(const Scalar& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", s.to_double());
  return buf;
}

Scalar max_delta(const Point2& p, const Point2& q) { return numerics::max(abs(p.x - q.x), abs(p.y - q.y)); }

Point2 exact(long xn, long xd, long yn, long yd) {
  return {Scalar::from_ratio(xn, xd, kAnalyticBits), Scalar::from_ratio(yn, yd, kAnalyticBits)};
}

bool accepted(const Board& b) { return verifier::verify(b.trace()).accepted(); }

// -- 1 ------------------------------------------------------------------------

Outcome end_to_end() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("matchstick_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int passed = 0;
  std::string failures;
  const auto start = std::chrono::steady_clock::now();
  for (int seed = 0; seed < kPrograms; ++seed) {
    const std::string path = (dir / ("p" + std::to_string(seed) + ".euclid")).string();
    std::ofstream(path) << test::ProgramGenerator(static_cast<std::uint64_t>(seed)).generate();
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"check", path}, out, err);
    if (code == 0) {
      ++passed;
    } else if (failures.size() < 200) {
      failures += " seed " + std::to_string(seed) + " exit " + std::to_string(code) + ";";
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::remove_all(dir);
  o.detail << passed << "/" << kPrograms << " programs pass check (verify Accept, oracle deltas <= 2^-64) in "
           << static_cast<int>(seconds) << " s (limit " << kProgramBudgetSeconds << " s)";
  o.require(passed == kPrograms, "failing programs:" + failures);
  o.require(seconds < kProgramBudgetSeconds, "time budget");
  return o;
}

// -- 2 ------------------------------------------------------------------------

Outcome extension() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId a = b.given(pt("0.3", "-0.2"));
  const StickId seed = b.lay_stick_free(a, std::nullopt, "37").first;
  const LineId l = c.extend_line(seed, true, kExtensionLength);
  const Point2& far = b.point(c.vertex(l, kExtensionLength));
  const auto [cs, sn] = numerics::cos_sin_degrees(Scalar(37L, kAnalyticBits), kAnalyticBits);
  const Point2 origin = b.point(a).with_bits(kAnalyticBits);
  const Point2 expected{origin.x + cs * kExtensionLength, origin.y + sn * kExtensionLength};
  const Scalar delta = max_delta(far.with_bits(kAnalyticBits), expected);
  const verifier::VerifyReport r = verifier::verify(b.trace());
  o.detail << "length " << kExtensionLength << ": " << r.stats.primitives << " primitives (bound " << kExtensionBound
           << "), far point delta " << sci(delta);
  o.require(r.accepted(), "trace rejected");
  o.require(r.stats.primitives <= kExtensionBound, "instruction bound");
  o.require(delta <= eps_cmp(), "far point off the analytic line");
  return o;
}

// -- 3 ------------------------------------------------------------------------

Outcome trial_bound() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId a = b.given(pt("0", "0"));
  const LineId d = c.line_from_stick(b.lay_stick_free(a, std::nullopt, "0").first);
  PerpendicularReport ok;
  const LineId n = c.perpendicular_at(d, a, {{"29"}, {true}}, &ok);
  const Scalar as = numerics::distance(b.point(a), b.point(ok.apexes.at(0)));
  const Scalar dn = abs(numerics::dot(c.line(d).carrier.direction, c.line(n).carrier.direction));
  o.require(ok.trials == 1 && !ok.used_pair, "29 degrees should be a single legal trial");
  o.require(b.cmp_unit(a, ok.apexes.at(0)) == numerics::Cmp::Less, "|AS| < 1 at 29 degrees");
  o.require(accepted(b), "29 degree trace rejected");
  o.require(dn <= eps_cmp(), "|d.n| <= 2^-64");

  Board g{Config{}};
  Constructor gc(g);
  const PointId a2 = g.given(pt("0", "0"));
  const LineId d2 = gc.line_from_stick(g.lay_stick_free(a2, std::nullopt, "0").first);
  PerpendicularReport forced;
  gc.perpendicular_at(d2, a2, {{"31", "31", "30.5"}, {true, false, true}}, &forced);
  o.require(accepted(g), "forced 31 degree construction rejected");
  trace::Trace t = g.trace();
  const auto next_point = static_cast<std::uint32_t>(g.point_count());
  const auto next_stick = static_cast<std::uint32_t>(g.stick_count());
  const std::uint64_t seq = t.records.size();
  t.records.push_back({seq, trace::op::LayFromThrough{a2, forced.apexes.at(0), StickId{next_stick},
                                                      PointId{next_point}, {"0", "1"}}});
  const verifier::VerifyReport r = verifier::verify(t);
  const bool rejected = !r.accepted() && r.findings.front().code == ErrorCode::UnitLengthViolation &&
                        r.findings.front().seq == seq;
  o.require(rejected, "forged 31 degree A-S stick not rejected as UnitLengthViolation");
  o.detail << "29 deg: |AS| = " << as.to_decimal(6) << " legal, |d.n| = " << sci(dn)
           << "; forged 31 deg A-S stick: " << (rejected ? "UnitLengthViolation" : "accepted");
  return o;
}

// -- 4 ------------------------------------------------------------------------

Outcome grid() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId origin = b.given(pt("0", "0"));
  const LineId u = c.line_from_stick(b.lay_stick_free(origin, std::nullopt, "0").first);
  const LineId n = c.perpendicular_at(u, origin);
  const PointId target = b.given(pt("6.18", "8.24"));  // |target| = 10.3
  const std::size_t before = b.primitive_count();
  const GridHandle g = c.coordinate_grid(origin, u, n, target);
  const std::size_t used = b.primitive_count() - before;
  const bool covered = g.cell_x <= g.target.x && g.target.x <= g.cell_x + 1 && g.cell_y <= g.target.y &&
                       g.target.y <= g.cell_y + 1;
  o.detail << "distance 10.3: " << g.spiral_lines << " spiral lines, " << used << " primitives (pinned bound "
           << kGridBound << "), cell (" << g.cell_x << ", " << g.cell_y << ")";
  o.require(covered, "target outside the reported cell");
  o.require(used <= kGridBound, "instruction count regressed");
  o.require(accepted(b), "trace rejected");
  return o;
}

// -- 5 ------------------------------------------------------------------------

Outcome bisector() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId a = b.given(pt("0", "0"));
  const PointId bb = b.given(pt("7", "0"));
  Board fresh{Config{}};
  const numerics::Ratio h = fresh.choices().zigzag_height();  // the draw the bisector makes
  const LineId ab = c.extend_line(b.lay_stick_from_through(a, b.given(pt("0.5", "0"))).first, true, 7);
  const Bisector bis = c.perpendicular_bisector(a, bb, ab);
  const Scalar dp = max_delta(b.point(bis.upper).with_bits(kAnalyticBits), exact(7, 2, 3, 8));
  const Scalar dc = max_delta(b.point(bis.midpoint).with_bits(kAnalyticBits), exact(7, 2, 0, 1));
  o.detail << "h = " << h.to_string() << ": P delta " << sci(dp) << ", C delta " << sci(dc) << ", |PQ| = "
           << numerics::distance(b.point(bis.upper), b.point(bis.lower)).to_decimal(6);
  o.require(h == numerics::Ratio{3, 5}, "zig-zag height is not 0.6");
  o.require(dp <= eps_cmp(), "P = (3.5, 0.375)");
  o.require(dc <= eps_cmp(), "C = (3.5, 0)");
  o.require(b.cmp_unit(bis.upper, bis.lower) != numerics::Cmp::Greater, "|PQ| <= 1");
  o.require(accepted(b), "trace rejected");
  return o;
}

// -- 6 ------------------------------------------------------------------------

Outcome halvings() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId a = b.given(pt("0", "0"));
  const PointId bb = b.given(pt("6.4", "2.5"));
  std::size_t count = 0;
  const LineId l = c.line_through(a, bb, &count);
  const auto& carrier = c.line(l).carrier;
  const Scalar ra = abs(carrier.signed_distance(b.point(a)));
  const Scalar rb = abs(carrier.signed_distance(b.point(bb)));
  o.detail << count << " halvings, residual at A " << sci(ra) << ", at B " << sci(rb);
  o.require(count == 3, "exactly 3 halvings");
  o.require(ra <= eps_cmp() && rb <= eps_cmp(), "carrier residual");
  o.require(accepted(b), "trace rejected");
  return o;
}

// -- 7 ------------------------------------------------------------------------

Outcome circle_line() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const LineId l = c.line_from_stick(b.lay_stick_free(b.given(pt("0", "0")), std::nullopt, "0").first);
  const PointId center = b.given(pt("0", "1"));
  const auto two = c.circle_line_intersect({center, b.given(pt("1", "2"))}, l);
  const auto one = c.circle_line_intersect({center, b.given(pt("0", "2"))}, l);
  const auto none = c.circle_line_intersect({b.given(pt("0", "3")), b.given(pt("0", "4"))}, l);
  Scalar worst(0L, kAnalyticBits);
  if (two.size() == 2) {
    worst = numerics::max(max_delta(b.point(two[0]).with_bits(kAnalyticBits), exact(-1, 1, 0, 1)),
                          max_delta(b.point(two[1]).with_bits(kAnalyticBits), exact(1, 1, 0, 1)));
  }
  o.detail << "counts " << two.size() << "/" << one.size() << "/" << none.size() << " (expected 2/1/0), delta "
           << sci(worst);
  o.require(two.size() == 2 && worst <= eps_cmp(), "{(-1,0), (1,0)}");
  o.require(one.size() == 1 && within(b.point(one.at(0)).with_bits(kAnalyticBits), exact(0, 1, 0, 1), eps_cmp()),
            "tangent point");
  o.require(none.empty(), "empty case");
  o.require(accepted(b), "trace rejected");
  return o;
}

// -- 8 ------------------------------------------------------------------------

Outcome circle_circle() {
  Outcome o;
  Board b{Config{}};
  Constructor c(b);
  const PointId o1 = b.given(pt("0", "0"));
  const PointId o2 = b.given(pt("3", "0"));
  CircleCircleReport report;
  const auto hits = c.circle_circle_intersect({o1, b.given(pt("2", "0"))}, {o2, o1}, &report);
  const Scalar y = sqrt(Scalar::from_ratio(32, 9, kAnalyticBits));
  const Point2 lower{Scalar::from_ratio(2, 3, kAnalyticBits), -y};
  const Point2 upper{Scalar::from_ratio(2, 3, kAnalyticBits), y};
  Scalar worst(1L, kAnalyticBits);
  if (hits.size() == 2) {
    worst = numerics::max(max_delta(b.point(hits[0]).with_bits(kAnalyticBits), lower),
                          max_delta(b.point(hits[1]).with_bits(kAnalyticBits), upper));
  }
  Scalar power_gap(1L, kAnalyticBits);
  if (report.radical_center) {
    const Point2 p = b.point(*report.radical_center).with_bits(kAnalyticBits);
    const Scalar pow1 = numerics::norm2(p - b.point(o1).with_bits(kAnalyticBits)) - 4L;
    const Scalar pow2 = numerics::norm2(p - b.point(o2).with_bits(kAnalyticBits)) - 9L;
    power_gap = abs(pow1 - pow2);
  }
  o.detail << hits.size() << " points, delta " << sci(worst) << ", power gap at P " << sci(power_gap);
  o.require(hits.size() == 2 && worst <= eps_cmp(), "(2/3, -+4 sqrt2/3)");
  o.require(power_gap <= eps_cmp(), "equal power at the radical centre");
  o.require(accepted(b), "trace rejected");
  return o;
}

// -- 9 ------------------------------------------------------------------------

/// Ids a record creates, with mutable access to their claimed coordinates.
std::vector<std::pair<PointId, trace::Coord*>> claims(trace::Instruction& ins) {
  std::vector<std::pair<PointId, trace::Coord*>> out;
  std::visit(
      [&](auto& r) {
        using T = std::decay_t<decltype(r)>;
        namespace op = trace::op;
        if constexpr (std::is_same_v<T, op::LayFromThrough> || std::is_same_v<T, op::LayFree>) {
          out.push_back({r.far, &r.at});
        } else if constexpr (std::is_same_v<T, op::LayThroughBoth>) {
          out.push_back({r.a, &r.a_at});
          out.push_back({r.b, &r.b_at});
        } else if constexpr (std::is_same_v<T, op::ChoosePoint> || std::is_same_v<T, op::Compass> ||
                             std::is_same_v<T, op::MarkCrossing>) {
          out.push_back({r.point, &r.at});
        }
      },
      ins);
  return out;
}

/// Input references of a record that a dangling id can replace.
std::vector<std::uint32_t*> references(trace::Instruction& ins) {
  std::vector<std::uint32_t*> out;
  std::visit(
      [&](auto& r) {
        using T = std::decay_t<decltype(r)>;
        namespace op = trace::op;
        if constexpr (std::is_same_v<T, op::LayBothEnds> || std::is_same_v<T, op::LayFromThrough> ||
                      std::is_same_v<T, op::LayThroughBoth> || std::is_same_v<T, op::CmpUnit>) {
          out = {&r.p.value, &r.q.value};
        } else if constexpr (std::is_same_v<T, op::LayFree>) {
          out = {&r.p.value};
        } else if constexpr (std::is_same_v<T, op::ChoosePoint>) {
          out = {&r.stick.value};
        } else if constexpr (std::is_same_v<T, op::Compass>) {
          out = {&r.center.value, &r.sticks.front().value};
        } else if constexpr (std::is_same_v<T, op::MarkCrossing>) {
          out = {&r.s1.value, &r.s2.value};
        }
      },
      ins);
  return out;
}

struct Golden {
  std::string name;
  trace::Trace trace;
  Board board;  // final state, for coordinates
};

std::vector<Golden> goldens() {
  std::vector<Golden> out;
  auto add = [&](const std::string& name, const std::function<void(Board&, Constructor&)>& build) {
    Board b{Config{}};
    Constructor c(b);
    build(b, c);
    trace::Trace t = b.trace();
    out.push_back({name, std::move(t), std::move(b)});
  };
  add("extension", [](Board& b, Constructor& c) {
    c.extend_line(b.lay_stick_both_ends(b.given(pt("0", "0")), b.given(pt("1", "0"))), true, 4);
  });
  add("perpendicular", [](Board& b, Constructor& c) {
    const PointId a = b.given(pt("0.25", "0.5"));
    c.perpendicular_at(c.line_from_stick(b.lay_stick_both_ends(a, b.given(pt("1.25", "0.5")))), a);
  });
  add("midpoint", [](Board& b, Constructor& c) {
    const PointId a = b.given(pt("0", "0"));
    c.midpoint(a, b.given(pt("2.3", "0.9")));
  });
  add("primitives", [](Board& b, Constructor&) {
    const PointId o = b.given(pt("0", "0"));
    const PointId e = b.given(pt("1", "0"));
    const StickId s = b.lay_stick_both_ends(o, e);
    const PointId m = b.choose_point_on_stick(s, {1, 2});
    auto [s1, far] = b.lay_stick_from_through(m, e);
    b.lay_stick_through_both(m, e, {1, 4});
    auto [s3, q] = b.lay_stick_free(o, s, "70");
    b.compass_intersect(q, s1, 0);
    auto [s4, up] = b.lay_stick_free(b.given(pt("0.5", "-0.5")), std::nullopt, "90");
    b.mark_crossing(s, s4);
    b.cmp_unit(o, far);
  });
  return out;
}

Outcome mutations() {
  Outcome o;
  const std::vector<Golden> golden = goldens();
  for (const Golden& g : golden) {
    o.require(verifier::verify(g.trace).accepted(), g.name + " golden trace rejected");
  }
  std::mt19937_64 rng(20261017);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const char* kClasses[] = {"coordinate nudge", "length via input", "length via reference", "dangling id",
                            "two-circle compass"};
  int tried[5] = {};
  int caught[5] = {};
  std::string first_miss;
  for (int i = 0; i < kMutations; ++i) {
    const int kind = i % 5;
    const Golden& g = golden[pick(golden.size())];
    trace::Trace t = g.trace;
    ErrorCode expected = ErrorCode::CoordinateMismatch;
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < t.records.size(); ++k) {
      trace::Instruction& ins = t.records[k].ins;
      const bool fits = (kind == 0 && !claims(ins).empty()) ||
                        ((kind == 1 || kind == 2) && std::holds_alternative<trace::op::LayBothEnds>(ins)) ||
                        (kind == 3 && !references(ins).empty()) ||
                        (kind == 4 && std::holds_alternative<trace::op::Compass>(ins));
      if (fits) {
        candidates.push_back(k);
      }
    }
    if (candidates.empty()) {
      --i;  // this golden has nothing of the kind; draw again
      continue;
    }
    trace::Record& rec = t.records[candidates[pick(candidates.size())]];
    if (kind == 0) {
      auto cs = claims(rec.ins);
      trace::Coord& c = *cs[pick(cs.size())].second;
      std::string& field = pick(2) == 0 ? c.x : c.y;
      const long k = std::uniform_int_distribution<long>(10, 100000)(rng);
      const Scalar delta = Scalar::pow2(-128, 256) * k * (pick(2) == 0 ? 1L : -1L);
      field = (Scalar::from_decimal(field, 256) + delta).to_decimal(60);
      expected = ErrorCode::CoordinateMismatch;
    } else if (kind == 1) {
      // move the far input so the stick is 1 +- k*eps long
      auto& lay = std::get<trace::op::LayBothEnds>(rec.ins);
      const Point2& p = g.board.point(lay.p);
      const Point2& q = g.board.point(lay.q);
      const long k = std::uniform_int_distribution<long>(10, 100000)(rng);
      const Scalar scale = Scalar(1L, 256) + Scalar::pow2(-128, 256) * k * (pick(2) == 0 ? 1L : -1L);
      const Point2 moved = p + (q - p) * scale;
      bool done = false;
      for (trace::Record& r : t.records) {
        if (auto* given = std::get_if<trace::op::Given>(&r.ins); given && given->point == lay.q) {
          given->at = {moved.x.to_decimal(60), moved.y.to_decimal(60)};
          done = true;
        }
      }
      if (!done) {
        --i;
        continue;
      }
      expected = ErrorCode::UnitLengthViolation;
    } else if (kind == 2) {
      auto& lay = std::get<trace::op::LayBothEnds>(rec.ins);
      std::vector<PointId> others;
      for (std::uint32_t id = 0; id < lay.q.value + 1; ++id) {
        const double d = numerics::distance(g.board.point(lay.p), g.board.point(PointId{id})).to_double();
        if (id != lay.p.value && std::fabs(d - 1) > 1e-6) {
          others.push_back(PointId{id});
        }
      }
      if (others.empty()) {
        --i;
        continue;
      }
      lay.q = others[pick(others.size())];
      expected = ErrorCode::UnitLengthViolation;
    } else if (kind == 3) {
      auto refs = references(rec.ins);
      *refs[pick(refs.size())] = 100000 + static_cast<std::uint32_t>(pick(1000));
      expected = ErrorCode::UnknownId;
    } else {
      const auto original = std::get<trace::op::Compass>(rec.ins);
      if (pick(2) == 0) {
        rec.ins = trace::op::CompassCircles{{original.center, PointId{0}}, original.pick, original.point, original.at};
      } else {
        auto widened = original;
        widened.sticks.push_back(StickId{0});
        rec.ins = widened;
      }
      expected = ErrorCode::SimultaneityViolation;
    }
    ++tried[kind];
    const verifier::VerifyReport r = verifier::verify(t);
    // a moved input may first surface at an earlier use of that input
    const bool at_record = kind == 1 || r.findings.front().seq == rec.seq;
    if (!r.accepted() && r.findings.front().code == expected && at_record) {
      ++caught[kind];
    } else if (first_miss.empty()) {
      first_miss = std::string(kClasses[kind]) + " on " + g.name + " seq " + std::to_string(rec.seq) + ": " +
                   (r.accepted() ? "accepted" : std::string(to_string(r.findings.front().code)));
    }
  }
  int total = 0;
  for (int k = 0; k < 5; ++k) {
    total += caught[k];
    o.detail << (k == 0 ? "" : ", ") << kClasses[k] << " " << caught[k] << "/" << tried[k];
  }
  o.require(total == kMutations, "missed: " + first_miss);
  return o;
}

// -- 10 -----------------------------------------------------------------------

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("matchstick_determinism_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string src = (dir / "p.euclid").string();
  std::ofstream(src) << "point A = (-2.5, 1); point B = (4, 3.25); point C = (1, -6);\n"
                        "let l = line(A, B); let c = circle(C, A); let X = intersect(c, l)[0];\n"
                        "let m = perp(l, C); let M = midpoint(B, C); let Y = intersect(l, m)[0];\n"
                        "output X; output Y; output M; output m;\n";
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  int identical = 0;
  for (const char* strategy : {"half", "random"}) {
    std::string traces[2];
    std::string svgs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path t = dir / ("t" + std::to_string(run) + ".trace");
      const fs::path s = dir / ("s" + std::to_string(run) + ".svg");
      std::ostringstream out;
      std::ostringstream err;
      const int a = cli::run({"compile", src, "-o", t.string(), "--choice-strategy", strategy, "--seed", "7"}, out, err);
      const int b = cli::run({"render", t.string(), "-o", s.string()}, out, err);
      o.require(a == 0 && b == 0, std::string("pipeline failed (") + strategy + ")");
      traces[run] = slurp(t);
      svgs[run] = slurp(s);
    }
    identical += traces[0] == traces[1] && !traces[0].empty() ? 1 : 0;
    identical += svgs[0] == svgs[1] && !svgs[0].empty() ? 1 : 0;
  }
  fs::remove_all(dir);
  o.detail << identical << "/4 trace and SVG pairs byte-identical (half and random choices)";
  o.require(identical == 4, "outputs differ between runs");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;  // criterion numbers to run; all when empty
  for (int i = 1; i < argc; ++i) {
    only.push_back(std::atoi(argv[i]));
  }
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"end-to-end equivalence", end_to_end},
      {"extension to length 100", extension},
      {"perpendicular trial bound 29/31 degrees", trial_bound},
      {"grid coverage at distance 10.3", grid},
      {"perpendicular bisector fixture", bisector},
      {"line through two points: halvings", halvings},
      {"circle meets line fixtures", circle_line},
      {"circle meets circle fixture", circle_circle},
      {"verifier soundness under mutation", mutations},
      {"determinism of traces and SVG", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    if (!only.empty() && std::find(only.begin(), only.end(), index) == only.end()) {
      continue;
    }
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, title, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
