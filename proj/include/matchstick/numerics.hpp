#pragma once

// Adaptive-precision scalars, points and the certified geometric predicates
// shared by the executor, the trace verifier and the analytic oracle.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matchstick/error.hpp"

namespace matchstick::numerics {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultBits = 256;
inline constexpr Bits kMinBits = 64;
inline constexpr Bits kDefaultMaxBits = 4096;

/// Binary floating-point value carrying its own precision. Binary operations
/// round to the larger precision of the two operands.
class Scalar {
 public:
  Scalar() : Scalar(kDefaultBits) {}
  explicit Scalar(Bits bits);
  Scalar(long value, Bits bits);
  Scalar(const Scalar& other);
  Scalar(Scalar&& other) noexcept;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&& other) noexcept;
  ~Scalar();

  static Scalar from_decimal(std::string_view text, Bits bits);
  static Scalar from_ratio(long num, long den, Bits bits);
  static Scalar from_double(double value, Bits bits);
  static Scalar pow2(long exponent, Bits bits);
  static Scalar pi(Bits bits);

  Bits bits() const { return value_->_mpfr_prec; }
  Scalar with_bits(Bits bits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Decimal rendering with exactly `digits` significant digits. Exact zero
  /// renders as "0".
  std::string to_decimal(int digits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator+(const Scalar& a, long b);
  friend Scalar operator-(const Scalar& a, long b);
  friend Scalar operator*(const Scalar& a, long b);
  friend Scalar operator*(long a, const Scalar& b) { return b * a; }
  friend Scalar operator/(const Scalar& a, long b);

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Scalar& a, long b);

 private:
  mpfr_t value_;
};

Scalar sqrt(const Scalar& x);
Scalar abs(const Scalar& x);
Scalar square(const Scalar& x);
Scalar max(const Scalar& a, const Scalar& b);

/// cos and sin of an angle given in degrees.
std::pair<Scalar, Scalar> cos_sin_degrees(const Scalar& degrees, Bits bits);

struct Point2 {
  Scalar x;
  Scalar y;

  Point2() = default;
  Point2(Scalar px, Scalar py) : x(std::move(px)), y(std::move(py)) {}
  static Point2 from_decimal(std::string_view px, std::string_view py, Bits bits);

  Point2 with_bits(Bits bits) const { return {x.with_bits(bits), y.with_bits(bits)}; }
  friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(const Point2& a, const Scalar& s) { return {a.x * s, a.y * s}; }
  friend Point2 operator*(const Scalar& s, const Point2& a) { return {a.x * s, a.y * s}; }
  friend Point2 operator/(const Point2& a, const Scalar& s) { return {a.x / s, a.y / s}; }
  bool operator==(const Point2&) const = default;
};

Scalar dot(const Point2& a, const Point2& b);
Scalar cross(const Point2& a, const Point2& b);
Scalar norm2(const Point2& v);
Scalar norm(const Point2& v);
Scalar distance(const Point2& a, const Point2& b);
Point2 perp_left(const Point2& v);
/// Rotates `v` counter-clockwise by `degrees`.
Point2 rotate_degrees(const Point2& v, const Scalar& degrees);

/// Exact rational parameter (stick offsets, choice parameters).
struct Ratio {
  long num = 0;
  long den = 1;

  static Ratio parse(std::string_view text);  // "a/b" or "a"
  std::string to_string() const;
  Scalar value(Bits bits) const { return Scalar::from_ratio(num, den, bits); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio&) const = default;
};

/// Nearest ratio with the given denominator, reduced.
Ratio ratio_near(double value, long den);

struct Segment2 {
  Point2 a;
  Point2 b;
};

/// Line through `anchor` with unit-norm `direction`.
struct Line2 {
  Point2 anchor;
  Point2 direction;

  static Line2 through(const Point2& p, const Point2& q);
  Point2 at(const Scalar& t) const { return anchor + direction * t; }
  Scalar param_of(const Point2& p) const { return dot(p - anchor, direction); }
  Point2 foot_of(const Point2& p) const { return at(param_of(p)); }
  /// Signed distance, positive on the left of the direction.
  Scalar signed_distance(const Point2& p) const { return cross(direction, p - anchor); }
};

struct Circle2 {
  Point2 center;
  Scalar radius;
};

enum class Cmp { Less, Equal, Greater };
enum class Side { Left, Right, On };

std::string_view to_string(Cmp c);
std::string_view to_string(Side s);
std::optional<Cmp> cmp_from_string(std::string_view text);

/// Records the largest precision any predicate had to escalate to.
struct EscalationMonitor {
  Bits peak_bits = 0;
  std::uint64_t escalations = 0;
};

/// Predicate tolerance model: a quantity is "equal" to its threshold when it
/// lies within `epsilon`; undecided comparisons are re-evaluated at doubled
/// precision until `max_bits`.
struct Tolerance {
  Bits working_bits = kDefaultBits;
  Bits max_bits = kDefaultMaxBits;
  Scalar epsilon = Scalar::pow2(-128, kDefaultBits);
  EscalationMonitor* monitor = nullptr;
};

enum class Band { Below, Within, Above };

/// Result of evaluating a quantity at a given precision: its value and an
/// upper bound on the magnitude of the operands feeding it.
struct Estimate {
  Scalar value;
  double scale = 1.0;
};

/// Classifies an expression against [-epsilon, +epsilon]. `eval` is called
/// with increasing precisions until the classification is certain.
template <class Eval>
Band classify(const Tolerance& tol, Eval&& eval);

Band classify_value(const Tolerance& tol, const Scalar& value);

// -- predicates -----------------------------------------------------------

Cmp cmp_unit_distance(const Point2& p, const Point2& q, const Tolerance& tol);
/// |‖p−q‖ − r| banded by epsilon.
Cmp cmp_distance(const Point2& p, const Point2& q, const Scalar& r, const Tolerance& tol);
bool points_equal(const Point2& p, const Point2& q, const Tolerance& tol);
/// Lexicographic (x, y) order with epsilon-equality per coordinate.
int lex_compare(const Point2& p, const Point2& q, const Tolerance& tol);
void sort_lexicographic(std::vector<Point2>& points, const Tolerance& tol);
Side orientation(const Point2& p, const Point2& q, const Point2& r, const Tolerance& tol);
Side side_of_line(const Line2& line, const Point2& p, const Tolerance& tol);
bool on_line(const Line2& line, const Point2& p, const Tolerance& tol);

// -- constructions --------------------------------------------------------

Point2 unit_point_on_ray(const Point2& origin, const Point2& through, const Tolerance& tol);

struct LineMeet {
  enum class Kind { Point, Parallel, Coincident } kind;
  std::optional<Point2> point;
};
LineMeet line_line_intersection(const Line2& l1, const Line2& l2, const Tolerance& tol);

struct SegmentMeet {
  enum class Kind { Point, None, Overlap } kind;
  std::optional<Point2> point;
};
/// Intersection of two closed segments.
SegmentMeet segment_intersection(const Segment2& s1, const Segment2& s2, const Tolerance& tol);

std::vector<Point2> unit_circle_segment_intersection(const Point2& center, const Segment2& seg,
                                                     const Tolerance& tol);
std::vector<Point2> circle_line_intersection_analytic(const Circle2& c, const Line2& l,
                                                      const Tolerance& tol);
std::vector<Point2> circle_circle_intersection_analytic(const Circle2& c1, const Circle2& c2,
                                                        const Tolerance& tol);

// -- implementation -------------------------------------------------------

namespace detail {
[[noreturn]] void throw_ambiguous(Bits bits);
void note_escalation(const Tolerance& tol, Bits bits);
// Error bound used for an expression evaluated at `bits` with operands bounded
// by `scale`: 2^(10 - bits) * max(1, scale).
Scalar error_bound(double scale, Bits bits);
}  // namespace detail

template <class Eval>
Band classify(const Tolerance& tol, Eval&& eval) {
  for (Bits bits = tol.working_bits;; bits *= 2) {
    if (bits > tol.max_bits) {
      detail::throw_ambiguous(tol.max_bits);
    }
    Estimate est = eval(bits);
    const Scalar eps = tol.epsilon.with_bits(bits);
    const Scalar err = detail::error_bound(est.scale, bits);
    const Scalar mag = abs(est.value);
    if (bits > tol.working_bits) {
      detail::note_escalation(tol, bits);
    }
    if (mag + err <= eps) {
      return Band::Within;
    }
    if (mag - err > eps) {
      return est.value.sign() < 0 ? Band::Below : Band::Above;
    }
    if (bits * 2 > tol.max_bits) {
      detail::throw_ambiguous(bits);
    }
  }
}

}  // namespace matchstick::numerics
