#pragma once

#include <doctest.h>

#include <cmath>
#include <string>
#include <string_view>

#include "matchstick/error.hpp"
#include "matchstick/numerics.hpp"

namespace matchstick::test {

inline numerics::Point2 pt(double x, double y) {
  return {numerics::Scalar::from_double(x, numerics::kDefaultBits),
          numerics::Scalar::from_double(y, numerics::kDefaultBits)};
}

inline numerics::Point2 pt(std::string_view x, std::string_view y) {
  return numerics::Point2::from_decimal(x, y, numerics::kDefaultBits);
}

inline bool within(const numerics::Scalar& a, const numerics::Scalar& b, double tol) {
  return std::fabs((a - b).to_double()) <= tol;
}

/// Coordinates against decimal expectations given as doubles.
inline bool near(const numerics::Point2& p, double x, double y, double tol = 1e-12) {
  return std::fabs(p.x.to_double() - x) <= tol && std::fabs(p.y.to_double() - y) <= tol;
}

template <class Fn>
void check_error(ErrorCode expected, Fn&& fn) {
  try {
    fn();
    FAIL("expected " << to_string(expected) << ", nothing thrown");
  } catch (const Error& e) {
    CHECK_MESSAGE(e.code() == expected, e.what());
  }
}

}  // namespace matchstick::test
