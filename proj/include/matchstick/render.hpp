#pragma once

// Static SVG depiction of a trace: sticks as line segments in record order,
// points as small dots labelled with their ids.

#include <string>

#include "matchstick/trace.hpp"

namespace matchstick::render {

inline constexpr double kPointRadius = 0.02;

/// Deterministic for a given trace. The y axis points up; the viewBox is the
/// bounding box padded by one unit, or (-1 -1 2 2) when nothing is drawn.
std::string svg(const trace::Trace& t);

}  // namespace matchstick::render
