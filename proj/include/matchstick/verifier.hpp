#pragma once

// Independent referee for traces. Recomputes every primitive from the
// recorded ids with the numerics kernel alone; the producing executor is
// never consulted.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matchstick/error.hpp"
#include "matchstick/numerics.hpp"
#include "matchstick/trace.hpp"

namespace matchstick::verifier {

enum class Verdict { Accept, Reject };

std::string_view to_string(Verdict v);

struct Finding {
  std::uint64_t seq = 0;
  ErrorCode code = ErrorCode::CoordinateMismatch;
  std::string message;
};

struct VerifyStats {
  std::size_t records = 0;
  std::size_t primitives = 0;
  std::map<std::string, std::size_t, std::less<>> by_kind;
  numerics::Bits working_bits = 0;
  numerics::Bits peak_bits = 0;  // highest precision any predicate needed
  std::uint64_t escalations = 0;
};

struct VerifyReport {
  Verdict verdict = Verdict::Accept;
  std::vector<Finding> findings;
  VerifyStats stats;

  bool accepted() const { return verdict == Verdict::Accept; }
  /// True when some finding carries `code`.
  bool has(ErrorCode code) const;
  std::string to_text() const;
  std::string to_json() const;
};

struct VerifyOptions {
  /// Any precision escalation is itself a finding.
  bool strict = false;
};

/// Parses and verifies a serialized trace. Throws ParseError when the text
/// is not a trace; everything past parsing is reported, not thrown.
VerifyReport verify_trace(std::string_view text, VerifyOptions options = {});
VerifyReport verify(const trace::Trace& t, VerifyOptions options = {});

/// Largest deviation a recorded decimal may show from the recomputed value:
/// epsilon plus half a unit in the last place of the rendering, measured at
/// the finer of the digits written and `output_digits`.
numerics::Scalar claim_tolerance(std::string_view decimal, int output_digits, const numerics::Scalar& epsilon);

}  // namespace matchstick::verifier
