#include "matchstick/config.hpp"

#include <string>

namespace matchstick {

using numerics::Scalar;

std::string_view to_string(ChoiceStrategy s) { return s == ChoiceStrategy::Half ? "half" : "random"; }

ChoiceStrategy parse_choice_strategy(std::string_view text) {
  if (text == "half") {
    return ChoiceStrategy::Half;
  }
  if (text == "random") {
    return ChoiceStrategy::Random;
  }
  throw Error(ErrorCode::InvalidConfig, "choice strategy must be 'half' or 'random', got '" +
                                            std::string(text) + "'");
}

Scalar parse_epsilon(std::string_view text, numerics::Bits bits) {
  if (text.starts_with("2^")) {
    std::string exponent(text.substr(2));
    char* end = nullptr;
    const long e = std::strtol(exponent.c_str(), &end, 10);
    if (exponent.empty() || end == nullptr || *end != '\0') {
      throw Error(ErrorCode::InvalidConfig, "bad power-of-two epsilon '" + std::string(text) + "'");
    }
    return Scalar::pow2(e, bits);
  }
  try {
    return Scalar::from_decimal(text, bits);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidConfig, "bad epsilon '" + std::string(text) + "'");
  }
}

void Config::validate() const {
  if (precision_bits < numerics::kMinBits) {
    throw Error(ErrorCode::InvalidConfig, "precision must be at least 64 bits");
  }
  if (precision_bits > max_precision_bits) {
    throw Error(ErrorCode::InvalidConfig, "precision exceeds the maximum precision");
  }
  if (output_digits < 1 || output_digits > 1000) {
    throw Error(ErrorCode::InvalidConfig, "output digits must lie in [1, 1000]");
  }
  const Scalar eq = epsilon_eq_value();
  const Scalar cmp = epsilon_cmp_value();
  if (!(eq > 0L) || !(eq < cmp) || !(cmp < 1L)) {
    throw Error(ErrorCode::InvalidConfig, "tolerances must satisfy 0 < epsilon_eq < epsilon_cmp < 1");
  }
}

Scalar Config::epsilon_eq_value() const { return parse_epsilon(epsilon_eq, precision_bits); }
Scalar Config::epsilon_cmp_value() const { return parse_epsilon(epsilon_cmp, precision_bits); }

numerics::Tolerance Config::tolerance(numerics::EscalationMonitor* monitor) const {
  numerics::Tolerance tol;
  tol.working_bits = precision_bits;
  tol.max_bits = max_precision_bits;
  tol.epsilon = epsilon_eq_value();
  tol.monitor = monitor;
  return tol;
}

}  // namespace matchstick
