#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "matchstick/numerics.hpp"

namespace matchstick {

enum class ChoiceStrategy { Half, Random };

std::string_view to_string(ChoiceStrategy s);
ChoiceStrategy parse_choice_strategy(std::string_view text);

/// Tolerance, precision and choice settings shared by every stage. Epsilons
/// are kept as text ("2^-128" or a decimal literal) so that traces can carry
/// them verbatim.
struct Config {
  numerics::Bits precision_bits = numerics::kDefaultBits;
  numerics::Bits max_precision_bits = numerics::kDefaultMaxBits;
  std::string epsilon_eq = "2^-128";
  std::string epsilon_cmp = "2^-64";
  std::uint64_t seed = 42;
  ChoiceStrategy choice_strategy = ChoiceStrategy::Half;
  int output_digits = 40;

  /// Throws InvalidConfig when an invariant is broken.
  void validate() const;

  numerics::Scalar epsilon_eq_value() const;
  numerics::Scalar epsilon_cmp_value() const;
  numerics::Tolerance tolerance(numerics::EscalationMonitor* monitor = nullptr) const;
};

/// Parses "2^-k", "2^k" or a decimal literal.
numerics::Scalar parse_epsilon(std::string_view text, numerics::Bits bits);

}  // namespace matchstick
