#pragma once

#include <cstdint>
#include <string>

#include "dynkin/game.hpp"

namespace dynkin {

enum class Family { WarOfAttrition, Preemption, Random };

std::string to_string(Family f);
/// Accepts "war-of-attrition", "preemption" and "random".
Family parse_family(const std::string& name);

struct GeneratorSpec {
  Family family = Family::Random;
  /// Horizon of the generated tree.
  int depth = 2;
  /// Every internal node gets between 1 and `branching` children.
  int branching = 2;
  /// Payoffs are drawn from [-range, range].
  double range = 1.0;
  /// Player 2's payoffs are the negation of player 1's.
  bool zero_sum = false;
  /// Clamp each Z between the matching X and Y.
  bool convex = false;
  std::uint64_t seed = 0;
};

/// Deterministic: the same GeneratorSpec always yields the same game,
/// bit for bit, on every platform.
Game generate(const GeneratorSpec& spec);

}  // namespace dynkin
