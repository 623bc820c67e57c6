#pragma once

// Independent oracle for small trees. Everything here is computed directly
// from the who-stops-first case split on each root-to-leaf path, without the
// stage kernel or backward induction, so it can cross-check both.

#include <cstddef>
#include <utility>
#include <vector>

#include "dynkin/game.hpp"

namespace dynkin {

inline constexpr std::size_t kMaxBruteForceNodes = 10;

/// How two Early stops (or two Late stops) in the same frame are ordered.
/// The frame model leaves this open; the oracle makes it explicit.
enum class InteriorOrder { PlayerOneFirst, PlayerTwoFirst, Simultaneous };

/// A pure stopping rule: one action per node, Wait meaning "do not stop here".
/// Only the first non-Wait node on each path matters.
using PureRule = std::vector<StageAction>;

/// Stop points of a canonical pure rule. Every path from the start meets
/// exactly one entry; an entry with Wait is a leaf where the rule never stops.
using StopSet = std::vector<std::pair<NodeId, StageAction>>;

/// All canonical rules in the subtree of `start` whose stops use `actions`.
std::vector<StopSet> enumerate_stopping_rules(const Game& game, NodeId start, const std::vector<StageAction>& actions);

PureRule to_rule(const Game& game, const StopSet& stops);

/// Payoffs of a pair of pure rules. Uniform is allowed and means an
/// independent uniform stop inside the frame.
PayoffPair brute_force_pure_pair(const Game& game, const PureRule& rule1, const PureRule& rule2,
                                 InteriorOrder order = InteriorOrder::PlayerOneFirst);

/// Expected payoffs of a behavioral profile, summing over every pair of
/// stop points on every path.
PayoffPair brute_force_payoff(const Game& game, const BehavioralProfile& profile);

/// For every node: the best payoff `deviator` can obtain from there on with
/// a pure rule over {Atom, Early, Late, Wait}, found by listing every rule.
std::vector<double> brute_force_best_response(const Game& game, const Strategy& opponent, Player deviator,
                                              InteriorOrder order = InteriorOrder::PlayerOneFirst);

/// Root value of the zero-sum game in which `player` maximises its own
/// payoff with mixtures of {Atom, Uniform} rules and the opponent minimises
/// it with pure {Atom, Early, Late} rules. Solved over the full rule sets by
/// column and row generation.
double brute_force_zero_sum_value(const Game& game, Player player);

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row;
  std::vector<double> col;
};

/// Value of a dense matrix game (rows maximise) by the simplex method.
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& a);

}  // namespace dynkin
