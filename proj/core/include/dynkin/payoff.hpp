#pragma once

#include <vector>

#include "dynkin/game.hpp"

namespace dynkin {

/// Payoff pair when player 1 plays `a1` and player 2 plays `a2` inside the
/// frame of a node. `continuation` is paid when both Wait; pass the terminal
/// pair (xi1, xi2) at a leaf. Throws PreconditionError when both actions are
/// Early/Late, since their relative order is undefined.
PayoffPair outcome_kernel(StageAction a1, StageAction a2, const NodePayoff& node, PayoffPair continuation);

/// Terminal payoff pair of a leaf.
PayoffPair terminal_payoff(const NodePayoff& leaf);

/// Expected kernel when both sides mix over Atom/Uniform/Wait.
PayoffPair expected_kernel(const StageMix& m1, const StageMix& m2, const NodePayoff& node,
                           PayoffPair continuation);

struct ProfileEvaluation {
  /// Expected payoffs conditional on reaching each node with no one stopped.
  std::vector<PayoffPair> conditional;
  PayoffPair root;
};

ProfileEvaluation evaluate_profile(const Game& game, const BehavioralProfile& profile);

}  // namespace dynkin
