#include "dynkin/payoff.hpp"

#include "dynkin/error.hpp"

namespace dynkin {
namespace {

// Position of a stop inside the frame; Uniform sits strictly between the
// Early and Late endpoint limits.
int timing_rank(StageAction a) {
  switch (a) {
    case StageAction::Atom: return 0;
    case StageAction::Early: return 1;
    case StageAction::Uniform: return 2;
    case StageAction::Late: return 3;
    case StageAction::Wait: return 4;
  }
  return 4;
}

bool is_endpoint(StageAction a) { return a == StageAction::Early || a == StageAction::Late; }

PayoffPair first_one(const NodePayoff& n) { return {n.p1.x, n.p2.x}; }
PayoffPair first_two(const NodePayoff& n) { return {n.p1.y, n.p2.y}; }

}  // namespace

PayoffPair outcome_kernel(StageAction a1, StageAction a2, const NodePayoff& node, PayoffPair continuation) {
  if (is_endpoint(a1) && is_endpoint(a2)) {
    throw PreconditionError("outcome_kernel: both players use Early/Late, ordering undefined");
  }
  const int r1 = timing_rank(a1);
  const int r2 = timing_rank(a2);
  if (r1 < r2) return first_one(node);
  if (r2 < r1) return first_two(node);
  switch (a1) {
    case StageAction::Atom: return {node.p1.z, node.p2.z};
    case StageAction::Uniform: return 0.5 * first_one(node) + 0.5 * first_two(node);
    default: return continuation;
  }
}

PayoffPair terminal_payoff(const NodePayoff& leaf) { return {leaf.p1.xi, leaf.p2.xi}; }

PayoffPair expected_kernel(const StageMix& m1, const StageMix& m2, const NodePayoff& node,
                           PayoffPair continuation) {
  PayoffPair out;
  for (StageAction a1 : kMixActions) {
    const double p = m1.prob(a1);
    if (p == 0.0) continue;
    for (StageAction a2 : kMixActions) {
      const double q = m2.prob(a2);
      if (q == 0.0) continue;
      out = out + (p * q) * outcome_kernel(a1, a2, node, continuation);
    }
  }
  return out;
}

ProfileEvaluation evaluate_profile(const Game& game, const BehavioralProfile& profile) {
  validate_profile(game, profile);
  const EventTree& tree = game.tree;
  ProfileEvaluation out;
  out.conditional.assign(tree.size(), {});
  const auto& order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId n = *it;
    PayoffPair cont;
    if (tree.is_leaf(n)) {
      cont = terminal_payoff(game.payoffs[n]);
    } else {
      for (const Child& c : tree.children(n)) cont = cont + c.prob * out.conditional[c.node];
    }
    out.conditional[n] = expected_kernel(profile.player1[n], profile.player2[n], game.payoffs[n], cont);
  }
  out.root = out.conditional[tree.root()];
  return out;
}

}  // namespace dynkin
