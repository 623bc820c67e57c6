#include "dynkin/zerosum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dynkin/error.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {
namespace {

constexpr std::array<StageAction, 4> kColumns = kDeviatorActions;

PayoffPair continuation_pair(double c, Player protagonist) {
  return protagonist == Player::One ? PayoffPair{c, 0.0} : PayoffPair{0.0, c};
}

double protagonist_payoff(StageAction protagonist_action, StageAction antagonist_action, const NodePayoff& node,
                          PayoffPair cont, Player protagonist) {
  if (protagonist == Player::One) return outcome_kernel(protagonist_action, antagonist_action, node, cont).g1;
  return outcome_kernel(antagonist_action, protagonist_action, node, cont).g2;
}

StageMix to_mix(const std::array<double, 3>& p) { return {p[0], p[1], p[2]}; }

void require_value_for(const ValueProcess& value, const Game& game) {
  if (value.value.size() != game.tree.size()) {
    throw PreconditionError("value process does not match the game");
  }
}

}  // namespace

StageMatrices stage_matrices(const NodePayoff& node, double continuation, Player protagonist) {
  const PayoffPair cont = continuation_pair(continuation, protagonist);
  StageMatrices out{};
  for (std::size_t r = 0; r < kMixActions.size(); ++r) {
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      out.primal[r][c] = protagonist_payoff(kMixActions[r], kColumns[c], node, cont, protagonist);
      out.dual[r][c] = protagonist_payoff(kColumns[c], kMixActions[r], node, cont, protagonist);
    }
  }
  return out;
}

StageSolution stage_value(const StageMatrices& m, double tol, double scale) {
  const double tie_eps = 1e-12 * scale;
  const MaxminSolution lower = solve_maxmin(m.primal, tie_eps);
  StageMatrix negated{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) negated[r][c] = -m.dual[r][c];
  }
  const MaxminSolution upper = solve_maxmin(negated, tie_eps);

  StageSolution out;
  out.primal_value = lower.value;
  out.dual_value = -upper.value;
  out.value = out.primal_value;
  out.maximizer = to_mix(lower.mix);
  out.minimizer = to_mix(upper.mix);
  if (std::abs(out.primal_value - out.dual_value) > tol * scale) {
    std::ostringstream os;
    os.precision(17);
    os << "stage game orientations disagree: primal " << out.primal_value << ", dual " << out.dual_value;
    throw ModelViolation(os.str());
  }
  return out;
}

ValueProcess solve_value_process(const Game& game, Player player, double tol) {
  const EventTree& tree = game.tree;
  const double scale = game.scale();
  ValueProcess out;
  out.player = player;
  const std::size_t n = tree.size();
  out.value.assign(n, 0.0);
  out.maximizer.assign(n, {});
  out.minimizer.assign(n, {});
  out.primal.assign(n, 0.0);
  out.dual.assign(n, 0.0);
  out.continuation.assign(n, 0.0);

  const auto& order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId node = *it;
    double cont = 0.0;
    if (tree.is_leaf(node)) {
      cont = game.payoffs[node].of(player).xi;
    } else {
      for (const Child& c : tree.children(node)) cont += c.prob * out.value[c.node];
    }
    StageSolution s;
    try {
      s = stage_value(stage_matrices(game.payoffs[node], cont, player), tol, scale);
    } catch (const ModelViolation& e) {
      std::ostringstream os;
      os << "player " << number_of(player) << " node " << node << ": " << e.what();
      throw ModelViolation(os.str());
    }
    out.continuation[node] = cont;
    out.value[node] = s.value;
    out.primal[node] = s.primal_value;
    out.dual[node] = s.dual_value;
    out.maximizer[node] = s.maximizer;
    out.minimizer[node] = s.minimizer;
  }
  return out;
}

ProtagonistView view(const NodePayoff& node, Player protagonist) {
  if (protagonist == Player::One) return {node.p1.x, node.p1.y, node.p1.z};
  return {node.p2.y, node.p2.x, node.p2.z};
}

bool hitting_condition(const Game& game, const ValueProcess& value, NodeId n, double eta, double tol) {
  const ProtagonistView v = view(game.payoffs[n], value.player);
  return v.own_first >= value.value.at(n) - eta - tol * game.scale();
}

HittingTime hitting_time(const Game& game, const ValueProcess& value, double eta, double tol) {
  return hitting_time(game, value, eta, tol, game.tree.root());
}

HittingTime hitting_time(const Game& game, const ValueProcess& value, double eta, double tol, NodeId start) {
  if (!(eta > 0.0)) throw PreconditionError("hitting_time: eta must be positive");
  require_value_for(value, game);
  const EventTree& tree = game.tree;
  HittingTime out;
  out.player = value.player;
  out.eta = eta;
  out.start = start;
  out.region.assign(tree.size(), HitRegion::Outside);

  std::vector<NodeId> stack{start};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (hitting_condition(game, value, n, eta, tol)) {
      out.region[n] = HitRegion::Hit;
      out.antichain.push_back(n);
      for (NodeId d : tree.subtree(n)) {
        if (d != n) out.region[d] = HitRegion::After;
      }
      continue;
    }
    out.region[n] = HitRegion::Before;
    if (tree.is_leaf(n)) out.never_hit.push_back(n);
    const auto kids = tree.children(n);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(it->node);
  }
  std::sort(out.antichain.begin(), out.antichain.end());
  std::sort(out.never_hit.begin(), out.never_hit.end());
  return out;
}

Strategy simple_optimal_strategy(const Game& game, const ValueProcess& value, const HittingTime& hitting,
                                 double tol) {
  require_value_for(value, game);
  if (hitting.player != value.player) throw PreconditionError("simple_optimal_strategy: player mismatch");
  Strategy out(game.tree.size());
  for (NodeId q : hitting.antichain) {
    const ProtagonistView v = view(game.payoffs[q], value.player);
    const bool other_first_too_low = (value.value[q] - hitting.eta) - v.other_first > tol * game.scale();
    out[q] = StageMix::pure(other_first_too_low ? StageAction::Atom : StageAction::Uniform);
  }
  return out;
}

Strategy punishment_strategy(const Game& game, Player punisher, NodeId node, const ValueProcess& opponent_value) {
  require_value_for(opponent_value, game);
  if (opponent_value.player != other(punisher)) {
    throw PreconditionError("punishment_strategy: needs the opponent's value process");
  }
  Strategy out(game.tree.size());
  for (NodeId n : game.tree.subtree(node)) out[n] = opponent_value.minimizer[n];
  return out;
}

void require_convexity(const Game& game, Player player, double tol) {
  const double slack = tol * game.scale();
  for (NodeId n : game.tree.top_down()) {
    const PlayerPayoff& p = game.payoffs[n].of(player);
    if (p.z < std::min(p.x, p.y) - slack || p.z > std::max(p.x, p.y) + slack) {
      std::ostringstream os;
      os << "convexity condition fails for player " << number_of(player) << " at node " << n << ": Z=" << p.z
         << " outside [" << std::min(p.x, p.y) << ", " << std::max(p.x, p.y) << "]";
      throw PreconditionError(os.str());
    }
  }
}

Strategy pure_optimal_strategy(const Game& game, const ValueProcess& value, const HittingTime& hitting,
                               double tol) {
  require_value_for(value, game);
  if (hitting.player != value.player) throw PreconditionError("pure_optimal_strategy: player mismatch");
  require_convexity(game, value.player, tol);
  Strategy out(game.tree.size());
  for (NodeId q : hitting.antichain) out[q] = StageMix::pure(StageAction::Atom);
  return out;
}

PunishmentGame make_punishment_game(const Game& game, Player punisher, double tol) {
  PunishmentGame out;
  out.punisher = punisher;
  out.game = game;
  const Player victim = other(punisher);
  for (NodeId n = 0; n < game.payoffs.size(); ++n) {
    const PlayerPayoff& v = game.payoffs[n].of(victim);
    out.game.payoffs[n].of(punisher) = {-v.x, -v.y, -v.z, -v.xi};
  }
  out.value = solve_value_process(out.game, punisher, tol);
  return out;
}

Strategy pure_punishment_strategy(const PunishmentGame& punishment, NodeId node, double eta, double tol) {
  const HittingTime hit = hitting_time(punishment.game, punishment.value, eta, tol, node);
  return pure_optimal_strategy(punishment.game, punishment.value, hit, tol);
}

}  // namespace dynkin
