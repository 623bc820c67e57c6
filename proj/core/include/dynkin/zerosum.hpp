#pragma once

// Auxiliary zero-sum games. In the game of player i ("the protagonist") the
// payoffs are player i's, player i maximises and the other player minimises.
// Values are computed node by node by backward induction over stage games.

#include <vector>

#include "dynkin/game.hpp"
#include "dynkin/matrix_game.hpp"

namespace dynkin {

/// Protagonist payoffs of one stage. `primal`: protagonist mixes rows
/// (Atom, Uniform, Wait), antagonist plays pure columns (Atom, Early, Late,
/// Wait). `dual`: antagonist mixes rows (Atom, Uniform, Wait), protagonist
/// plays pure columns (Atom, Early, Late, Wait).
struct StageMatrices {
  StageMatrix primal;
  StageMatrix dual;
};

StageMatrices stage_matrices(const NodePayoff& node, double continuation, Player protagonist);

struct StageSolution {
  double value = 0.0;
  double primal_value = 0.0;
  double dual_value = 0.0;
  StageMix maximizer;
  StageMix minimizer;
};

/// Solves both orientations. Throws ModelViolation when they differ by more
/// than tol * scale.
StageSolution stage_value(const StageMatrices& m, double tol, double scale);

struct ValueProcess {
  Player player = Player::One;
  std::vector<double> value;
  std::vector<StageMix> maximizer;
  std::vector<StageMix> minimizer;
  std::vector<double> primal;
  std::vector<double> dual;
  /// Expected value of the children (terminal payoff at a leaf).
  std::vector<double> continuation;
};

ValueProcess solve_value_process(const Game& game, Player player, double tol = kDefaultTol);

/// Hitting region of a node relative to the first time the protagonist's
/// stop-first payoff comes within eta of the value.
enum class HitRegion { Outside, Before, Hit, After };

struct HittingTime {
  Player player = Player::One;
  double eta = 0.0;
  NodeId start = 0;
  /// First nodes, along each path below `start`, where the condition holds.
  std::vector<NodeId> antichain;
  /// Leaves of the paths on which the condition never holds.
  std::vector<NodeId> never_hit;
  std::vector<HitRegion> region;

  bool on_antichain(NodeId n) const { return region.at(n) == HitRegion::Hit; }
  bool strictly_before(NodeId n) const { return region.at(n) == HitRegion::Before; }
};

/// X1(n) >= v1(n) - eta for player 1, Y2(n) >= v2(n) - eta for player 2.
bool hitting_condition(const Game& game, const ValueProcess& value, NodeId n, double eta, double tol);

HittingTime hitting_time(const Game& game, const ValueProcess& value, double eta, double tol = kDefaultTol);
HittingTime hitting_time(const Game& game, const ValueProcess& value, double eta, double tol, NodeId start);

/// The protagonist's stop-first / opponent-first / simultaneous payoffs.
struct ProtagonistView {
  double own_first;
  double other_first;
  double both;
};
ProtagonistView view(const NodePayoff& node, Player protagonist);

/// Wait before the hitting antichain; at an antichain node Atom when the
/// opponent-first payoff is more than eta below the value, Uniform otherwise.
Strategy simple_optimal_strategy(const Game& game, const ValueProcess& value, const HittingTime& hitting,
                                 double tol = kDefaultTol);

/// Minimiser mixes of the opponent's value process on the subtree at `node`
/// (Wait elsewhere). Holds the opponent to its value from `node` on.
Strategy punishment_strategy(const Game& game, Player punisher, NodeId node, const ValueProcess& opponent_value);

/// Throws PreconditionError naming the node unless Z lies between X and Y
/// (within tolerance) for `player` at every node.
void require_convexity(const Game& game, Player player, double tol = kDefaultTol);

/// As simple_optimal_strategy, but Atom at every antichain node. Requires
/// the convexity condition for the protagonist.
Strategy pure_optimal_strategy(const Game& game, const ValueProcess& value, const HittingTime& hitting,
                               double tol = kDefaultTol);

/// Zero-sum game in which `punisher` maximises the negation of the
/// opponent's payoffs, together with its solved value process.
struct PunishmentGame {
  Player punisher = Player::Two;
  Game game;
  ValueProcess value;
};

PunishmentGame make_punishment_game(const Game& game, Player punisher, double tol = kDefaultTol);

/// Non-randomized punishment from `node`: the punisher's pure optimal
/// strategy in the negated game. Holds the opponent to value + eta.
Strategy pure_punishment_strategy(const PunishmentGame& punishment, NodeId node, double eta,
                                  double tol = kDefaultTol);

}  // namespace dynkin
