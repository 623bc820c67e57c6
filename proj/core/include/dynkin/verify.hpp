#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynkin/game.hpp"

namespace dynkin {

struct BestResponse {
  Player deviator = Player::One;
  /// Best pure deviation payoff from each node on, given survival to it.
  std::vector<double> value;
  /// Maximising action per node, ties to the earlier of Atom, Early, Late, Wait.
  std::vector<StageAction> action;
};

/// Backward DP over the deviator's pure frame actions against a fixed
/// behavioral opponent. Interior stopping times are affine in position, so
/// the Early/Late endpoint limits suffice.
BestResponse best_response(const Game& game, const Strategy& opponent, Player deviator);

/// Per-node lowest payoff `protagonist` can be driven to by an opponent's
/// pure deviation while the protagonist plays `strategy`.
std::vector<double> worst_case_guarantee(const Game& game, const Strategy& strategy, Player protagonist);

struct GapCertificate {
  Player player = Player::One;
  double best_response = 0.0;
  double path_value = 0.0;
  /// best_response - path_value before clamping.
  double raw_gap = 0.0;
  double gap = 0.0;
  std::vector<StageAction> strategy;
};

struct GapPair {
  GapCertificate player1;
  GapCertificate player2;

  const GapCertificate& of(Player p) const { return p == Player::One ? player1 : player2; }
  double max() const { return player1.gap > player2.gap ? player1.gap : player2.gap; }
};

GapPair deviation_gap(const Game& game, const BehavioralProfile& profile);

struct InvariantResult {
  std::string name;
  bool passed = true;
  /// Largest violation found (0 when none).
  double worst = 0.0;
  std::optional<NodeId> witness;
  std::string detail;
};

struct InvariantReport {
  std::vector<InvariantResult> results;

  bool all_passed() const;
  const InvariantResult* find(const std::string& name) const;
};

/// Runs the zero-sum lemma suite, minimax agreement, frame-splitting
/// invariance, punishment tightness and classification reachability.
InvariantReport check_invariants(const Game& game, double eta, double tol = kDefaultTol);

}  // namespace dynkin
