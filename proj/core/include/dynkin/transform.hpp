#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dynkin/game.hpp"

namespace dynkin {

/// Swaps the two players: (X1,Y1,Z1,xi1; X2,Y2,Z2,xi2) becomes
/// (Y2,X2,Z2,xi2; Y1,X1,Z1,xi1). An involution.
Game mirror(const Game& game);
BehavioralProfile mirror(const BehavioralProfile& profile);
inline PayoffPair mirror(PayoffPair p) { return {p.g2, p.g1}; }

/// Result of inserting identical-payoff frames into a game.
struct FrameSplit {
  Game game;
  /// For every node of `game`, the input node whose payoffs it copies.
  /// Input node ids are preserved, so origin[n] == n for n below the input size.
  std::vector<NodeId> origin;
  /// For every input node that was split, the id of its second half.
  std::vector<std::optional<NodeId>> second_half;

  bool is_inserted(NodeId n) const { return n >= second_half.size(); }
};

/// Replaces the frame of `node` by two consecutive frames with the same
/// payoffs. Leaves on paths that did not get longer are padded with copies
/// so the horizon stays uniform.
FrameSplit split_frame(const Game& game, NodeId node);

/// Splits several frames at once (each node at most once), then pads.
FrameSplit split_frames(const Game& game, std::span<const NodeId> nodes);

/// Carries a profile over to the split game; inserted nodes get Wait/Wait.
BehavioralProfile extend_profile(const FrameSplit& split, const BehavioralProfile& profile);

}  // namespace dynkin
