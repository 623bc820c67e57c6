#include "dynkin/transform.hpp"

#include <algorithm>

#include "dynkin/error.hpp"

namespace dynkin {
namespace {

PlayerPayoff swapped_roles(const PlayerPayoff& p) { return {p.y, p.x, p.z, p.xi}; }

}  // namespace

Game mirror(const Game& game) {
  Game out = game;
  for (NodeId n = 0; n < game.payoffs.size(); ++n) {
    const NodePayoff& q = game.payoffs[n];
    out.payoffs[n] = NodePayoff{swapped_roles(q.p2), swapped_roles(q.p1)};
  }
  return out;
}

BehavioralProfile mirror(const BehavioralProfile& profile) {
  BehavioralProfile out;
  out.player1 = profile.player2;
  out.player2 = profile.player1;
  return out;
}

FrameSplit split_frame(const Game& game, NodeId node) {
  const NodeId nodes[] = {node};
  return split_frames(game, nodes);
}

FrameSplit split_frames(const Game& game, std::span<const NodeId> nodes) {
  const EventTree& tree = game.tree;
  const std::size_t n = tree.size();
  std::vector<NodeId> targets(nodes.begin(), nodes.end());
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (NodeId t : targets) {
    if (t >= n) throw PreconditionError("split_frames: unknown node");
  }

  FrameSplit out;
  out.second_half.assign(n, std::nullopt);
  for (std::size_t k = 0; k < targets.size(); ++k) out.second_half[targets[k]] = n + k;

  std::vector<EventTree::Link> links(n + targets.size());
  for (NodeId i = 0; i < n; ++i) {
    links[i].prob = tree.prob(i);
    if (auto p = tree.parent(i)) links[i].parent = out.second_half[*p].value_or(*p);
  }
  out.origin.resize(n + targets.size());
  for (NodeId i = 0; i < n; ++i) out.origin[i] = i;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    links[n + k] = {targets[k], 1.0};
    out.origin[n + k] = targets[k];
  }

  out.game.tree = EventTree(std::move(links));
  out.game.payoffs.nodes.resize(out.origin.size());
  for (NodeId i = 0; i < out.origin.size(); ++i) out.game.payoffs[i] = game.payoffs[out.origin[i]];

  const int horizon = out.game.tree.horizon();
  for (NodeId leaf : out.game.tree.leaves()) {
    NodeId cur = leaf;
    for (int d = out.game.tree.depth(leaf); d < horizon; ++d) {
      cur = out.game.add_child(cur, 1.0, out.game.payoffs[leaf]);
      out.origin.push_back(out.origin[leaf]);
    }
  }
  return out;
}

BehavioralProfile extend_profile(const FrameSplit& split, const BehavioralProfile& profile) {
  const std::size_t n = split.second_half.size();
  BehavioralProfile out(split.game.tree.size());
  for (Player p : {Player::One, Player::Two}) {
    if (profile.of(p).size() != n) throw PreconditionError("extend_profile: profile size mismatch");
    std::copy(profile.of(p).begin(), profile.of(p).end(), out.of(p).begin());
  }
  return out;
}

}  // namespace dynkin
