#pragma once

// Finite event-tree model of a two-player Dynkin game.
//
// Every node at depth d is an atom of the information available at time d
// and carries the frame [d, d+1) on which all payoff processes are constant.
// Leaves sit at the common horizon D and additionally carry the terminal
// payoffs paid when nobody ever stops.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dynkin {

using NodeId = std::size_t;

enum class Player : int { One = 1, Two = 2 };

constexpr Player other(Player p) { return p == Player::One ? Player::Two : Player::One; }
constexpr std::size_t index_of(Player p) { return p == Player::One ? 0 : 1; }
constexpr int number_of(Player p) { return static_cast<int>(p); }

struct Child {
  NodeId node;
  double prob;
};

class EventTree {
 public:
  struct Link {
    std::optional<NodeId> parent;
    double prob = 1.0;
  };

  /// A single root node (id 0).
  EventTree();

  /// Builds from a parent table: links[i] describes node i. Throws SchemaError
  /// unless the table describes exactly one rooted tree.
  explicit EventTree(std::vector<Link> links);

  NodeId add_child(NodeId parent, double prob);

  NodeId root() const { return root_; }
  std::size_t size() const { return links_.size(); }
  int depth(NodeId n) const { return depth_.at(n); }
  std::optional<NodeId> parent(NodeId n) const { return links_.at(n).parent; }
  /// Probability of the edge into `n` (1 for the root).
  double prob(NodeId n) const { return links_.at(n).prob; }
  std::span<const Child> children(NodeId n) const { return children_.at(n); }
  bool is_leaf(NodeId n) const { return children_.at(n).empty(); }
  int horizon() const { return horizon_; }

  std::vector<NodeId> leaves() const;
  /// Parents before children; reverse it for backward induction.
  const std::vector<NodeId>& top_down() const { return top_down_; }
  /// Nodes from the root down to `n`, inclusive.
  std::vector<NodeId> path_to(NodeId n) const;
  bool is_ancestor_or_self(NodeId ancestor, NodeId n) const;
  std::vector<NodeId> subtree(NodeId n) const;

  friend bool operator==(const EventTree& a, const EventTree& b);

 private:
  std::vector<Link> links_;
  std::vector<int> depth_;
  std::vector<std::vector<Child>> children_;
  std::vector<NodeId> top_down_;
  NodeId root_ = 0;
  int horizon_ = 0;
};

/// Payoffs of one player at one node. `x` is paid when player 1 stops first,
/// `y` when player 2 stops first, `z` on a simultaneous stop, and `xi` (read
/// at leaves only) when neither player ever stops.
struct PlayerPayoff {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double xi = 0.0;

  friend bool operator==(const PlayerPayoff&, const PlayerPayoff&) = default;
};

struct NodePayoff {
  PlayerPayoff p1;
  PlayerPayoff p2;

  const PlayerPayoff& of(Player p) const { return p == Player::One ? p1 : p2; }
  PlayerPayoff& of(Player p) { return p == Player::One ? p1 : p2; }

  friend bool operator==(const NodePayoff&, const NodePayoff&) = default;
};

struct PayoffProcess {
  std::vector<NodePayoff> nodes;

  NodePayoff& operator[](NodeId n) { return nodes.at(n); }
  const NodePayoff& operator[](NodeId n) const { return nodes.at(n); }
  std::size_t size() const { return nodes.size(); }

  friend bool operator==(const PayoffProcess&, const PayoffProcess&) = default;
};

struct Game {
  EventTree tree;
  PayoffProcess payoffs{std::vector<NodePayoff>(1)};

  /// Largest absolute payoff entry (xi counted at leaves only).
  double range() const;
  /// max(1, range()); all tolerances are multiplied by this.
  double scale() const;

  NodeId add_child(NodeId parent, double prob, NodePayoff payoff = {});

  friend bool operator==(const Game&, const Game&) = default;
};

/// Stop decisions inside one frame. Early and Late are only used when
/// analysing a lone deviator; constructed strategies mix Atom/Uniform/Wait.
enum class StageAction { Atom, Uniform, Wait, Early, Late };

std::string to_string(StageAction a);

/// Per-node stop distribution, conditional on reaching the node with no one
/// having stopped yet.
struct StageMix {
  double atom = 0.0;
  double uniform = 0.0;
  double wait = 1.0;

  static StageMix pure(StageAction a);
  double prob(StageAction a) const;
  bool is_pure() const;

  friend bool operator==(const StageMix&, const StageMix&) = default;
};

inline constexpr std::array<StageAction, 3> kMixActions = {StageAction::Atom, StageAction::Uniform,
                                                          StageAction::Wait};
inline constexpr std::array<StageAction, 4> kDeviatorActions = {
    StageAction::Atom, StageAction::Early, StageAction::Late, StageAction::Wait};

/// One player's behavioral stopping strategy, indexed by node id.
using Strategy = std::vector<StageMix>;

struct BehavioralProfile {
  Strategy player1;
  Strategy player2;

  BehavioralProfile() = default;
  /// Both players Wait everywhere.
  explicit BehavioralProfile(std::size_t nodes) : player1(nodes), player2(nodes) {}

  Strategy& of(Player p) { return p == Player::One ? player1 : player2; }
  const Strategy& of(Player p) const { return p == Player::One ? player1 : player2; }

  friend bool operator==(const BehavioralProfile&, const BehavioralProfile&) = default;
};

struct PayoffPair {
  double g1 = 0.0;
  double g2 = 0.0;

  double of(Player p) const { return p == Player::One ? g1 : g2; }

  friend PayoffPair operator+(PayoffPair a, PayoffPair b) { return {a.g1 + b.g1, a.g2 + b.g2}; }
  friend PayoffPair operator*(double s, PayoffPair a) { return {s * a.g1, s * a.g2}; }
  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

enum class DiagnosticKind { SizeMismatch, ProbabilityRange, ProbabilitySum, NonUniformHorizon, NonFinite };

struct Diagnostic {
  DiagnosticKind kind;
  NodeId node;
  std::string message;
};

/// Empty iff the instance satisfies every model invariant.
std::vector<Diagnostic> validate_instance(const Game& game);

/// Throws PreconditionError naming the first offending node.
void validate_profile(const Game& game, const BehavioralProfile& profile);

/// Default comparison tolerance before scaling by Game::scale().
inline constexpr double kDefaultTol = 1e-9;

}  // namespace dynkin
