#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dynkin/game.hpp"
#include "dynkin/generate.hpp"

namespace dynkin::testing {

inline NodePayoff same_for_both(double x, double y, double z, double xi = 0.0) {
  return {{x, y, z, xi}, {x, y, z, xi}};
}

/// Player 1 gets (x, y, z, xi), player 2 the negation.
inline NodePayoff zero_sum(double x, double y, double z, double xi = 0.0) {
  return {{x, y, z, xi}, {-x, -y, -z, -xi}};
}

/// Full binary tree of the given depth with equiprobable branches, every
/// node carrying `payoff`.
inline Game binary_tree(int depth, const NodePayoff& payoff) {
  Game g;
  g.payoffs[0] = payoff;
  std::vector<NodeId> frontier{g.tree.root()};
  for (int d = 0; d < depth; ++d) {
    std::vector<NodeId> next;
    for (NodeId p : frontier) {
      next.push_back(g.add_child(p, 0.5, payoff));
      next.push_back(g.add_child(p, 0.5, payoff));
    }
    frontier = std::move(next);
  }
  return g;
}

/// The constant zero-sum game X1 = 0, Y1 = Z1 = 2, xi1 = 1.
inline Game constant_example(int depth) { return binary_tree(depth, zero_sum(0.0, 2.0, 2.0, 1.0)); }

inline Game chain(int depth, const std::vector<NodePayoff>& payoffs) {
  Game g;
  g.payoffs[0] = payoffs.at(0);
  NodeId cur = g.tree.root();
  for (int d = 1; d <= depth; ++d) cur = g.add_child(cur, 1.0, payoffs.at(d));
  return g;
}

/// Small deterministic pseudo-random source for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1p-53; }
  double real(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (rng_() >> 63) != 0; }
  /// Multiples of 1/4 in [-2, 2], exact in binary.
  double dyadic() { return integer(-8, 8) / 4.0; }

  StageMix mix() {
    const double a = unit();
    const double u = unit();
    const double w = unit();
    const double s = a + u + w;
    return {a / s, u / s, 1.0 - a / s - u / s};
  }

  /// Stage mixes with probabilities in {0, 1/4, ..., 1}.
  StageMix dyadic_mix() {
    const int a = integer(0, 4);
    const int u = integer(0, 4 - a);
    return {a / 4.0, u / 4.0, (4 - a - u) / 4.0};
  }

  StageMix pure_mix() { return StageMix::pure(kMixActions[integer(0, 2)]); }

 private:
  std::mt19937_64 rng_;
};

inline GeneratorSpec corpus_spec(std::uint64_t seed, int max_depth = 6, int max_branching = 3) {
  Gen g(seed * 7919 + 17);
  GeneratorSpec s;
  s.family = static_cast<Family>(g.integer(0, 2));
  s.depth = g.integer(0, max_depth);
  s.branching = g.integer(1, max_branching);
  s.range = g.coin() ? 1.0 : g.real(0.5, 20.0);
  s.zero_sum = g.integer(0, 4) == 0;
  s.convex = g.integer(0, 3) == 0;
  s.seed = seed;
  return s;
}

/// Deterministic seeded corpus of generated games.
inline std::vector<Game> corpus(int count, std::uint64_t base, int max_depth = 6, int max_branching = 3) {
  std::vector<Game> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(generate(corpus_spec(base + i, max_depth, max_branching)));
  return out;
}

/// Every rooted tree shape with at most `max_nodes` nodes whose leaves all
/// share one depth, as parent tables. Children are unordered, so shapes are
/// generated canonically (child subtrees in non-increasing order).
std::vector<std::vector<EventTree::Link>> uniform_shapes(int max_nodes);

/// Attaches dyadic probabilities and payoffs to a shape.
Game dress(const std::vector<EventTree::Link>& shape, Gen& gen);

Game random_game(Gen& gen, int max_depth, int max_branching, bool dyadic = false);

}  // namespace dynkin::testing
