#include "dynkin/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dynkin/error.hpp"

namespace dynkin {

std::string to_string(Family f) {
  switch (f) {
    case Family::WarOfAttrition: return "war-of-attrition";
    case Family::Preemption: return "preemption";
    case Family::Random: return "random";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "war-of-attrition" || name == "war") return Family::WarOfAttrition;
  if (name == "preemption") return Family::Preemption;
  if (name == "random") return Family::Random;
  throw PreconditionError("unknown generator family '" + name + "'");
}

namespace {

// std::uniform_real_distribution is not specified bit-exactly across
// standard libraries; mt19937_64 is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

double clamp_range(double v, double r) { return std::clamp(v, -r, r); }

void clamp_between(PlayerPayoff& p) { p.z = std::clamp(p.z, std::min(p.x, p.y), std::max(p.x, p.y)); }

// Player-1 view (own stop first, opponent first, both, terminal) for one node.
struct Draw {
  double own, opp, both, xi;
};

Draw draw(Family family, Rng& rng, double r, int depth, int horizon) {
  const double t = horizon > 0 ? static_cast<double>(depth) / horizon : 0.0;
  switch (family) {
    case Family::WarOfAttrition: {
      // Conceding gives the smaller share; both sides bleed while waiting.
      const double cost = 0.5 * r * t;
      const double lose = rng.uniform(-0.5 * r, 0.2 * r) - cost;
      const double win = lose + rng.uniform(0.1 * r, r);
      const double both = rng.uniform(-r, 0.5 * r) - cost;
      return {clamp_range(lose, r), clamp_range(win, r), clamp_range(both, r), clamp_range(rng.uniform(-r, 0.0), r)};
    }
    case Family::Preemption: {
      // Moving first is what pays, and its reward grows with time.
      const double lead = rng.uniform(-0.5 * r, 0.5 * r) + 0.5 * r * t;
      const double follow = lead - rng.uniform(0.1 * r, r);
      const double both = rng.uniform(-r, r);
      return {clamp_range(lead, r), clamp_range(follow, r), clamp_range(both, r), clamp_range(rng.uniform(-r, r), r)};
    }
    case Family::Random:
      break;
  }
  return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)};
}

}  // namespace

Game generate(const GeneratorSpec& spec) {
  if (spec.depth < 0) throw PreconditionError("generator depth must be >= 0");
  if (spec.branching < 1) throw PreconditionError("generator branching must be >= 1");
  if (!(spec.range > 0.0) || !std::isfinite(spec.range)) throw PreconditionError("generator range must be positive");

  Rng rng(spec.seed);
  Game game;
  std::vector<NodeId> frontier{game.tree.root()};
  for (int d = 0; d < spec.depth; ++d) {
    std::vector<NodeId> next;
    for (NodeId parent : frontier) {
      const int kids = rng.integer(1, spec.branching);
      std::vector<double> w(kids);
      double total = 0.0;
      for (double& x : w) total += (x = 0.25 + rng.unit());
      double used = 0.0;
      for (int k = 0; k < kids; ++k) {
        const double p = k + 1 == kids ? 1.0 - used : w[k] / total;
        used += p;
        next.push_back(game.add_child(parent, p));
      }
    }
    frontier = std::move(next);
  }

  const int horizon = game.tree.horizon();
  const double r = spec.range;
  for (NodeId n : game.tree.top_down()) {
    const int depth = game.tree.depth(n);
    NodePayoff& q = game.payoffs[n];
    const Draw a = draw(spec.family, rng, r, depth, horizon);
    q.p1 = {a.own, a.opp, a.both, game.tree.is_leaf(n) ? a.xi : 0.0};
    if (spec.zero_sum) {
      q.p2 = {-q.p1.x, -q.p1.y, -q.p1.z, -q.p1.xi};
    } else {
      const Draw b = draw(spec.family, rng, r, depth, horizon);
      // Player 2's own-first payoff is Y2, opponent-first is X2.
      q.p2 = {b.opp, b.own, b.both, game.tree.is_leaf(n) ? b.xi : 0.0};
    }
    if (spec.convex) {
      clamp_between(q.p1);
      clamp_between(q.p2);
    }
  }
  return game;
}

}  // namespace dynkin
