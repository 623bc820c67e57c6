#include "dynkin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynkin/equilibrium.hpp"
#include "dynkin/error.hpp"
#include "dynkin/payoff.hpp"
#include "dynkin/transform.hpp"
#include "dynkin/zerosum.hpp"

namespace dynkin {

BestResponse best_response(const Game& game, const Strategy& opponent, Player deviator) {
  const EventTree& tree = game.tree;
  if (opponent.size() != tree.size()) throw PreconditionError("best_response: opponent strategy size mismatch");
  BestResponse out;
  out.deviator = deviator;
  out.value.assign(tree.size(), 0.0);
  out.action.assign(tree.size(), StageAction::Wait);

  const auto& order = tree.top_down();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId n = *it;
    double cont = 0.0;
    if (tree.is_leaf(n)) {
      cont = game.payoffs[n].of(deviator).xi;
    } else {
      for (const Child& c : tree.children(n)) cont += c.prob * out.value[c.node];
    }
    const PayoffPair cont_pair = deviator == Player::One ? PayoffPair{cont, 0.0} : PayoffPair{0.0, cont};
    const StageMix& q = opponent[n];
    double best = -std::numeric_limits<double>::infinity();
    StageAction arg = StageAction::Wait;
    for (StageAction d : kDeviatorActions) {
      double v = 0.0;
      for (StageAction o : kMixActions) {
        const double w = q.prob(o);
        if (w == 0.0) continue;
        const PayoffPair k = deviator == Player::One ? outcome_kernel(d, o, game.payoffs[n], cont_pair)
                                                     : outcome_kernel(o, d, game.payoffs[n], cont_pair);
        v += w * k.of(deviator);
      }
      if (v > best) {
        best = v;
        arg = d;
      }
    }
    out.value[n] = best;
    out.action[n] = arg;
  }
  return out;
}

std::vector<double> worst_case_guarantee(const Game& game, const Strategy& strategy, Player protagonist) {
  const Player adversary = other(protagonist);
  Game negated = game;
  for (NodeId n = 0; n < game.payoffs.size(); ++n) {
    const PlayerPayoff& p = game.payoffs[n].of(protagonist);
    negated.payoffs[n].of(adversary) = {-p.x, -p.y, -p.z, -p.xi};
  }
  std::vector<double> out = best_response(negated, strategy, adversary).value;
  for (double& v : out) v = -v;
  return out;
}

GapPair deviation_gap(const Game& game, const BehavioralProfile& profile) {
  const ProfileEvaluation eval = evaluate_profile(game, profile);
  GapPair out;
  for (Player p : {Player::One, Player::Two}) {
    BestResponse br = best_response(game, profile.of(other(p)), p);
    GapCertificate& cert = p == Player::One ? out.player1 : out.player2;
    cert.player = p;
    cert.best_response = br.value[game.tree.root()];
    cert.path_value = eval.root.of(p);
    cert.raw_gap = cert.best_response - cert.path_value;
    cert.gap = std::max(0.0, cert.raw_gap);
    cert.strategy = std::move(br.action);
  }
  return out;
}

bool InvariantReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const InvariantResult& r) { return r.passed; });
}

const InvariantResult* InvariantReport::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

// Records the largest violation of one named invariant; a violation is any
// positive excess over the allowed slack.
class Check {
 public:
  Check(std::string name, double slack) : slack_(slack) { result_.name = std::move(name); }

  void excess(double amount, NodeId node) {
    if (amount > slack_ && amount > result_.worst) {
      result_.passed = false;
      result_.worst = amount;
      result_.witness = node;
    }
  }
  void fail(NodeId node, std::string detail) {
    result_.passed = false;
    result_.worst = std::max(result_.worst, 1.0);
    result_.witness = node;
    result_.detail = std::move(detail);
  }
  InvariantResult done(std::string detail = {}) {
    if (result_.detail.empty()) result_.detail = std::move(detail);
    return result_;
  }

 private:
  double slack_;
  InvariantResult result_;
};

// Depth at which the hitting antichain is met on the path to `leaf`;
// horizon + 1 when never.
int first_hit_depth(const Game& game, const HittingTime& hit, NodeId leaf) {
  for (NodeId n : game.tree.path_to(leaf)) {
    if (hit.on_antichain(n)) return game.tree.depth(n);
  }
  return game.tree.horizon() + 1;
}

}  // namespace

InvariantReport check_invariants(const Game& game, double eta, double tol) {
  InvariantReport report;
  const double slack = tol * game.scale();
  const EventTree& tree = game.tree;
  constexpr double kNoThrow = std::numeric_limits<double>::infinity();
  const Player players[] = {Player::One, Player::Two};

  ValueProcess values[2] = {solve_value_process(game, Player::One, kNoThrow),
                            solve_value_process(game, Player::Two, kNoThrow)};

  {
    Check c("minimax_agreement", slack);
    for (const auto& v : values) {
      for (NodeId n : tree.top_down()) c.excess(std::abs(v.primal[n] - v.dual[n]), n);
    }
    report.results.push_back(c.done("primal and dual stage values agree"));
  }
  const bool values_trusted = report.results.back().passed;

  {
    Check c("value_bounds", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      for (NodeId n : tree.top_down()) {
        const PlayerPayoff& q = game.payoffs[n].of(p);
        c.excess(std::min(q.x, q.y) - v.value[n], n);
        c.excess(v.value[n] - std::max(q.x, q.y), n);
      }
    }
    report.results.push_back(c.done("min{X,Y} <= v <= max{X,Y}"));
  }
  {
    Check c("value_upper_bounds", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      for (NodeId n : tree.top_down()) {
        const ProtagonistView w = view(game.payoffs[n], p);
        c.excess(v.value[n] - std::max(w.other_first, w.both), n);
      }
    }
    report.results.push_back(c.done("v1 <= max{Y1,Z1}, v2 <= max{X2,Z2}"));
  }

  HittingTime hits[2] = {hitting_time(game, values[0], eta, tol), hitting_time(game, values[1], eta, tol)};

  {
    Check c("submartingale", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      const HittingTime& h = hits[index_of(p)];
      for (NodeId n : tree.top_down()) {
        if (h.strictly_before(n)) c.excess(v.value[n] - v.continuation[n], n);
      }
    }
    report.results.push_back(c.done("v <= E[v(children)] strictly before the hitting time"));
  }
  {
    Check c("hit_inequality", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      for (NodeId q : hits[index_of(p)].antichain) {
        c.excess((v.value[q] - eta) - view(game.payoffs[q], p).own_first, q);
      }
    }
    report.results.push_back(c.done("own-first payoff >= v - eta on the hitting antichain"));
  }
  {
    Check c("before_hit_inequality", 0.0);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      const HittingTime& h = hits[index_of(p)];
      for (NodeId n : tree.top_down()) {
        if (!h.strictly_before(n)) continue;
        const ProtagonistView w = view(game.payoffs[n], p);
        if (hitting_condition(game, v, n, eta, tol)) c.fail(n, "hitting condition holds before the hitting time");
        if (!(w.other_first > w.own_first)) c.fail(n, "opponent-first payoff not above own-first payoff");
      }
    }
    report.results.push_back(c.done("strictly before the hitting time the condition fails and Y1 > X1"));
  }
  {
    Check c("expected_value_bound", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      const HittingTime& h = hits[index_of(p)];
      std::vector<double> stopped(tree.size(), 0.0);
      const auto& order = tree.top_down();
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId n = *it;
        if (h.on_antichain(n)) {
          stopped[n] = v.value[n];
        } else if (tree.is_leaf(n)) {
          stopped[n] = game.payoffs[n].of(p).xi;
        } else {
          double s = 0.0;
          for (const Child& ch : tree.children(n)) s += ch.prob * stopped[ch.node];
          stopped[n] = s;
        }
        if (h.strictly_before(n) || h.on_antichain(n)) c.excess(v.value[n] - stopped[n], n);
      }
    }
    report.results.push_back(c.done("v <= E[v at the hitting time, xi if never]"));
  }
  {
    Check c("hitting_monotonicity", 0.0);
    for (Player p : players) {
      const HittingTime finer = hitting_time(game, values[index_of(p)], eta / 2, tol);
      for (NodeId leaf : tree.leaves()) {
        if (first_hit_depth(game, hits[index_of(p)], leaf) > first_hit_depth(game, finer, leaf)) {
          c.fail(leaf, "hitting time for eta is later than for eta/2");
        }
      }
    }
    report.results.push_back(c.done("larger eta hits weakly earlier"));
  }
  {
    Check c("frame_split_invariance", slack);
    std::vector<NodeId> points{tree.root(), tree.top_down()[tree.size() / 2], tree.top_down().back()};
    if (!hits[0].antichain.empty()) points.push_back(hits[0].antichain.front());
    for (NodeId at : points) {
      const FrameSplit split = split_frame(game, at);
      for (Player p : players) {
        const ValueProcess w = solve_value_process(split.game, p, kNoThrow);
        for (NodeId n = 0; n < tree.size(); ++n) c.excess(std::abs(w.value[n] - values[index_of(p)].value[n]), n);
      }
    }
    report.results.push_back(c.done("values unchanged after splitting a frame"));
  }
  {
    Check c("punishment_tightness", slack);
    for (Player p : players) {
      const Strategy punish = punishment_strategy(game, other(p), tree.root(), values[index_of(p)]);
      const BestResponse br = best_response(game, punish, p);
      for (NodeId n : tree.top_down()) c.excess(std::abs(br.value[n] - values[index_of(p)].value[n]), n);
    }
    report.results.push_back(c.done("best response to the punishment equals the value"));
  }
  {
    Check c("simple_strategy_guarantee", slack);
    for (Player p : players) {
      const ValueProcess& v = values[index_of(p)];
      const HittingTime& h = hits[index_of(p)];
      const Strategy s = simple_optimal_strategy(game, v, h, tol);
      const std::vector<double> g = worst_case_guarantee(game, s, p);
      for (NodeId n : tree.top_down()) {
        if (h.strictly_before(n) || h.on_antichain(n)) c.excess((v.value[n] - eta) - g[n], n);
      }
    }
    report.results.push_back(c.done("simple strategy guarantees v - eta"));
  }
  {
    Check c("classification_reachable", 0.0);
    if (!values_trusted) {
      c.fail(tree.root(), "skipped: value processes disagree");
    } else {
      try {
        (void)classify(game, values[0], values[1], tol);
      } catch (const ModelViolation& e) {
        c.fail(tree.root(), e.what());
      }
    }
    report.results.push_back(c.done("the empty part is never reached"));
  }
  return report;
}

}  // namespace dynkin
