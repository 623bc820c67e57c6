// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dynkin/brute_force.hpp"
#include "dynkin/equilibrium.hpp"
#include "dynkin/error.hpp"
#include "dynkin/payoff.hpp"
#include "dynkin/transform.hpp"
#include "dynkin/verify.hpp"
#include "dynkin/zerosum.hpp"
#include "support.hpp"

using namespace dynkin;
using namespace dynkin::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Counts checks and keeps the first few violations.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (examples_.size() < 3) examples_.push_back(what);
  }
  void worst(double v) { worst_ = std::max(worst_, v); }

  bool ok() const { return failures_ == 0; }
  double worst() const { return worst_; }

  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks, " << failures_ << " violations";
    for (const std::string& e : examples_) os << "; " << e;
    return os.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> examples_;
};

std::string where(int instance, NodeId node) {
  return "instance " + std::to_string(instance) + " node " + std::to_string(node);
}

const std::vector<Game>& main_corpus() {
  static const std::vector<Game> games = corpus(250, 100000, 6, 3);
  return games;
}

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const Game g = constant_example(4);
  const ValueProcess v1 = solve_value_process(g, Player::One);
  const HittingTime h = hitting_time(g, v1, 0.5);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Tally t;
  for (NodeId n = 0; n < g.tree.size(); ++n) {
    t.check(std::abs(v1.value[n] - 1.0) <= 1e-9, "v1 != 1 at node " + std::to_string(n));
  }
  t.check(h.antichain.empty(), "hitting antichain not empty");
  t.check(h.never_hit == g.tree.leaves(), "some path is hit");
  t.check(g.tree.size() == 31, "tree is not a depth-4 binary tree");
  t.check(seconds < 1.0, "too slow");
  std::ostringstream os;
  os << g.tree.size() << " nodes, v1 = 1 everywhere, never hit on " << h.never_hit.size() << " paths, " << seconds
     << " s; " << t.summary();
  return {t.ok(), os.str()};
}

Verdict criterion2() {
  Tally t;
  int i = 0;
  for (const Game& g : main_corpus()) {
    const double r = g.range();
    for (Player p : {Player::One, Player::Two}) {
      ValueProcess v;
      try {
        v = solve_value_process(g, p);
      } catch (const ModelViolation& e) {
        t.check(false, "instance " + std::to_string(i) + ": " + e.what());
        continue;
      }
      for (NodeId n = 0; n < g.tree.size(); ++n) {
        const double d = std::abs(v.primal[n] - v.dual[n]);
        t.worst(d / std::max(r, 1e-300));
        t.check(d <= 1e-7 * r, where(i, n));
      }
    }
    ++i;
  }
  std::ostringstream os;
  os << main_corpus().size() << " instances, worst |primal - dual| / R = " << t.worst() << "; " << t.summary();
  return {t.ok(), os.str()};
}

Verdict criterion3() {
  Tally t;
  int i = 0;
  for (const Game& g : main_corpus()) {
    const double tol = 1e-9 * g.range();
    for (Player p : {Player::One, Player::Two}) {
      const ValueProcess v = solve_value_process(g, p);
      const auto view_of = [&](NodeId n) { return view(g.payoffs[n], p); };
      for (NodeId n = 0; n < g.tree.size(); ++n) {
        const ProtagonistView q = view_of(n);
        t.check(v.value[n] >= std::min(q.own_first, q.other_first) - tol, "lower bound at " + where(i, n));
        t.check(v.value[n] <= std::max(q.own_first, q.other_first) + tol, "upper bound at " + where(i, n));
        t.check(v.value[n] <= std::max(q.other_first, q.both) + tol, "opponent-first bound at " + where(i, n));
      }
      for (double eta : {0.2, 0.05}) {
        // Hitting time recomputed here straight from its definition.
        std::vector<int> region(g.tree.size(), 0);  // 0 before, 1 hit, 2 after
        for (NodeId n : g.tree.top_down()) {
          const auto parent = g.tree.parent(n);
          if (parent && region[*parent] != 0) {
            region[n] = 2;
            continue;
          }
          region[n] = view_of(n).own_first >= v.value[n] - eta - tol ? 1 : 0;
        }
        const HittingTime h = hitting_time(g, v, eta);
        for (NodeId n = 0; n < g.tree.size(); ++n) {
          const ProtagonistView q = view_of(n);
          t.check((region[n] == 1) == h.on_antichain(n), "antichain mismatch at " + where(i, n));
          if (region[n] == 1) t.check(q.own_first >= v.value[n] - eta - tol, "at-hit inequality at " + where(i, n));
          if (region[n] == 0) {
            t.check(q.other_first > q.own_first, "before-hit inequality at " + where(i, n));
            double expected = 0.0;
            if (g.tree.is_leaf(n)) {
              expected = g.payoffs[n].of(p).xi;
            } else {
              for (const Child& c : g.tree.children(n)) expected += c.prob * v.value[c.node];
            }
            t.check(v.value[n] <= expected + tol, "submartingale at " + where(i, n));
          }
        }
      }
    }
    ++i;
  }
  std::ostringstream os;
  os << main_corpus().size() << " instances, both players, eta in {0.2, 0.05}; " << t.summary();
  return {t.ok(), os.str()};
}

Verdict criterion4() {
  const std::vector<Game> games = corpus(150, 200000, 6, 3);
  Tally bound;
  int monotone = 0;
  double max_coarse = 0.0;
  double max_fine = 0.0;
  double worst_ratio = 0.0;
  int i = 0;
  for (const Game& g : games) {
    const double r = g.range();
    const EquilibriumReport mid = construct(g, 0.05);
    for (Player p : {Player::One, Player::Two}) {
      bound.check(mid.gaps.of(p).gap <= 13 * 0.05 + 1e-6 * r, "gap " + std::to_string(mid.gaps.of(p).gap) +
                                                                  " at instance " + std::to_string(i));
    }
    worst_ratio = std::max(worst_ratio, mid.gaps.max() / 0.05);
    const GapPair coarse = construct(g, 0.2).gaps;
    const GapPair fine = construct(g, 0.01).gaps;
    bool ok = true;
    for (Player p : {Player::One, Player::Two}) ok = ok && fine.of(p).gap <= coarse.of(p).gap + 1e-6 * r;
    monotone += ok ? 1 : 0;
    max_coarse = std::max(max_coarse, coarse.max());
    max_fine = std::max(max_fine, fine.max());
    ++i;
  }
  const double share = static_cast<double>(monotone) / games.size();
  const bool pass = bound.ok() && share >= 0.95 && max_fine < max_coarse;
  std::ostringstream os;
  os << games.size() << " instances; eta=0.05 worst gap = " << worst_ratio << " eta; monotone on " << monotone << "/"
     << games.size() << "; max gap " << max_fine << " (eta=0.01) vs " << max_coarse << " (eta=0.2); "
     << bound.summary();
  return {pass, os.str()};
}

Verdict criterion5() {
  Tally t;
  double worst = 0.0;
  const int count = 120;
  for (int i = 0; i < count; ++i) {
    GeneratorSpec spec = corpus_spec(300000 + i);
    spec.convex = true;
    const Game g = generate(spec);
    EquilibriumReport r;
    try {
      r = construct_pure(g, 0.05);
    } catch (const Error& e) {
      t.check(false, "instance " + std::to_string(i) + ": " + e.what());
      continue;
    }
    for (Player p : {Player::One, Player::Two}) {
      for (const StageMix& m : r.profile.of(p)) {
        t.check((m.atom == 0.0 || m.atom == 1.0) && (m.uniform == 0.0 || m.uniform == 1.0) &&
                    (m.wait == 0.0 || m.wait == 1.0),
                "randomized stage at instance " + std::to_string(i));
      }
      t.check(r.gaps.of(p).gap <= 13 * 0.05 + 1e-6 * g.range(), "gap at instance " + std::to_string(i));
    }
    worst = std::max(worst, r.gaps.max());
  }
  std::ostringstream os;
  os << count << " convex instances, worst gap " << worst << "; " << t.summary();
  return {t.ok(), os.str()};
}

BehavioralProfile dyadic_profile(const Game& g, Gen& gen) {
  BehavioralProfile p(g.tree.size());
  for (NodeId n = 0; n < g.tree.size(); ++n) {
    p.player1[n] = gen.dyadic_mix();
    p.player2[n] = gen.dyadic_mix();
  }
  return p;
}

Verdict criterion6() {
  Tally eval;
  Tally br;
  Tally value;
  Tally part5;
  Gen gen(6006);
  const auto shapes = uniform_shapes(static_cast<int>(kMaxBruteForceNodes));
  double worst_value = 0.0;
  for (const auto& shape : shapes) {
    for (int rep = 0; rep < 3; ++rep) {
      const Game g = dress(shape, gen);
      const BehavioralProfile p = dyadic_profile(g, gen);
      eval.check(brute_force_payoff(g, p) == evaluate_profile(g, p).root, "evaluation");
      for (Player dev : {Player::One, Player::Two}) {
        br.check(brute_force_best_response(g, p.of(other(dev)), dev) == best_response(g, p.of(other(dev)), dev).value,
                 "best response");
        const double dp = solve_value_process(g, dev).value[0];
        const double bf = brute_force_zero_sum_value(g, dev);
        worst_value = std::max(worst_value, std::abs(dp - bf));
        value.check(std::abs(dp - bf) <= 1e-12 * g.range(), "root value");
      }
      try {
        classify(g, solve_value_process(g, Player::One), solve_value_process(g, Player::Two));
        part5.check(true, "");
      } catch (const ModelViolation&) {
        part5.check(false, "part 5 on a small tree");
      }
    }
  }
  int i = 0;
  for (const Game& g : main_corpus()) {
    try {
      classify(g, solve_value_process(g, Player::One), solve_value_process(g, Player::Two));
      part5.check(true, "");
    } catch (const ModelViolation&) {
      part5.check(false, "part 5 at instance " + std::to_string(i));
    }
    ++i;
  }
  std::ostringstream os;
  os << shapes.size() << " shapes x 3 dressings; evaluation " << eval.summary() << "; best response " << br.summary()
     << "; root value worst |diff| " << worst_value << ", " << value.summary() << "; part 5 " << part5.summary();
  return {eval.ok() && br.ok() && value.ok() && part5.ok(), os.str()};
}

Verdict criterion7() {
  const std::vector<Game> games = corpus(50, 400000, 5, 3);
  Tally t;
  Gen gen(7007);
  double worst_v = 0.0;
  double worst_gap = 0.0;
  int i = 0;
  for (const Game& g : games) {
    const double r = g.range();
    const ValueProcess base1 = solve_value_process(g, Player::One);
    const ValueProcess base2 = solve_value_process(g, Player::Two);
    const GapPair base_gaps = construct(g, 0.05).gaps;
    for (int k = 0; k < 5; ++k) {
      const NodeId at = static_cast<NodeId>(gen.integer(0, static_cast<int>(g.tree.size()) - 1));
      const FrameSplit s = split_frame(g, at);
      const ValueProcess s1 = solve_value_process(s.game, Player::One);
      const ValueProcess s2 = solve_value_process(s.game, Player::Two);
      for (NodeId n = 0; n < g.tree.size(); ++n) {
        const double d = std::max(std::abs(s1.value[n] - base1.value[n]), std::abs(s2.value[n] - base2.value[n]));
        worst_v = std::max(worst_v, d);
        t.check(d < 1e-9 * r, "value at " + where(i, n));
      }
      const GapPair split_gaps = construct(s.game, 0.05).gaps;
      for (Player p : {Player::One, Player::Two}) {
        const double d = std::abs(split_gaps.of(p).gap - base_gaps.of(p).gap);
        worst_gap = std::max(worst_gap, d);
        t.check(d < 1e-6 * r, "gap at instance " + std::to_string(i) + " split " + std::to_string(at));
      }
    }
    ++i;
  }
  std::ostringstream os;
  os << games.size() << " instances x 5 splits; worst value change " << worst_v << ", worst gap change " << worst_gap
     << "; " << t.summary();
  return {t.ok(), os.str()};
}

Verdict criterion8() {
  Tally t;
  double worst = 0.0;
  int i = 0;
  for (const Game& g : main_corpus()) {
    const double r = g.range();
    for (Player victim : {Player::One, Player::Two}) {
      const ValueProcess v = solve_value_process(g, victim);
      for (NodeId start = 0; start < g.tree.size(); ++start) {
        const Strategy s = punishment_strategy(g, other(victim), start, v);
        const double d = std::abs(best_response(g, s, victim).value[start] - v.value[start]);
        worst = std::max(worst, d);
        t.check(d <= 1e-9 * r, where(i, start));
      }
    }
    ++i;
  }
  std::ostringstream os;
  os << main_corpus().size() << " instances, worst |BR - v| " << worst << "; " << t.summary();
  return {t.ok(), os.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s (%s)\n", k + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
