#include "dynkin/equilibrium.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "dynkin/error.hpp"
#include "dynkin/payoff.hpp"

namespace dynkin {

std::string to_string(Case c) {
  switch (c) {
    case Case::A1: return "A1";
    case Case::A2: return "A2";
    case Case::A3: return "A3";
    case Case::A4: return "A4";
    case Case::M1: return "M1";
    case Case::M2: return "M2";
    case Case::M3: return "M3";
    case Case::M4: return "M4";
    case Case::A6: return "A6";
    case Case::A61: return "A61";
    case Case::A62: return "A62";
    case Case::A63: return "A63";
    case Case::A64: return "A64";
    case Case::A65: return "A65";
    case Case::A66: return "A66";
  }
  return "?";
}

Case mirror(Case c) {
  switch (c) {
    case Case::A1: return Case::M1;
    case Case::A2: return Case::M2;
    case Case::A3: return Case::M3;
    case Case::A4: return Case::M4;
    case Case::M1: return Case::A1;
    case Case::M2: return Case::A2;
    case Case::M3: return Case::A3;
    case Case::M4: return Case::A4;
    case Case::A61: return Case::A62;
    case Case::A62: return Case::A61;
    case Case::A64: return Case::A65;
    case Case::A65: return Case::A64;
    default: return c;
  }
}

namespace {

// Root quantities the classification reads.
struct RootView {
  double x1, y1, z1, v1;
  double x2, y2, z2, v2;

  RootView swapped() const { return {y2, x2, z2, v2, y1, x1, z1, v1}; }
};

struct Compare {
  double slack;
  bool geq(double a, double b) const { return a >= b - slack; }
  bool gt(double a, double b) const { return a - b > slack; }
};

// Parts 1-4 on {X1 >= v1}; nullopt when the chain falls through to Part 5.
std::optional<Case> first_stopper_chain(const RootView& r, const Compare& cmp) {
  if (cmp.geq(r.x2, r.z2)) return Case::A1;
  if (cmp.geq(r.z1, r.y1)) return Case::A2;
  if (cmp.geq(r.y2, r.v2)) return Case::A3;
  if (cmp.gt(r.x2, r.y2)) return Case::A4;
  return std::nullopt;
}

void require_pair(const Game& game, const ValueProcess& v1, const ValueProcess& v2) {
  if (v1.player != Player::One || v2.player != Player::Two || v1.value.size() != game.tree.size() ||
      v2.value.size() != game.tree.size()) {
    throw PreconditionError("classification needs both players' value processes for this game");
  }
}

}  // namespace

Case classify(const Game& game, const ValueProcess& v1, const ValueProcess& v2, double tol) {
  require_pair(game, v1, v2);
  const NodeId r = game.tree.root();
  const NodePayoff& q = game.payoffs[r];
  const RootView view{q.p1.x, q.p1.y, q.p1.z, v1.value[r], q.p2.x, q.p2.y, q.p2.z, v2.value[r]};
  const Compare cmp{tol * game.scale()};

  if (cmp.geq(view.x1, view.v1)) {
    if (auto c = first_stopper_chain(view, cmp)) return *c;
    throw ModelViolation("classification reached Part 5 (X1 >= v1 but no part applies), which has probability 0");
  }
  if (cmp.geq(view.y2, view.v2)) {
    if (auto c = first_stopper_chain(view.swapped(), cmp)) return mirror(*c);
    throw ModelViolation("classification reached mirrored Part 5 (Y2 >= v2 but no part applies)");
  }
  return Case::A6;
}

std::vector<CaseLabel> classify_part6(const Game& game, const ValueProcess& v1, const ValueProcess& v2, double eta,
                                      double tol) {
  require_pair(game, v1, v2);
  if (!(eta > 0.0)) throw PreconditionError("eta must be positive");
  const EventTree& tree = game.tree;
  const Compare cmp{tol * game.scale()};
  std::vector<CaseLabel> out;
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    const bool hit1 = hitting_condition(game, v1, n, eta, tol);
    const bool hit2 = hitting_condition(game, v2, n, eta, tol);
    const NodePayoff& q = game.payoffs[n];
    if (hit1 && !hit2) {
      out.push_back({Case::A61, n});
    } else if (hit2 && !hit1) {
      out.push_back({Case::A62, n});
    } else if (hit1 && hit2) {
      if (cmp.gt(q.p1.y, q.p1.z)) {
        out.push_back({Case::A64, n});
      } else if (cmp.gt(q.p2.x, q.p2.z)) {
        out.push_back({Case::A65, n});
      } else {
        out.push_back({Case::A66, n});
      }
    } else if (tree.is_leaf(n)) {
      out.push_back({Case::A63, n});
    } else {
      for (const Child& c : tree.children(n)) stack.push_back(c.node);
    }
  }
  std::sort(out.begin(), out.end(), [](const CaseLabel& a, const CaseLabel& b) { return a.node < b.node; });
  return out;
}

namespace {

EquilibriumReport mirrored(EquilibriumReport r) {
  r.root_case = mirror(r.root_case);
  for (CaseLabel& l : r.trace) l.label = mirror(l.label);
  r.split.game = mirror(r.split.game);
  r.profile = mirror(r.profile);
  r.payoffs = mirror(r.payoffs);
  std::swap(r.gaps.player1, r.gaps.player2);
  r.gaps.player1.player = Player::One;
  r.gaps.player2.player = Player::Two;
  return r;
}

class Builder {
 public:
  Builder(const Game& game, double eta, double tol, bool pure) : game_(game), eta_(eta), tol_(tol), pure_(pure) {}

  EquilibriumReport run() {
    if (!(eta_ > 0.0)) throw PreconditionError("eta must be positive");
    const std::vector<Diagnostic> diags = validate_instance(game_);
    if (!diags.empty()) throw PreconditionError("invalid instance: " + diags.front().message);
    if (pure_) {
      require_convexity(game_, Player::One, tol_);
      require_convexity(game_, Player::Two, tol_);
    }

    v1_ = solve_value_process(game_, Player::One, tol_);
    v2_ = solve_value_process(game_, Player::Two, tol_);
    const Case root_case = classify(game_, v1_, v2_, tol_);
    if (root_case == Case::M1 || root_case == Case::M2 || root_case == Case::M3 || root_case == Case::M4) {
      return mirrored(Builder(mirror(game_), eta_, tol_, pure_).run());
    }

    EquilibriumReport report;
    report.root_case = root_case;
    report.eta = eta_;
    report.tol = tol_;
    report.pure = pure_;
    const NodeId root = game_.tree.root();
    report.trace.push_back({root_case, root});

    std::vector<NodeId> to_split{root};
    if (root_case == Case::A6) {
      for (const CaseLabel& l : classify_part6(game_, v1_, v2_, eta_, tol_)) {
        report.trace.push_back(l);
        if (l.label != Case::A63) to_split.push_back(l.node);
      }
    }
    report.split = split_frames(game_, to_split);
    prepare_punishments(report.split.game);

    BehavioralProfile& profile = report.profile;
    profile = BehavioralProfile(report.split.game.tree.size());
    const auto second = [&](NodeId n) { return *report.split.second_half[n]; };
    const StageAction delayed = pure_ ? StageAction::Atom : StageAction::Uniform;

    switch (root_case) {
      case Case::A1:
        set(profile, Player::One, root, StageAction::Atom);
        punish(profile, Player::Two, second(root));
        break;
      case Case::A2:
        set(profile, Player::One, root, StageAction::Atom);
        set(profile, Player::Two, root, StageAction::Atom);
        break;
      case Case::A3:
        set(profile, Player::Two, root, StageAction::Atom);
        punish(profile, Player::One, second(root));
        break;
      case Case::A4:
        set(profile, Player::One, root, delayed);
        punish(profile, Player::Two, second(root));
        break;
      case Case::A6:
        build_part6(report, profile);
        break;
      default:
        throw ModelViolation("unexpected root case " + to_string(root_case));
    }

    report.payoffs = evaluate_profile(report.split.game, profile).root;
    report.gaps = deviation_gap(report.split.game, profile);
    return report;
  }

 private:
  void build_part6(const EquilibriumReport& report, BehavioralProfile& profile) {
    const HittingTime mu1 = hitting_time(game_, v1_, eta_, tol_);
    const HittingTime mu2 = hitting_time(game_, v2_, eta_, tol_);
    const Strategy simple1 = pure_ ? pure_optimal_strategy(game_, v1_, mu1, tol_)
                                   : simple_optimal_strategy(game_, v1_, mu1, tol_);
    const Strategy simple2 = pure_ ? pure_optimal_strategy(game_, v2_, mu2, tol_)
                                   : simple_optimal_strategy(game_, v2_, mu2, tol_);
    for (std::size_t k = 1; k < report.trace.size(); ++k) {
      const CaseLabel& l = report.trace[k];
      const NodeId q = l.node;
      switch (l.label) {
        case Case::A61:
          if (joint_atom(simple1[q], game_.payoffs[q], Player::One)) {
            set(profile, Player::One, q, StageAction::Atom);
            set(profile, Player::Two, q, StageAction::Atom);
            break;
          }
          profile.player1[q] = simple1[q];
          punish(profile, Player::Two, *report.split.second_half[q]);
          break;
        case Case::A62:
          if (joint_atom(simple2[q], game_.payoffs[q], Player::Two)) {
            set(profile, Player::One, q, StageAction::Atom);
            set(profile, Player::Two, q, StageAction::Atom);
            break;
          }
          profile.player2[q] = simple2[q];
          punish(profile, Player::One, *report.split.second_half[q]);
          break;
        case Case::A63:
          break;
        case Case::A64:
          set(profile, Player::Two, q, StageAction::Atom);
          punish(profile, Player::One, *report.split.second_half[q]);
          break;
        case Case::A65:
          set(profile, Player::One, q, StageAction::Atom);
          punish(profile, Player::Two, *report.split.second_half[q]);
          break;
        case Case::A66:
          set(profile, Player::One, q, StageAction::Atom);
          set(profile, Player::Two, q, StageAction::Atom);
          break;
        default:
          throw ModelViolation("unexpected Part 6 subcase " + to_string(l.label));
      }
    }
  }

  // An atom can be matched by the opponent, who then collects Z instead of
  // the stop-first payoff. When the opponent prefers that and the stopper
  // does not mind it, both stop together.
  bool joint_atom(const StageMix& stop, const NodePayoff& q, Player stopper) const {
    if (!(stop.atom == 1.0)) return false;
    const double slack = tol_ * game_.scale();
    const ProtagonistView own = view(q, stopper);
    const ProtagonistView opp = view(q, other(stopper));
    return opp.both - opp.other_first > slack && own.both >= own.other_first - slack;
  }

  void prepare_punishments(const Game& split) {
    split_ = &split;
    if (pure_) {
      punish_by_one_ = make_punishment_game(split, Player::One, tol_);
      punish_by_two_ = make_punishment_game(split, Player::Two, tol_);
    } else {
      w1_ = solve_value_process(split, Player::One, tol_);
      w2_ = solve_value_process(split, Player::Two, tol_);
    }
  }

  static void set(BehavioralProfile& profile, Player p, NodeId n, StageAction a) {
    profile.of(p)[n] = StageMix::pure(a);
  }

  // The punisher's strategy on the subtree at `start`, other nodes untouched.
  void punish(BehavioralProfile& profile, Player punisher, NodeId start) const {
    const Strategy s =
        pure_ ? pure_punishment_strategy(punisher == Player::One ? *punish_by_one_ : *punish_by_two_, start, eta_, tol_)
              : punishment_strategy(*split_, punisher, start, punisher == Player::One ? w2_ : w1_);
    for (NodeId n : split_->tree.subtree(start)) profile.of(punisher)[n] = s[n];
  }

  const Game& game_;
  double eta_;
  double tol_;
  bool pure_;
  ValueProcess v1_, v2_;
  const Game* split_ = nullptr;
  ValueProcess w1_, w2_;
  std::optional<PunishmentGame> punish_by_one_, punish_by_two_;
};

}  // namespace

EquilibriumReport construct(const Game& game, double eta, double tol) {
  return Builder(game, eta, tol, false).run();
}

EquilibriumReport construct_pure(const Game& game, double eta, double tol) {
  return Builder(game, eta, tol, true).run();
}

}  // namespace dynkin
