#include "dynkin/brute_force.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>

#include "dynkin/error.hpp"

namespace dynkin {
namespace {

void require_small(const Game& game) {
  if (game.tree.size() > kMaxBruteForceNodes) {
    throw PreconditionError("brute force oracle refuses trees with more than " +
                            std::to_string(kMaxBruteForceNodes) + " nodes");
  }
}

// A stop at position `pos` along a path (0 = the path's first node).
struct Stop {
  std::size_t pos;
  StageAction action;
};

struct WeightedStop {
  Stop stop;
  double prob;
};

// Distribution of one player's stop along one path; the rest is "never".
struct PathLaw {
  std::vector<WeightedStop> stops;
  double never = 0.0;
};

using Path = std::vector<NodeId>;

Path path_from(const EventTree& tree, NodeId start, NodeId leaf) {
  Path full = tree.path_to(leaf);
  const auto it = std::find(full.begin(), full.end(), start);
  return Path(it, full.end());
}

double path_prob(const EventTree& tree, const Path& path) {
  double p = 1.0;
  for (std::size_t k = 1; k < path.size(); ++k) p *= tree.prob(path[k]);
  return p;
}

// Sub-frame position of a stop; Uniform is a random interior time.
int phase(StageAction a) {
  switch (a) {
    case StageAction::Atom: return 0;
    case StageAction::Early: return 1;
    case StageAction::Uniform: return 2;
    case StageAction::Late: return 3;
    default: return 4;
  }
}

PayoffPair first(const NodePayoff& q, Player p) {
  return p == Player::One ? PayoffPair{q.p1.x, q.p2.x} : PayoffPair{q.p1.y, q.p2.y};
}

PayoffPair both(const NodePayoff& q) { return {q.p1.z, q.p2.z}; }

// Who stops first, read straight off the two stop times.
PayoffPair resolve(const Game& game, const Path& path, std::optional<Stop> s1, std::optional<Stop> s2,
                   InteriorOrder order) {
  if (!s1 && !s2) {
    const NodePayoff& leaf = game.payoffs[path.back()];
    return {leaf.p1.xi, leaf.p2.xi};
  }
  if (!s2 || (s1 && s1->pos < s2->pos)) return first(game.payoffs[path[s1->pos]], Player::One);
  if (!s1 || s2->pos < s1->pos) return first(game.payoffs[path[s2->pos]], Player::Two);

  const NodePayoff& q = game.payoffs[path[s1->pos]];
  const int f1 = phase(s1->action);
  const int f2 = phase(s2->action);
  if (f1 < f2) return first(q, Player::One);
  if (f2 < f1) return first(q, Player::Two);
  switch (s1->action) {
    case StageAction::Atom:
      return both(q);
    case StageAction::Uniform:
      return 0.5 * first(q, Player::One) + 0.5 * first(q, Player::Two);
    default:
      switch (order) {
        case InteriorOrder::PlayerOneFirst: return first(q, Player::One);
        case InteriorOrder::PlayerTwoFirst: return first(q, Player::Two);
        case InteriorOrder::Simultaneous: return both(q);
      }
  }
  return {};
}

PathLaw behavioral_law(const Strategy& s, const Path& path) {
  PathLaw law;
  double alive = 1.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const StageMix& m = s[path[k]];
    if (m.atom > 0.0) law.stops.push_back({{k, StageAction::Atom}, alive * m.atom});
    if (m.uniform > 0.0) law.stops.push_back({{k, StageAction::Uniform}, alive * m.uniform});
    alive *= m.wait;
  }
  law.never = alive;
  return law;
}

std::optional<Stop> stop_on(const PureRule& rule, const Path& path) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (rule[path[k]] != StageAction::Wait) return Stop{k, rule[path[k]]};
  }
  return std::nullopt;
}

PathLaw mixture_law(const std::vector<PureRule>& rules, const std::vector<double>& weights, const Path& path) {
  PathLaw law;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (weights[r] == 0.0) continue;
    if (auto s = stop_on(rules[r], path)) {
      law.stops.push_back({*s, weights[r]});
    } else {
      law.never += weights[r];
    }
  }
  return law;
}

double against_law(const Game& game, const Path& path, std::optional<Stop> own, const PathLaw& law, Player player,
                   Player payee, InteriorOrder order) {
  const auto pair = [&](std::optional<Stop> o) {
    return player == Player::One ? resolve(game, path, own, o, order) : resolve(game, path, o, own, order);
  };
  double v = 0.0;
  for (const WeightedStop& w : law.stops) v += w.prob * pair(w.stop).of(payee);
  if (law.never > 0.0) v += law.never * pair(std::nullopt).of(payee);
  return v;
}

// Payoff to `payee` of each stop point of `player`, weighted by the path
// probabilities below it, against an opponent described per path.
class StopTable {
 public:
  template <class LawFn>
  StopTable(const Game& game, NodeId start, Player player, Player payee, const std::vector<StageAction>& actions,
            LawFn&& law_of, InteriorOrder order)
      : table_(game.tree.size()) {
    const EventTree& tree = game.tree;
    for (NodeId leaf : tree.subtree(start)) {
      if (!tree.is_leaf(leaf)) continue;
      const Path path = path_from(tree, start, leaf);
      const double p = path_prob(tree, path);
      const PathLaw law = law_of(path);
      for (std::size_t k = 0; k < path.size(); ++k) {
        for (StageAction a : actions) {
          table_[path[k]][slot(a)] += p * against_law(game, path, Stop{k, a}, law, player, payee, order);
        }
      }
      table_[leaf][slot(StageAction::Wait)] += p * against_law(game, path, std::nullopt, law, player, payee, order);
    }
  }

  double at(NodeId n, StageAction a) const { return table_[n][slot(a)]; }

  double total(const StopSet& stops) const {
    double v = 0.0;
    for (const auto& [n, a] : stops) v += at(n, a);
    return v;
  }

 private:
  static std::size_t slot(StageAction a) { return static_cast<std::size_t>(a); }

  std::vector<std::array<double, 5>> table_;
};

}  // namespace

std::vector<StopSet> enumerate_stopping_rules(const Game& game, NodeId start, const std::vector<StageAction>& actions) {
  const EventTree& tree = game.tree;
  std::vector<StopSet> out;
  for (StageAction a : actions) out.push_back({{start, a}});
  if (tree.is_leaf(start)) {
    out.push_back({{start, StageAction::Wait}});
    return out;
  }
  std::vector<StopSet> combos{{}};
  for (const Child& c : tree.children(start)) {
    const std::vector<StopSet> sub = enumerate_stopping_rules(game, c.node, actions);
    std::vector<StopSet> next;
    next.reserve(combos.size() * sub.size());
    for (const StopSet& head : combos) {
      for (const StopSet& tail : sub) {
        StopSet s = head;
        s.insert(s.end(), tail.begin(), tail.end());
        next.push_back(std::move(s));
      }
    }
    combos = std::move(next);
  }
  out.insert(out.end(), combos.begin(), combos.end());
  return out;
}

PureRule to_rule(const Game& game, const StopSet& stops) {
  PureRule rule(game.tree.size(), StageAction::Wait);
  for (const auto& [n, a] : stops) rule.at(n) = a;
  return rule;
}

PayoffPair brute_force_pure_pair(const Game& game, const PureRule& rule1, const PureRule& rule2,
                                 InteriorOrder order) {
  require_small(game);
  const EventTree& tree = game.tree;
  if (rule1.size() != tree.size() || rule2.size() != tree.size()) {
    throw PreconditionError("brute_force_pure_pair: rule size mismatch");
  }
  PayoffPair out;
  for (NodeId leaf : tree.leaves()) {
    const Path path = tree.path_to(leaf);
    out = out + path_prob(tree, path) * resolve(game, path, stop_on(rule1, path), stop_on(rule2, path), order);
  }
  return out;
}

PayoffPair brute_force_payoff(const Game& game, const BehavioralProfile& profile) {
  require_small(game);
  validate_profile(game, profile);
  const EventTree& tree = game.tree;
  PayoffPair out;
  for (NodeId leaf : tree.leaves()) {
    const Path path = tree.path_to(leaf);
    const PathLaw law1 = behavioral_law(profile.player1, path);
    const PathLaw law2 = behavioral_law(profile.player2, path);
    PayoffPair sum;
    for (const WeightedStop& a : law1.stops) {
      for (const WeightedStop& b : law2.stops) {
        sum = sum + (a.prob * b.prob) * resolve(game, path, a.stop, b.stop, InteriorOrder::PlayerOneFirst);
      }
      sum = sum + (a.prob * law2.never) * resolve(game, path, a.stop, std::nullopt, InteriorOrder::PlayerOneFirst);
    }
    for (const WeightedStop& b : law2.stops) {
      sum = sum + (law1.never * b.prob) * resolve(game, path, std::nullopt, b.stop, InteriorOrder::PlayerOneFirst);
    }
    sum = sum + (law1.never * law2.never) * resolve(game, path, std::nullopt, std::nullopt,
                                                    InteriorOrder::PlayerOneFirst);
    out = out + path_prob(tree, path) * sum;
  }
  return out;
}

std::vector<double> brute_force_best_response(const Game& game, const Strategy& opponent, Player deviator,
                                              InteriorOrder order) {
  require_small(game);
  if (opponent.size() != game.tree.size()) throw PreconditionError("brute_force_best_response: size mismatch");
  const std::vector<StageAction> actions{StageAction::Atom, StageAction::Early, StageAction::Late};
  std::vector<double> out(game.tree.size());
  for (NodeId start = 0; start < game.tree.size(); ++start) {
    const StopTable table(
        game, start, deviator, deviator, actions, [&](const Path& p) { return behavioral_law(opponent, p); }, order);
    double best = -std::numeric_limits<double>::infinity();
    for (const StopSet& s : enumerate_stopping_rules(game, start, actions)) best = std::max(best, table.total(s));
    out[start] = best;
  }
  return out;
}

double brute_force_zero_sum_value(const Game& game, Player player) {
  require_small(game);
  const NodeId root = game.tree.root();
  const Player opponent = other(player);
  const std::vector<StageAction> row_actions{StageAction::Atom, StageAction::Uniform};
  const std::vector<StageAction> col_actions{StageAction::Atom, StageAction::Early, StageAction::Late};
  const std::vector<StopSet> all_rows = enumerate_stopping_rules(game, root, row_actions);
  const std::vector<StopSet> all_cols = enumerate_stopping_rules(game, root, col_actions);
  const double eps = 1e-12 * game.scale();

  std::vector<PureRule> rows{PureRule(game.tree.size(), StageAction::Wait)};
  std::vector<PureRule> cols{PureRule(game.tree.size(), StageAction::Wait)};
  std::set<PureRule> seen_rows(rows.begin(), rows.end());
  std::set<PureRule> seen_cols(cols.begin(), cols.end());

  const auto entry = [&](const PureRule& r, const PureRule& c) {
    const PayoffPair g = player == Player::One ? brute_force_pure_pair(game, r, c) : brute_force_pure_pair(game, c, r);
    return g.of(player);
  };

  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<std::vector<double>> m(rows.size(), std::vector<double>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = entry(rows[i], cols[j]);
    }
    const MatrixGameSolution sol = solve_matrix_game(m);

    const StopTable col_table(
        game, root, opponent, player, col_actions, [&](const Path& p) { return mixture_law(rows, sol.row, p); },
        InteriorOrder::PlayerOneFirst);
    const StopSet* best_col = nullptr;
    double low = std::numeric_limits<double>::infinity();
    for (const StopSet& s : all_cols) {
      const double v = col_table.total(s);
      if (v < low) {
        low = v;
        best_col = &s;
      }
    }
    const StopTable row_table(
        game, root, player, player, row_actions, [&](const Path& p) { return mixture_law(cols, sol.col, p); },
        InteriorOrder::PlayerOneFirst);
    const StopSet* best_row = nullptr;
    double high = -std::numeric_limits<double>::infinity();
    for (const StopSet& s : all_rows) {
      const double v = row_table.total(s);
      if (v > high) {
        high = v;
        best_row = &s;
      }
    }

    bool grew = false;
    if (low < sol.value - eps) {
      PureRule c = to_rule(game, *best_col);
      if (seen_cols.insert(c).second) {
        cols.push_back(std::move(c));
        grew = true;
      }
    }
    if (high > sol.value + eps) {
      PureRule r = to_rule(game, *best_row);
      if (seen_rows.insert(r).second) {
        rows.push_back(std::move(r));
        grew = true;
      }
    }
    if (!grew) return sol.value;
  }
  throw ModelViolation("brute_force_zero_sum_value: rule generation did not converge");
}

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& a) {
  const std::size_t m = a.size();
  if (m == 0 || a.front().empty()) throw PreconditionError("solve_matrix_game: empty matrix");
  const std::size_t k = a.front().size();
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : a) {
    if (row.size() != k) throw PreconditionError("solve_matrix_game: ragged matrix");
    for (double v : row) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;

  // max sum(y) s.t. (A + shift) y <= 1, y >= 0; slack columns k..k+m-1.
  const std::size_t width = k + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(width + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[i][j] = a[i][j] + shift;
    t[i][k + i] = 1.0;
    t[i][width] = 1.0;
  }
  std::vector<double> reduced(width, 0.0);
  for (std::size_t j = 0; j < k; ++j) reduced[j] = 1.0;
  double objective = 0.0;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

  constexpr double kPivotEps = 1e-12;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > kPivotEps) {
        const double ratio = t[i][width] / t[i][enter];
        if (ratio < best_ratio || (ratio == best_ratio && leave != m && basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) throw ModelViolation("solve_matrix_game: unbounded program");
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * t[leave][j];
    }
    const double f = reduced[enter];
    for (std::size_t j = 0; j < width; ++j) reduced[j] -= f * t[leave][j];
    objective += f * t[leave][width];
    basis[leave] = enter;
  }

  MatrixGameSolution out;
  out.col.assign(k, 0.0);
  out.row.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < k) out.col[basis[i]] = t[i][width];
  }
  for (std::size_t i = 0; i < m; ++i) out.row[i] = std::max(0.0, -reduced[k + i]);
  double ysum = 0.0;
  double usum = 0.0;
  for (double v : out.col) ysum += v;
  for (double v : out.row) usum += v;
  for (double& v : out.col) v /= ysum;
  for (double& v : out.row) v /= usum;
  out.value = 1.0 / objective - shift;
  return out;
}

}  // namespace dynkin
