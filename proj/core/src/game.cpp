#include "dynkin/game.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "dynkin/error.hpp"

namespace dynkin {

EventTree::EventTree() : links_{Link{}}, depth_{0}, children_(1), top_down_{0} {}

EventTree::EventTree(std::vector<Link> links) : links_(std::move(links)) {
  const std::size_t n = links_.size();
  if (n == 0) throw SchemaError("event tree has no nodes");
  children_.assign(n, {});
  depth_.assign(n, -1);
  std::optional<NodeId> root;
  for (NodeId i = 0; i < n; ++i) {
    const auto& link = links_[i];
    if (!link.parent) {
      if (root) {
        std::ostringstream os;
        os << "node " << i << ": second root (node " << *root << " is already the root)";
        throw SchemaError(os.str());
      }
      root = i;
      continue;
    }
    if (*link.parent >= n || *link.parent == i) {
      std::ostringstream os;
      os << "node " << i << ": invalid parent " << *link.parent;
      throw SchemaError(os.str());
    }
    children_[*link.parent].push_back({i, link.prob});
  }
  if (!root) throw SchemaError("event tree has no root");
  root_ = *root;
  links_[root_].prob = 1.0;

  std::deque<NodeId> queue{root_};
  depth_[root_] = 0;
  while (!queue.empty()) {
    const NodeId cur = queue.front();
    queue.pop_front();
    top_down_.push_back(cur);
    horizon_ = std::max(horizon_, depth_[cur]);
    for (const Child& c : children_[cur]) {
      depth_[c.node] = depth_[cur] + 1;
      queue.push_back(c.node);
    }
  }
  if (top_down_.size() != n) {
    for (NodeId i = 0; i < n; ++i) {
      if (depth_[i] < 0) {
        std::ostringstream os;
        os << "node " << i << ": not reachable from the root (cycle)";
        throw SchemaError(os.str());
      }
    }
  }
}

NodeId EventTree::add_child(NodeId parent, double prob) {
  if (parent >= size()) throw PreconditionError("add_child: unknown parent");
  const NodeId id = size();
  links_.push_back({parent, prob});
  depth_.push_back(depth_[parent] + 1);
  children_.emplace_back();
  children_[parent].push_back({id, prob});
  top_down_.push_back(id);
  horizon_ = std::max(horizon_, depth_[id]);
  return id;
}

std::vector<NodeId> EventTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId n : top_down_) {
    if (is_leaf(n)) out.push_back(n);
  }
  return out;
}

std::vector<NodeId> EventTree::path_to(NodeId n) const {
  std::vector<NodeId> path;
  for (std::optional<NodeId> cur = n; cur; cur = links_.at(*cur).parent) path.push_back(*cur);
  std::reverse(path.begin(), path.end());
  return path;
}

bool EventTree::is_ancestor_or_self(NodeId ancestor, NodeId n) const {
  for (std::optional<NodeId> cur = n; cur; cur = links_.at(*cur).parent) {
    if (*cur == ancestor) return true;
  }
  return false;
}

std::vector<NodeId> EventTree::subtree(NodeId n) const {
  std::vector<NodeId> out{n};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Child& c : children_.at(out[i])) out.push_back(c.node);
  }
  return out;
}

bool operator==(const EventTree& a, const EventTree& b) {
  if (a.links_.size() != b.links_.size()) return false;
  for (std::size_t i = 0; i < a.links_.size(); ++i) {
    if (a.links_[i].parent != b.links_[i].parent || a.links_[i].prob != b.links_[i].prob) return false;
  }
  return true;
}

double Game::range() const {
  double r = 0.0;
  for (NodeId n = 0; n < payoffs.size(); ++n) {
    for (Player p : {Player::One, Player::Two}) {
      const PlayerPayoff& q = payoffs[n].of(p);
      r = std::max({r, std::abs(q.x), std::abs(q.y), std::abs(q.z)});
      if (n < tree.size() && tree.is_leaf(n)) r = std::max(r, std::abs(q.xi));
    }
  }
  return r;
}

double Game::scale() const { return std::max(1.0, range()); }

NodeId Game::add_child(NodeId parent, double prob, NodePayoff payoff) {
  const NodeId id = tree.add_child(parent, prob);
  payoffs.nodes.resize(tree.size());
  payoffs[id] = payoff;
  return id;
}

std::string to_string(StageAction a) {
  switch (a) {
    case StageAction::Atom: return "Atom";
    case StageAction::Uniform: return "Uniform";
    case StageAction::Wait: return "Wait";
    case StageAction::Early: return "Early";
    case StageAction::Late: return "Late";
  }
  return "?";
}

StageMix StageMix::pure(StageAction a) {
  switch (a) {
    case StageAction::Atom: return {1.0, 0.0, 0.0};
    case StageAction::Uniform: return {0.0, 1.0, 0.0};
    case StageAction::Wait: return {0.0, 0.0, 1.0};
    default: throw PreconditionError("StageMix::pure: " + to_string(a) + " is a deviator-only action");
  }
}

double StageMix::prob(StageAction a) const {
  switch (a) {
    case StageAction::Atom: return atom;
    case StageAction::Uniform: return uniform;
    case StageAction::Wait: return wait;
    default: return 0.0;
  }
}

bool StageMix::is_pure() const {
  auto binary = [](double p) { return p == 0.0 || p == 1.0; };
  return binary(atom) && binary(uniform) && binary(wait);
}

std::vector<Diagnostic> validate_instance(const Game& game) {
  std::vector<Diagnostic> out;
  const EventTree& tree = game.tree;
  auto report = [&](DiagnosticKind kind, NodeId n, const std::string& what) {
    std::ostringstream os;
    os << "node " << n << ": " << what;
    out.push_back({kind, n, os.str()});
  };
  if (game.payoffs.size() != tree.size()) {
    std::ostringstream os;
    os << "payoff table has " << game.payoffs.size() << " entries for " << tree.size() << " nodes";
    out.push_back({DiagnosticKind::SizeMismatch, tree.root(), os.str()});
    return out;
  }
  for (NodeId n : tree.top_down()) {
    const auto kids = tree.children(n);
    if (kids.empty()) {
      if (tree.depth(n) != tree.horizon()) {
        std::ostringstream os;
        os << "non-uniform horizon (leaf at depth " << tree.depth(n) << ", horizon " << tree.horizon()
           << ")";
        report(DiagnosticKind::NonUniformHorizon, n, os.str());
      }
    } else {
      double sum = 0.0;
      for (const Child& c : kids) {
        if (!(c.prob > 0.0 && c.prob <= 1.0)) {
          std::ostringstream os;
          os << "probability " << c.prob << " of child " << c.node << " outside (0,1]";
          report(DiagnosticKind::ProbabilityRange, c.node, os.str());
        }
        sum += c.prob;
      }
      if (!(std::abs(sum - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "child probabilities sum to " << sum << ", not 1";
        report(DiagnosticKind::ProbabilitySum, n, os.str());
      }
    }
    const NodePayoff& q = game.payoffs[n];
    const bool leaf = kids.empty();
    for (const PlayerPayoff* p : {&q.p1, &q.p2}) {
      if (!std::isfinite(p->x) || !std::isfinite(p->y) || !std::isfinite(p->z) ||
          (leaf && !std::isfinite(p->xi))) {
        report(DiagnosticKind::NonFinite, n, "non-finite payoff");
        break;
      }
    }
  }
  return out;
}

void validate_profile(const Game& game, const BehavioralProfile& profile) {
  for (Player p : {Player::One, Player::Two}) {
    const Strategy& s = profile.of(p);
    if (s.size() != game.tree.size()) {
      std::ostringstream os;
      os << "player " << number_of(p) << " strategy covers " << s.size() << " nodes, tree has "
         << game.tree.size();
      throw PreconditionError(os.str());
    }
    for (NodeId n = 0; n < s.size(); ++n) {
      const StageMix& m = s[n];
      const bool ok = m.atom >= 0.0 && m.uniform >= 0.0 && m.wait >= 0.0 &&
                      std::abs(m.atom + m.uniform + m.wait - 1.0) <= 1e-12;
      if (!ok) {
        std::ostringstream os;
        os << "player " << number_of(p) << " node " << n << ": stage probabilities are not a distribution";
        throw PreconditionError(os.str());
      }
    }
  }
}

}  // namespace dynkin
