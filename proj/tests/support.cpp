#include "support.hpp"

#include <map>

namespace dynkin::testing {
namespace {

struct Shape {
  int size = 1;
  std::vector<int> children;  // indices into the same-height-minus-one list
};

// shapes[h] = all canonical shapes of height h with at most max_nodes nodes.
void extend(const std::vector<Shape>& lower, int budget, std::size_t min_index, Shape& cur, std::vector<Shape>& out) {
  if (!cur.children.empty()) out.push_back(cur);
  for (std::size_t i = min_index; i < lower.size(); ++i) {
    if (lower[i].size > budget) continue;
    cur.children.push_back(static_cast<int>(i));
    cur.size += lower[i].size;
    extend(lower, budget - lower[i].size, i, cur, out);
    cur.size -= lower[i].size;
    cur.children.pop_back();
  }
}

void emit(const std::vector<std::vector<Shape>>& by_height, int height, int index,
          std::optional<NodeId> parent, std::vector<EventTree::Link>& links) {
  const NodeId id = links.size();
  links.push_back({parent, 1.0});
  if (height == 0) return;
  for (int c : by_height[height][index].children) emit(by_height, height - 1, c, id, links);
}

}  // namespace

std::vector<std::vector<EventTree::Link>> uniform_shapes(int max_nodes) {
  std::vector<std::vector<Shape>> by_height{{Shape{}}};
  for (int h = 1; h < max_nodes; ++h) {
    std::vector<Shape> level;
    Shape cur;
    extend(by_height[h - 1], max_nodes - 1, 0, cur, level);
    if (level.empty()) break;
    by_height.push_back(std::move(level));
  }
  std::vector<std::vector<EventTree::Link>> out;
  for (std::size_t h = 0; h < by_height.size(); ++h) {
    for (std::size_t i = 0; i < by_height[h].size(); ++i) {
      std::vector<EventTree::Link> links;
      emit(by_height, static_cast<int>(h), static_cast<int>(i), std::nullopt, links);
      out.push_back(std::move(links));
    }
  }
  return out;
}

Game dress(const std::vector<EventTree::Link>& shape, Gen& gen) {
  std::vector<EventTree::Link> links = shape;
  std::map<NodeId, std::vector<NodeId>> kids;
  for (NodeId n = 0; n < links.size(); ++n) {
    if (links[n].parent) kids[*links[n].parent].push_back(n);
  }
  for (auto& [parent, ch] : kids) {
    // A random composition of 16 into |ch| positive parts.
    const int k = static_cast<int>(ch.size());
    std::vector<int> parts(k, 1);
    for (int r = 16 - k; r > 0; --r) ++parts[gen.integer(0, k - 1)];
    for (int i = 0; i < k; ++i) links[ch[i]].prob = parts[i] / 16.0;
  }
  Game g;
  g.tree = EventTree(std::move(links));
  g.payoffs.nodes.resize(g.tree.size());
  for (NodeId n = 0; n < g.tree.size(); ++n) {
    const bool leaf = g.tree.is_leaf(n);
    g.payoffs[n] = {{gen.dyadic(), gen.dyadic(), gen.dyadic(), leaf ? gen.dyadic() : 0.0},
                    {gen.dyadic(), gen.dyadic(), gen.dyadic(), leaf ? gen.dyadic() : 0.0}};
  }
  return g;
}

Game random_game(Gen& gen, int max_depth, int max_branching, bool dyadic) {
  Game g;
  std::vector<NodeId> frontier{g.tree.root()};
  const int depth = gen.integer(0, max_depth);
  for (int d = 0; d < depth; ++d) {
    std::vector<NodeId> next;
    for (NodeId p : frontier) {
      const int k = gen.integer(1, max_branching);
      for (int i = 0; i < k; ++i) next.push_back(g.add_child(p, 1.0 / k));
    }
    frontier = std::move(next);
  }
  const auto draw = [&] { return dyadic ? gen.dyadic() : gen.real(-2.0, 2.0); };
  for (NodeId n = 0; n < g.tree.size(); ++n) {
    const bool leaf = g.tree.is_leaf(n);
    g.payoffs[n] = {{draw(), draw(), draw(), leaf ? draw() : 0.0}, {draw(), draw(), draw(), leaf ? draw() : 0.0}};
  }
  return g;
}

}  // namespace dynkin::testing
