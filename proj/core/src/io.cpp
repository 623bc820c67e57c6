#include "dynkin/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dynkin/error.hpp"
#include "json.hpp"

namespace dynkin {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // Keep doubles recognisable as such so a reload never turns -0.0 into 0.
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
      }
      os << '\n' << std::string(indent, ' ') << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const json& e : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << '\n' << pad;
        write(os, e, indent + 2);
      }
      if (!flat) os << '\n' << std::string(indent, ' ');
      os << ']';
      return;
    }
    case json::value_t::number_float:
      if (!std::isfinite(j.get<double>())) throw SchemaError("cannot write a non-finite number");
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string canonical(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

std::string where(std::size_t index, const std::optional<NodeId>& id, const std::string& field) {
  std::string s = "nodes[" + std::to_string(index) + "]";
  if (id) s += " (id " + std::to_string(*id) + ")";
  return s + "." + field;
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + ": missing");
  if (!it->is_number()) throw SchemaError(path + ": expected a number");
  return it->get<double>();
}

std::uint64_t index_at(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + ": missing");
  if (!it->is_number_unsigned()) throw SchemaError(path + ": expected a non-negative integer");
  return it->get<std::uint64_t>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

BehavioralProfile profile_from(const json& j, std::size_t nodes, const std::string& prefix) {
  if (!j.is_object()) throw SchemaError(prefix + ": expected an object");
  BehavioralProfile out(nodes);
  for (Player p : {Player::One, Player::Two}) {
    const std::string key = p == Player::One ? "player1" : "player2";
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(prefix + key + ": missing");
    if (!it->is_object()) throw SchemaError(prefix + key + ": expected an object");
    for (auto e = it->begin(); e != it->end(); ++e) {
      const std::string path = prefix + key + "." + e.key();
      std::size_t id = 0;
      const auto res = std::from_chars(e.key().data(), e.key().data() + e.key().size(), id);
      if (res.ec != std::errc() || res.ptr != e.key().data() + e.key().size()) {
        throw SchemaError(path + ": key is not a node id");
      }
      if (id >= nodes) throw SchemaError(path + ": no node " + std::to_string(id));
      const json& v = e.value();
      if (!v.is_array() || v.size() != 3 || !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
        throw SchemaError(path + ": expected [atom, uniform, wait] for node " + std::to_string(id));
      }
      out.of(p)[id] = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }
  }
  return out;
}

json profile_to(const BehavioralProfile& profile) {
  json out = json::object();
  for (Player p : {Player::One, Player::Two}) {
    json side = json::object();
    const Strategy& s = profile.of(p);
    for (NodeId n = 0; n < s.size(); ++n) side[std::to_string(n)] = json::array({s[n].atom, s[n].uniform, s[n].wait});
    out[p == Player::One ? "player1" : "player2"] = std::move(side);
  }
  return out;
}

json game_to(const Game& game) {
  const EventTree& tree = game.tree;
  json nodes = json::array();
  for (NodeId n = 0; n < tree.size(); ++n) {
    const NodePayoff& q = game.payoffs[n];
    json node = {{"id", n},           {"depth", tree.depth(n)}, {"prob", tree.prob(n)}, {"X1", q.p1.x},
                 {"Y1", q.p1.y},      {"Z1", q.p1.z},           {"X2", q.p2.x},          {"Y2", q.p2.y},
                 {"Z2", q.p2.z}};
    if (auto p = tree.parent(n)) node["parent"] = *p;
    if (tree.is_leaf(n)) {
      node["xi1"] = q.p1.xi;
      node["xi2"] = q.p2.xi;
    }
    nodes.push_back(std::move(node));
  }
  return {{"horizon", tree.horizon()}, {"nodes", std::move(nodes)}};
}

json report_to(const EquilibriumReport& r) {
  json trace = json::array();
  for (const CaseLabel& l : r.trace) trace.push_back({{"label", to_string(l.label)}, {"node", l.node}});
  json gaps = json::object();
  for (Player p : {Player::One, Player::Two}) {
    const GapCertificate& c = r.gaps.of(p);
    json actions = json::array();
    for (StageAction a : c.strategy) actions.push_back(to_string(a));
    gaps[p == Player::One ? "player1" : "player2"] = {{"best_response", c.best_response},
                                                      {"path_value", c.path_value},
                                                      {"raw_gap", c.raw_gap},
                                                      {"gap", c.gap},
                                                      {"strategy", std::move(actions)}};
  }
  json second = json::object();
  for (NodeId n = 0; n < r.split.second_half.size(); ++n) {
    if (auto s = r.split.second_half[n]) second[std::to_string(n)] = *s;
  }
  return {{"root_case", to_string(r.root_case)},
          {"trace", std::move(trace)},
          {"eta", r.eta},
          {"tol", r.tol},
          {"pure", r.pure},
          {"payoffs", json::array({r.payoffs.g1, r.payoffs.g2})},
          {"gaps", std::move(gaps)},
          {"origin", r.split.origin},
          {"second_half", std::move(second)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("document: expected an object");
  const auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end()) throw SchemaError("nodes: missing");
  if (!nodes_it->is_array() || nodes_it->empty()) throw SchemaError("nodes: expected a non-empty array");
  const json& nodes = *nodes_it;
  const std::size_t n = nodes.size();

  std::vector<EventTree::Link> links(n);
  std::vector<NodePayoff> payoffs(n);
  std::vector<int> declared_depth(n);
  std::vector<bool> seen(n, false);
  std::vector<bool> has_xi(n, false);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& node = nodes[i];
    if (!node.is_object()) throw SchemaError("nodes[" + std::to_string(i) + "]: expected an object");
    const std::uint64_t id = index_at(node, "id", where(i, std::nullopt, "id"));
    if (id >= n) throw SchemaError(where(i, id, "id") + ": ids must be 0.." + std::to_string(n - 1));
    if (seen[id]) throw SchemaError(where(i, id, "id") + ": duplicate id");
    seen[id] = true;
    position[id] = i;

    declared_depth[id] = static_cast<int>(index_at(node, "depth", where(i, id, "depth")));
    if (node.contains("parent")) {
      const std::uint64_t parent = index_at(node, "parent", where(i, id, "parent"));
      if (parent >= n) throw SchemaError(where(i, id, "parent") + ": no node " + std::to_string(parent));
      links[id].parent = parent;
      links[id].prob = number_at(node, "prob", where(i, id, "prob"));
    } else if (node.contains("prob")) {
      links[id].prob = number_at(node, "prob", where(i, id, "prob"));
    }
    NodePayoff& q = payoffs[id];
    q.p1.x = number_at(node, "X1", where(i, id, "X1"));
    q.p1.y = number_at(node, "Y1", where(i, id, "Y1"));
    q.p1.z = number_at(node, "Z1", where(i, id, "Z1"));
    q.p2.x = number_at(node, "X2", where(i, id, "X2"));
    q.p2.y = number_at(node, "Y2", where(i, id, "Y2"));
    q.p2.z = number_at(node, "Z2", where(i, id, "Z2"));
    const bool xi1 = node.contains("xi1");
    const bool xi2 = node.contains("xi2");
    if (xi1 != xi2) throw SchemaError(where(i, id, xi1 ? "xi2" : "xi1") + ": missing");
    if (xi1) {
      q.p1.xi = number_at(node, "xi1", where(i, id, "xi1"));
      q.p2.xi = number_at(node, "xi2", where(i, id, "xi2"));
      has_xi[id] = true;
    }
  }

  Instance out;
  out.game.tree = EventTree(std::move(links));
  out.game.payoffs.nodes = std::move(payoffs);
  const EventTree& tree = out.game.tree;
  for (NodeId id = 0; id < n; ++id) {
    if (declared_depth[id] != tree.depth(id)) {
      throw SchemaError(where(position[id], id, "depth") + ": declared " + std::to_string(declared_depth[id]) + " but the node is at depth " +
                        std::to_string(tree.depth(id)));
    }
    if (tree.is_leaf(id) && !has_xi[id]) throw SchemaError(where(position[id], id, "xi1") + ": missing on a leaf");
    if (!tree.is_leaf(id) && has_xi[id]) throw SchemaError(where(position[id], id, "xi1") + ": only leaves carry terminal payoffs");
  }
  const auto horizon = doc.find("horizon");
  if (horizon == doc.end()) throw SchemaError("horizon: missing");
  if (!horizon->is_number_unsigned()) throw SchemaError("horizon: expected a non-negative integer");
  if (horizon->get<std::uint64_t>() != static_cast<std::uint64_t>(tree.horizon())) {
    throw SchemaError("horizon: declared " + horizon->dump() + " but the deepest node is at depth " +
                      std::to_string(tree.horizon()));
  }

  if (const auto meta = doc.find("meta"); meta != doc.end()) {
    if (!meta->is_object()) throw SchemaError("meta: expected an object");
    out.meta = canonical(*meta);
    out.meta.pop_back();
  }
  if (const auto prof = doc.find("profile"); prof != doc.end()) out.profile = profile_from(*prof, n, "profile.");
  if (const auto rep = doc.find("report"); rep != doc.end()) {
    out.report = canonical(*rep);
    out.report->pop_back();
  }
  return out;
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string dump_instance(const Instance& instance) {
  json doc = game_to(instance.game);
  doc["meta"] = parse_json(instance.meta);
  if (instance.profile) doc["profile"] = profile_to(*instance.profile);
  if (instance.report) doc["report"] = parse_json(*instance.report);
  return canonical(doc);
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  write_file(path, dump_instance(instance));
}

BehavioralProfile parse_profile(std::string_view text, std::size_t nodes) {
  const json doc = parse_json(text);
  if (doc.is_object() && doc.contains("profile")) return profile_from(doc["profile"], nodes, "profile.");
  return profile_from(doc, nodes, "");
}

std::string dump_profile(const BehavioralProfile& profile) { return canonical(profile_to(profile)); }

Instance report_instance(const EquilibriumReport& report) {
  Instance out;
  out.game = report.split.game;
  out.profile = report.profile;
  out.meta = canonical(json{{"generator", "equilibrium"}, {"pure", report.pure}});
  out.meta.pop_back();
  out.report = dump_report(report);
  out.report->pop_back();
  return out;
}

std::string dump_report(const EquilibriumReport& report) { return canonical(report_to(report)); }

std::string solve_csv(const SolveTable& t) {
  if (!t.game || !t.v1 || !t.v2 || !t.mu1 || !t.mu2) throw PreconditionError("solve_csv: incomplete table");
  const EventTree& tree = t.game->tree;
  std::vector<std::string> labels(tree.size());
  for (const CaseLabel& l : t.labels) {
    std::string& s = labels.at(l.node);
    if (!s.empty()) s += ';';
    s += to_string(l.label);
  }
  std::ostringstream os;
  os << "node,depth,v1,v2,mu1_hit,mu2_hit,case\n";
  for (NodeId n = 0; n < tree.size(); ++n) {
    os << n << ',' << tree.depth(n) << ',' << format_number(t.v1->value[n]) << ',' << format_number(t.v2->value[n])
       << ',' << (t.mu1->on_antichain(n) ? 1 : 0) << ',' << (t.mu2->on_antichain(n) ? 1 : 0) << ',' << labels[n]
       << '\n';
  }
  os << "gaps,";
  if (t.gaps) os << format_number(t.gaps->player1.gap) << ',' << format_number(t.gaps->player2.gap);
  else os << ',';
  os << '\n';
  return os.str();
}

}  // namespace dynkin
