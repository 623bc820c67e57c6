#pragma once

// On-disk formats. A game file is a JSON document
//
//   { "horizon": D,
//     "nodes": [ { "id", "depth", "parent", "prob",
//                  "X1", "Y1", "Z1", "X2", "Y2", "Z2", "xi1", "xi2" } ],
//     "meta": { ... } }
//
// with "parent" absent on the root and "xi1"/"xi2" present on leaves only.
// A profile is { "player1": { "<id>": [atom, uniform, wait] }, "player2": ... }
// and may be embedded in a game file under "profile". Output is canonical:
// keys sorted, numbers in shortest round-trip form.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dynkin/equilibrium.hpp"
#include "dynkin/game.hpp"
#include "dynkin/zerosum.hpp"

namespace dynkin {

struct Instance {
  Game game;
  std::optional<BehavioralProfile> profile;
  /// The "meta" object as canonical JSON text.
  std::string meta = "{}";
  /// The "report" object as canonical JSON text, if present.
  std::optional<std::string> report;
};

/// Throws SchemaError with a path to the offending field, naming the node
/// id where one applies.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

std::string dump_instance(const Instance& instance);
void save_instance(const std::filesystem::path& path, const Instance& instance);

/// A standalone profile document, or the "profile" member of a game file.
BehavioralProfile parse_profile(std::string_view text, std::size_t nodes);
std::string dump_profile(const BehavioralProfile& profile);

/// Game file of the split game with the constructed profile and the report
/// embedded, so it can be fed straight back to verification.
Instance report_instance(const EquilibriumReport& report);

/// The report object alone, as canonical JSON text.
std::string dump_report(const EquilibriumReport& report);

struct SolveTable {
  const Game* game = nullptr;
  const ValueProcess* v1 = nullptr;
  const ValueProcess* v2 = nullptr;
  const HittingTime* mu1 = nullptr;
  const HittingTime* mu2 = nullptr;
  /// Case labels per node of `game`; the root label first.
  std::vector<CaseLabel> labels;
  std::optional<GapPair> gaps;
};

/// Columns node,depth,v1,v2,mu1_hit,mu2_hit,case; a footer record
/// "gaps,<gap1>,<gap2>" closes the table (fields empty when not computed).
std::string solve_csv(const SolveTable& table);

/// Shortest decimal text that reads back as the same double.
std::string format_number(double v);

}  // namespace dynkin
