#pragma once

// Construction of an approximate equilibrium from the two auxiliary
// zero-sum value processes.
//
// The root is classified into one of the parts below. Parts 1-4 stop at the
// root (or let the right player stop there) and punish a player who fails
// to stop; M1-M4 are the same with the players' roles exchanged. Part 6
// waits until the first time either player's stop-first payoff is within
// eta of its value and then resolves the situation at that node
// (subcases A61-A66). Punishments start in the second half of a split
// frame so they can never collide with the stop they enforce.

#include <string>
#include <vector>

#include "dynkin/game.hpp"
#include "dynkin/transform.hpp"
#include "dynkin/verify.hpp"
#include "dynkin/zerosum.hpp"

namespace dynkin {

enum class Case { A1, A2, A3, A4, M1, M2, M3, M4, A6, A61, A62, A63, A64, A65, A66 };

std::string to_string(Case c);
/// The label of the same situation with the players exchanged.
Case mirror(Case c);

struct CaseLabel {
  Case label;
  NodeId node;

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

/// Root-level part. Throws ModelViolation if the chain falls through to the
/// empty part (A5 / M5), which the value bounds rule out.
Case classify(const Game& game, const ValueProcess& v1, const ValueProcess& v2, double tol = kDefaultTol);

/// For a Part 6 root: the subcase at every node of the first joint hitting
/// antichain, plus A63 at the leaves of paths on which neither player's
/// condition ever holds. Labels are ordered by node id.
std::vector<CaseLabel> classify_part6(const Game& game, const ValueProcess& v1, const ValueProcess& v2, double eta,
                                      double tol = kDefaultTol);

struct EquilibriumReport {
  Case root_case = Case::A1;
  /// Root label first, then Part 6 subcases.
  std::vector<CaseLabel> trace;
  /// The game the profile lives on (input frames split where needed).
  FrameSplit split;
  BehavioralProfile profile;
  PayoffPair payoffs;
  GapPair gaps;
  double eta = 0.0;
  double tol = kDefaultTol;
  bool pure = false;
};

EquilibriumReport construct(const Game& game, double eta, double tol = kDefaultTol);

/// Non-randomized variant. Throws PreconditionError naming node and player
/// unless Z lies between X and Y for both players everywhere.
EquilibriumReport construct_pure(const Game& game, double eta, double tol = kDefaultTol);

}  // namespace dynkin
