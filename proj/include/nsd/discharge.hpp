#pragma once

#include <string>
#include <vector>

#include "nsd/graph.hpp"
#include "nsd/rational.hpp"

namespace nsd {

enum class Rule { R1, R2, R3, R4 };

struct Transfer {
  Rule rule;
  int from = -1;
  int to = -1;
  Rational amount;
};

/// Weights before and after the single discharging round, with the full
/// transfer log. Conservation (sum initial == sum final) holds by
/// construction and is asserted by tests.
struct ChargeLedger {
  std::vector<Rational> initial;
  std::vector<Transfer> transfers;
  std::vector<Rational> final_;
};

/// Rule amounts and donor-degree thresholds. The defaults are the canonical
/// rules; the struct exists so deliberate-mutation tests can inject broken
/// variants.
struct DischargeRules {
  Rational r1_amount{1, 1};
  Rational r2_amount{1, 1};
  Rational r3_amount{1, 2};
  Rational r4_amount{1, 2};
  int r1_min_degree = 5;
  int r2_min_degree = 4;
  int r3_min_degree = 3;
  int r4_min_degree = 4;
};

/// Initial weight d(x) - 3 everywhere, then one simultaneous round of:
///   R1: d >= 5 gives 1 to every adjacent 1-vertex,
///   R2: d >= 4 gives 1 to every adjacent bad 2-vertex,
///   R3: d >= 3 gives 1/2 to every adjacent good 2-vertex,
///   R4: d >= 4 gives 1/2 to every adjacent bad 3-vertex.
/// All transfers are computed from the initial classification, never
/// cascaded.
ChargeLedger discharge(const Graph& g);
ChargeLedger discharge(const Graph& g, const DischargeRules& rules);

struct GhostResult {
  enum class Reason { None, V1Negative, V2Deficit };
  bool pass = true;
  int vertex = -1;
  Reason reason = Reason::None;
};

/// Ghost-vertices accounting over the partition V1 = degree >= 2,
/// V2 = degree 1: every V1 vertex must end non-negative and every V2 vertex
/// must end at >= d(v) - 3 + d_{V1}(v). Degree-0 vertices fall outside the
/// partition and are not checked.
GhostResult ghost_check(const Graph& g, const ChargeLedger& ledger);

struct TheoremReport {
  bool consistent = true;
  std::string detail;  // counterexample dump when inconsistent
};

/// Executable form of the discharging conclusion: if no configuration is
/// present then ghost_check must pass and mad(g) >= 3. A failed link would
/// indicate an implementation bug. Requires max degree <= k, k >= 6, no
/// isolated edges; a graph without edges is vacuously consistent.
TheoremReport verify_discharging_theorem(const Graph& g, int k);

}  // namespace nsd
