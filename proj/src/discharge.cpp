#include "nsd/discharge.hpp"

#include <sstream>

#include "nsd/configs.hpp"
#include "nsd/mad.hpp"

namespace nsd {

ChargeLedger discharge(const Graph& g) { return discharge(g, DischargeRules{}); }

ChargeLedger discharge(const Graph& g, const DischargeRules& rules) {
  std::vector<VertexClass> cls = classify(g);
  ChargeLedger led;
  led.initial.reserve(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    led.initial.emplace_back(g.degree(v) - 3, 1);
  led.final_ = led.initial;
  for (int x = 0; x < g.vertex_count(); ++x) {
    int d = g.degree(x);
    for (int y : g.neighbors(x)) {
      const VertexClass& cy = cls[static_cast<size_t>(y)];
      Rule rule;
      Rational amount;
      if (d >= rules.r1_min_degree && cy.kind == VertexKind::One) {
        rule = Rule::R1;
        amount = rules.r1_amount;
      } else if (d >= rules.r2_min_degree && cy.kind == VertexKind::BadTwo) {
        rule = Rule::R2;
        amount = rules.r2_amount;
      } else if (d >= rules.r3_min_degree && cy.kind == VertexKind::GoodTwo) {
        rule = Rule::R3;
        amount = rules.r3_amount;
      } else if (d >= rules.r4_min_degree && cy.kind == VertexKind::BadThree) {
        rule = Rule::R4;
        amount = rules.r4_amount;
      } else {
        continue;
      }
      led.transfers.push_back({rule, x, y, amount});
      led.final_[static_cast<size_t>(x)] -= amount;
      led.final_[static_cast<size_t>(y)] += amount;
    }
  }
  return led;
}

GhostResult ghost_check(const Graph& g, const ChargeLedger& ledger) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    int d = g.degree(v);
    const Rational& w = ledger.final_.at(static_cast<size_t>(v));
    if (d >= 2) {
      if (w < Rational{0, 1}) return {false, v, GhostResult::Reason::V1Negative};
    } else if (d == 1) {
      int d_v1 = 0;
      for (int u : g.neighbors(v))
        if (g.degree(u) >= 2) ++d_v1;
      if (w < Rational{d - 3 + d_v1, 1})
        return {false, v, GhostResult::Reason::V2Deficit};
    }
  }
  return {};
}

TheoremReport verify_discharging_theorem(const Graph& g, int k) {
  if (k < 6)
    throw std::invalid_argument("verify_discharging_theorem: k < 6");
  if (g.max_degree() > k)
    throw std::invalid_argument(
        "verify_discharging_theorem: max degree exceeds k");
  for (const auto& comp : g.components())
    if (comp.size() == 2)
      throw std::invalid_argument(
          "verify_discharging_theorem: isolated edge present");
  if (g.edge_count() == 0) return {};  // nothing to discharge
  if (!find_configs(g, k, MatchMode::FirstByIndex).empty()) return {};

  TheoremReport rep;
  ChargeLedger led = discharge(g);
  GhostResult ghost = ghost_check(g, led);
  bool mad_ok = !mad_less_than(g, Rational{3, 1});
  if (ghost.pass && mad_ok) return rep;

  rep.consistent = false;
  std::ostringstream os;
  os << "configuration-free graph " << encode_graph6(g) << " with k=" << k;
  if (!ghost.pass)
    os << "; ghost check fails at vertex " << ghost.vertex << " ("
       << (ghost.reason == GhostResult::Reason::V1Negative ? "V1 negative"
                                                           : "V2 deficit")
       << ")";
  if (!mad_ok) os << "; mad(g) = " << mad_exact(g).str() << " < 3";
  rep.detail = os.str();
  return rep;
}

}  // namespace nsd
