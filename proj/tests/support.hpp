#pragma once

#include "cdl/scenario.hpp"
#include "cdl/simnet.hpp"

#include <random>
#include <string>

namespace cdl::test {

inline std::string scenario_path(const std::string& name) { return std::string(CDL_SCENARIO_DIR) + "/" + name; }

inline System mushrooms() { return parse_scenario(read_file(scenario_path("mushrooms.cdl"))); }
inline std::vector<Literal> alpha_focus() { return parse_facts(read_file(scenario_path("alpha.facts"))); }
inline std::vector<Literal> beta_focus() { return parse_facts(read_file(scenario_path("beta.facts"))); }

inline Literal lit(const std::string& s) { return parse_literal(s); }

inline InjectedQuery alpha_query() { return {AgentId("alice"), lit("edible(m1)"), alpha_focus(), std::nullopt}; }
inline InjectedQuery beta_query() { return {AgentId("bob"), lit("edible(m2)"), beta_focus(), std::nullopt}; }

/// Random scenario text with variable rules, for the parser and grounding
/// properties. Predicates q0..q2 (unary) and r0 (binary), constants k0..k2.
inline std::string random_scenario(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto term = [&](bool allow_var) {
    if (allow_var && pick(0, 1)) return std::string(pick(0, 1) ? "X" : "Y");
    return "k" + std::to_string(pick(0, 2));
  };
  auto atom = [&](bool allow_var) {
    std::string s = pick(0, 3) == 0 ? "~" : "";
    if (pick(0, 3) == 0) return s + "r0(" + term(allow_var) + "," + term(allow_var) + ")";
    return s + "q" + std::to_string(pick(0, 2)) + "(" + term(allow_var) + ")";
  };
  const int n = pick(1, 4);
  std::string out;
  if (pick(0, 1)) out += "system common {\n  defeasible c1: q0(X) <= q1(X).\n}\n";
  for (int i = 0; i < n; ++i) {
    out += "agent g" + std::to_string(i) + " {\n";
    std::string known, trust;
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    for (int j : others) known += (known.empty() ? "" : ", ") + ("g" + std::to_string(j));
    std::shuffle(others.begin(), others.end(), rng);
    for (int j : others) trust += (trust.empty() ? "" : ", ") + ("g" + std::to_string(j));
    if (!known.empty()) out += "  knows: " + known + ".\n  trust: " + trust + ".\n";
    const int m = pick(0, 5);
    for (int r = 0; r < m; ++r) {
      const std::string id = "r" + std::to_string(r);
      const int kind = pick(0, others.empty() ? 1 : 2);
      if (kind == 2) {
        const std::string src = pick(0, 1) ? "@any" : "@g" + std::to_string(others[0]);
        out += "  mapping " + id + ": q1(X) <= q2(X)" + src + ", " + atom(false) + ".\n";
      } else {
        // Variables only where the body binds them.
        std::string head = pick(0, 1) ? "q" + std::to_string(pick(0, 2)) + "(X)" : atom(false);
        std::string body = head.find('X') != std::string::npos ? "q" + std::to_string(pick(0, 2)) + "(X)" : "";
        if (body.empty() && pick(0, 1)) body = atom(false);
        out += std::string("  ") + (kind == 0 ? "strict " : "defeasible ") + id + ": " + head +
               (kind == 0 ? " <- " : " <= ") + body + ".\n";
      }
    }
    out += "}\n";
  }
  return out;
}

}  // namespace cdl::test
