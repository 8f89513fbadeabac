#pragma once

#include "cdl/rule.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cdl {

struct AgentSpec {
  AgentId id;
  std::vector<Rule> rules;
  std::vector<AgentId> known;
  /// Total order over `known`, most trusted first.
  std::vector<AgentId> preference;

  const Rule* find_rule(std::string_view rule_id) const;
};

/// One distributed reasoning episode: its id, who started it and the focus
/// facts shared with every participant.
struct QueryContext {
  QueryContextId id;
  AgentId originator;
  std::vector<Rule> focus;
};

struct System {
  std::vector<AgentSpec> agents;
  std::vector<Rule> common_rules;
  std::vector<QueryContext> contexts;
  /// Agents that may be referenced but are currently out of the system.
  std::vector<AgentId> absent;

  const AgentSpec* find_agent(const AgentId& id) const;
  AgentSpec* find_agent(const AgentId& id);
  const QueryContext* find_context(const QueryContextId& id) const;
  bool is_absent(const AgentId& id) const;

  std::set<std::string> constants() const;
};

/// Focus facts as context-tagged Focus rules with ids f1, f2, ...
std::vector<Rule> make_focus_rules(const QueryContextId& ctx, const std::vector<Literal>& facts);

}  // namespace cdl
