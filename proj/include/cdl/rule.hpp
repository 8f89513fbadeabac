#pragma once

#include "cdl/literal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cdl {

/// Globally unique query context id, "<originator>/<counter>".
using QueryContextId = std::string;

enum class RuleKind { StrictLocal, DefeasibleLocal, Mapping, Common, Focus };

std::string_view to_string(RuleKind k);

/// Context tag of a rule: nullopt means "any" (visible in every context).
using ContextTag = std::optional<QueryContextId>;

struct Rule {
  std::string id;
  RuleKind kind = RuleKind::DefeasibleLocal;
  Literal head;
  std::vector<Literal> body;
  ContextTag context;
  /// Replicated from the system's common knowledge block at load time.
  bool inherited = false;

  bool ground() const;
  bool is_fact() const noexcept { return body.empty(); }
  bool is_strict() const noexcept { return kind == RuleKind::StrictLocal; }
  bool visible_in(const QueryContextId& ctx) const { return !context || *context == ctx; }
  bool has_foreign_member() const;

  /// Scenario-syntax rendering, e.g. `mapping ra3: edible(M) <= edible(M)@any.`
  std::string text() const;

  auto operator<=>(const Rule&) const = default;
};

std::set<std::string> constants_of(const Rule& r);
std::set<std::string> variables_of(const Rule& r);

}  // namespace cdl
