#pragma once

#include "cdl/grounding.hpp"
#include "cdl/rule.hpp"

#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace cdl {

/// One agent's rule base as seen from each query context: its own rules
/// (grounded lazily as contexts bring constants), replicated common rules and
/// the context-tagged focus facts it has received.
class LocalTheory {
public:
  using AccessLog = std::function<void(const QueryContextId&, const Rule&)>;

  explicit LocalTheory(AgentId owner, ConstantPool base_constants = {});

  const AgentId& owner() const noexcept { return owner_; }

  /// Adds a ground rule or a template with variables.
  void add_rule(const Rule& rule);

  /// Adds each focus fact as a defeasible fact tagged with `ctx` (ids tr0,
  /// tr1, ...). A fact whose head is already tagged with `ctx` is skipped.
  /// Returns the number of facts added.
  std::size_t install_focus(const QueryContextId& ctx, std::span<const Rule> focus);

  bool has_context(const QueryContextId& ctx) const { return ctx_constants_.count(ctx) > 0; }

  /// True iff `p` is in the forward-chaining closure of the strict rules
  /// visible in `ctx`. Defeasible rules and focus facts do not take part.
  bool locally(const QueryContextId& ctx, const Literal& p) const;

  /// Rules with head `p` visible in `ctx`, ordered by rule id.
  std::vector<const Rule*> relevant_rules(const QueryContextId& ctx, const Literal& p) const;

  /// True iff some rule visible in `ctx` has head `p` or its complement.
  bool defines(const QueryContextId& ctx, const Literal& p) const;

  std::vector<const Rule*> visible_rules(const QueryContextId& ctx) const;

  /// Called for every rule handed out by relevant_rules().
  void set_access_log(AccessLog log) { access_log_ = std::move(log); }

private:
  struct Entry {
    Rule rule;
    std::vector<std::string> needs;  // constants that must be in the context's pool
  };

  void add_instance(Rule rule, const Rule& parent);
  void regrounding(const ConstantPool& fresh);
  bool visible(const Entry& e, const QueryContextId& ctx) const;
  const std::set<Literal>& closure(const QueryContextId& ctx) const;

  AgentId owner_;
  ConstantPool base_;
  ConstantPool seen_;
  std::vector<Rule> templates_;
  std::vector<Entry> entries_;
  std::set<std::string> entry_ids_;
  std::map<Literal, std::vector<std::size_t>> by_head_;
  std::map<QueryContextId, ConstantPool> ctx_constants_;
  std::size_t focus_counter_ = 0;
  mutable std::map<QueryContextId, std::set<Literal>> closure_cache_;
  AccessLog access_log_;
};

/// Forward-chaining closure of a set of ground strict rules.
std::set<Literal> strict_closure(std::span<const Rule* const> strict_rules);

}  // namespace cdl
