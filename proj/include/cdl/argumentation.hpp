#pragma once

#include "cdl/support_set.hpp"
#include "cdl/system.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdl {

/// Rules agent `agent` reasons with in `ctx`: its own rules (grounded over
/// the system constants plus the focus constants) and the context's focus
/// facts (omitted when `with_focus` is false). Schematic members are left in
/// place.
std::vector<Rule> extended_rules(const System& system, const QueryContext& ctx, const AgentId& agent,
                                 bool with_focus = true);

/// Replaces schematic members by concrete suppliers: `local` when the agent
/// itself has a rule for the member (never the rule's own head), or any
/// present known agent other than the originator with such a rule. Iterated
/// to a fixpoint; rules with an unresolvable member are dropped. Only
/// `focus_holders` (every agent when unset) see the context's focus facts.
std::map<AgentId, std::vector<Rule>> instantiate_schematic(
    const System& system, const QueryContext& ctx, const std::optional<std::set<AgentId>>& focus_holders = std::nullopt);

struct ProofNode {
  Literal literal;  // bare
  AgentId agent;    // whose vocabulary the literal belongs to
  std::string rule; // empty for a foreign leaf
  bool strict = false;
  std::vector<ProofNode> children;

  bool foreign_leaf() const noexcept { return rule.empty(); }
  bool fact() const noexcept { return !rule.empty() && children.empty(); }
  /// Canonical text, unique per tree shape.
  std::string key() const;
};

struct Argument {
  AgentId owner;
  ProofNode tree;

  const Literal& conclusion() const { return tree.literal; }
  std::string key() const { return tree.key(); }
};

struct SupportRelation {
  QueryContextId ctx;
  std::vector<Argument> arguments;  // sorted by (owner, key)
  std::vector<std::string> diagnostics;

  const Argument* find(const std::string& key) const;
};

struct SrOptions {
  std::size_t node_budget = 10'000;
  /// Agents holding the context's focus facts. Unset means every agent, which
  /// is what the protocol converges to once a query has reached everyone.
  std::optional<std::set<AgentId>> focus_holders;
};

SupportRelation build_support_relation(const System& system, const QueryContext& ctx, SrOptions options = {});

/// Arguments that are neither facts nor a proper subtree of another argument
/// of the same owner.
std::vector<const Argument*> maximal_arguments(const SupportRelation& sr);

/// Proper subarguments: the subtrees rooted at the argument's own non-leaf
/// descendants.
std::vector<const ProofNode*> subarguments(const Argument& a);

/// Foreign leaves of the whole tree, with their suppliers.
SupportSet foreign_support(const ProofNode& tree);
bool strict_only(const ProofNode& tree);

enum class Label { Justified, Rejected, Undecided };
std::string_view to_string(Label l);

struct Labeling {
  std::map<std::string, Label> labels;  // by argument key
  std::size_t iterations = 0;
  /// Size of the justified set after each round.
  std::vector<std::size_t> justified_per_round;

  Label of(const Argument& a) const;
};

Labeling label(const SupportRelation& sr, const System& system);

/// Answer read off a labelling: true if a justified argument of `agent`
/// concludes p; false if one concludes ~p or every argument for p is
/// rejected; undefined otherwise (and when the agent has no rule for p).
/// Having no argument for p counts as rejection only on acyclic queries.
TruthValue labeled_answer(const SupportRelation& sr, const Labeling& labeling, const System& system,
                          const QueryContext& ctx, const AgentId& agent, const Literal& p);

/// Reference answer by dialectical unfolding over the extended rules, with
/// the same cycle treatment as the protocol. Independent of message order.
struct OracleOptions {
  std::size_t max_evaluations = 2'000'000;
};

class OracleBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

TruthValue oracle_answer(const System& system, const QueryContext& ctx, const AgentId& where, const Literal& p,
                         OracleOptions options = {});

/// True iff no dependency cycle over (agent, atom) pairs is reachable from
/// (where, p). Signs are ignored and self-loops count. On such queries the
/// labelling and the unfolding must agree.
bool acyclic_query(const System& system, const QueryContext& ctx, const AgentId& where, const Literal& p);

/// Graphviz rendering: one cluster per agent, solid tree edges, dashed edges
/// from a foreign leaf to its supporting arguments, double border for
/// justified and struck-through text for rejected arguments.
std::string to_dot(const SupportRelation& sr, const Labeling* labeling = nullptr);

}  // namespace cdl
