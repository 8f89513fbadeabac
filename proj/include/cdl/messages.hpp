#pragma once

#include "cdl/rule.hpp"
#include "cdl/support_set.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace cdl {

/// Literals already under evaluation along the current query chain, each
/// pinned to the agent evaluating it. The last entry is the target.
struct History {
  std::vector<LocatedLiteral> visited;

  const LocatedLiteral& target() const { return visited.back(); }
  bool contains(const LocatedLiteral& e) const;
  History extended(LocatedLiteral e) const;
  /// Order-free identity of the history, used as memo key.
  std::vector<LocatedLiteral> key() const;
};

struct QueryMsg {
  QueryContextId ctx;
  AgentId originator;
  Literal literal;  // bare
  History history;
  std::vector<Rule> focus;
  AgentId sender;
  std::uint64_t corr = 0;
};

struct AnswerMsg {
  QueryContextId ctx;
  Literal literal;  // bare
  TruthValue tv = TruthValue::Undefined;
  std::optional<SupportSet> bs;
  std::optional<SupportSet> ss;
  AgentId sender;
  std::uint64_t reply_to = 0;

  /// Undefined with no sets: the sender has no rule for the literal.
  bool vocabulary_miss() const { return tv == TruthValue::Undefined && !bs; }
  bool operator==(const AnswerMsg&) const = default;
};

using Message = std::variant<QueryMsg, AnswerMsg>;

struct Envelope {
  AgentId from;
  AgentId to;
  Message msg;
};

/// The answer an absent or unreachable agent is taken to give.
AnswerMsg vocabulary_miss_from(const AgentId& sender, const QueryMsg& q);

}  // namespace cdl
