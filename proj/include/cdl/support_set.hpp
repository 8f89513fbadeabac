#pragma once

#include "cdl/literal.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace cdl {

enum class TruthValue { True, False, Undefined };

std::string_view to_string(TruthValue tv);
std::optional<TruthValue> parse_truth_value(std::string_view s);

/// Foreign literals, each paired with the agent that asserted it.
using SupportSet = std::set<LocatedLiteral>;

/// Rank of one supplier under `preference` (0 = most trusted). The owner
/// and the empty set rank -1; agents missing from the order rank after
/// every listed agent.
int agent_rank(const AgentId& agent, std::span<const AgentId> preference, const AgentId& owner = {});

/// Rank of a set: its least trusted element.
int support_rank(const SupportSet& set, std::span<const AgentId> preference, const AgentId& owner = {});

/// Weakest-element comparison: true iff `a` is strictly more trusted than `b`.
bool stronger(const SupportSet& a, const SupportSet& b, std::span<const AgentId> preference,
              const AgentId& owner = {});

std::string to_string(const SupportSet& set);

}  // namespace cdl
