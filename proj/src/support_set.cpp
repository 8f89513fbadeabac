#include "cdl/support_set.hpp"

#include <algorithm>

namespace cdl {

std::string_view to_string(TruthValue tv) {
  switch (tv) {
    case TruthValue::True: return "true";
    case TruthValue::False: return "false";
    case TruthValue::Undefined: return "undefined";
  }
  return "?";
}

std::optional<TruthValue> parse_truth_value(std::string_view s) {
  if (s == "true") return TruthValue::True;
  if (s == "false") return TruthValue::False;
  if (s == "undefined") return TruthValue::Undefined;
  return std::nullopt;
}

int agent_rank(const AgentId& agent, std::span<const AgentId> preference, const AgentId& owner) {
  if (!owner.empty() && agent == owner) return -1;
  auto it = std::find(preference.begin(), preference.end(), agent);
  return static_cast<int>(it - preference.begin());
}

int support_rank(const SupportSet& set, std::span<const AgentId> preference, const AgentId& owner) {
  int worst = -1;
  for (const auto& e : set) worst = std::max(worst, agent_rank(e.agent, preference, owner));
  return worst;
}

bool stronger(const SupportSet& a, const SupportSet& b, std::span<const AgentId> preference, const AgentId& owner) {
  return support_rank(a, preference, owner) < support_rank(b, preference, owner);
}

std::string to_string(const SupportSet& set) {
  std::string out = "{";
  for (const auto& e : set) {
    if (out.size() > 1) out += ", ";
    out += e.text();
  }
  return out + "}";
}

}  // namespace cdl
