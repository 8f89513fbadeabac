#include "cdl/rule.hpp"
#include "cdl/system.hpp"

#include <algorithm>

namespace cdl {

std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::StrictLocal: return "strict";
    case RuleKind::DefeasibleLocal: return "defeasible";
    case RuleKind::Mapping: return "mapping";
    case RuleKind::Common: return "common";
    case RuleKind::Focus: return "focus";
  }
  return "?";
}

bool Rule::ground() const {
  return head.ground() && std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.ground(); });
}

bool Rule::has_foreign_member() const {
  return std::any_of(body.begin(), body.end(), [](const Literal& l) { return !l.source.is_local(); });
}

std::string Rule::text() const {
  std::string out{to_string(kind)};
  out += ' ';
  out += id;
  out += ": ";
  out += head.text();
  out += kind == RuleKind::StrictLocal ? " <-" : " <=";
  for (std::size_t i = 0; i < body.size(); ++i) {
    out += i ? ", " : " ";
    out += body[i].text();
  }
  if (body.empty()) out += ' ';
  out += '.';
  return out;
}

std::set<std::string> constants_of(const Rule& r) {
  auto out = constants_of(r.head);
  for (const auto& b : r.body) out.merge(constants_of(b));
  return out;
}

std::set<std::string> variables_of(const Rule& r) {
  std::set<std::string> out;
  auto scan = [&](const Literal& l) {
    for (const auto& a : l.args)
      if (is_variable_token(a)) out.insert(a);
  };
  scan(r.head);
  for (const auto& b : r.body) scan(b);
  return out;
}

const Rule* AgentSpec::find_rule(std::string_view rule_id) const {
  for (const auto& r : rules)
    if (r.id == rule_id) return &r;
  return nullptr;
}

const AgentSpec* System::find_agent(const AgentId& id) const {
  for (const auto& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

AgentSpec* System::find_agent(const AgentId& id) {
  for (auto& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

const QueryContext* System::find_context(const QueryContextId& id) const {
  for (const auto& c : contexts)
    if (c.id == id) return &c;
  return nullptr;
}

bool System::is_absent(const AgentId& id) const {
  return std::find(absent.begin(), absent.end(), id) != absent.end();
}

std::set<std::string> System::constants() const {
  std::set<std::string> out;
  for (const auto& a : agents)
    for (const auto& r : a.rules) out.merge(constants_of(r));
  for (const auto& r : common_rules) out.merge(constants_of(r));
  for (const auto& c : contexts)
    for (const auto& r : c.focus) out.merge(constants_of(r));
  return out;
}

std::vector<Rule> make_focus_rules(const QueryContextId& ctx, const std::vector<Literal>& facts) {
  std::vector<Rule> out;
  out.reserve(facts.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    Rule r;
    r.id = "f" + std::to_string(i + 1);
    r.kind = RuleKind::Focus;
    r.head = facts[i].bare();
    r.context = ctx;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cdl
