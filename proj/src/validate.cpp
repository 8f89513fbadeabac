#include "cdl/validate.hpp"

#include <algorithm>
#include <set>

namespace cdl {

namespace {

class Checker {
public:
  explicit Checker(const System& sys) : sys_(sys) {
    for (const auto& a : sys.agents) names_.insert(a.id);
    for (const auto& a : sys.absent) names_.insert(a);
  }

  std::vector<Diagnostic> run() {
    check_agents();
    check_common();
    check_contexts();
    return std::move(out_);
  }

private:
  void add(std::string code, std::string subject, std::string message) {
    out_.push_back({std::move(code), std::move(subject), std::move(message)});
  }

  bool exists(const AgentId& id) const { return names_.count(id) > 0; }

  void check_agent_name(const AgentId& id) {
    if (id.str() == kReservedAny || id.str() == kReservedLocal)
      add("RESERVED_AGENT_NAME", id.str(), "agent name is reserved");
    else if (!is_name_token(id.str()))
      add("BAD_AGENT_NAME", id.str(), "agent name must be lowercase letters, digits or '_'");
  }

  void check_agents() {
    std::set<AgentId> seen;
    for (const auto& a : sys_.agents) {
      check_agent_name(a.id);
      if (!seen.insert(a.id).second) add("DUP_AGENT", a.id.str(), "agent declared twice");
      if (sys_.is_absent(a.id)) add("DUP_AGENT", a.id.str(), "agent is both present and absent");

      std::set<AgentId> known(a.known.begin(), a.known.end());
      std::set<AgentId> pref(a.preference.begin(), a.preference.end());
      if (known.size() != a.known.size()) add("DUP_KNOWN", a.id.str(), "known agent listed twice");
      if (known.count(a.id)) add("SELF_IN_KNOWN", a.id.str(), "an agent cannot know itself");
      if (pref.size() != a.preference.size() || pref != known)
        add("PREF_NOT_PERMUTATION", a.id.str(), "preference not total over known agents");
      for (const auto& k : a.known)
        if (!exists(k)) add("UNKNOWN_AGENT", a.id.str(), "knows undeclared agent " + k.str());
      for (const auto& p : a.preference)
        if (!exists(p) && !known.count(p)) add("UNKNOWN_AGENT", a.id.str(), "trusts undeclared agent " + p.str());

      std::set<std::string> ids;
      for (const auto& r : a.rules) {
        const std::string subject = a.id.str() + "/" + r.id;
        if (!ids.insert(r.id).second) add("DUP_RULE_ID", subject, "rule id used twice");
        if (!r.inherited) check_rule(a, r, subject);
      }
    }
    for (const auto& id : sys_.absent) check_agent_name(id);
  }

  void check_rule(const AgentSpec& owner, const Rule& r, const std::string& subject) {
    if (!is_name_token(r.id)) add("BAD_RULE_ID", subject, "rule id must be a lowercase token");
    if (!r.head.source.is_local()) add("HEAD_NOT_LOCAL", subject, "rule head must be a local literal");
    for (const auto& b : r.body) {
      if (b.source.is_agent()) {
        if (b.source.agent == owner.id)
          add("SELF_SOURCE", subject, "own literals are written @local, not @" + owner.id.str());
        else if (!exists(b.source.agent))
          add("UNKNOWN_AGENT", subject, "body member references undeclared agent " + b.source.agent.str());
      }
    }
    switch (r.kind) {
      case RuleKind::StrictLocal:
      case RuleKind::DefeasibleLocal:
        if (r.has_foreign_member())
          add("LOCAL_RULE_FOREIGN_BODY", subject, "only mapping rules may have foreign body members");
        break;
      case RuleKind::Mapping:
        if (!r.has_foreign_member())
          add("MAPPING_WITHOUT_FOREIGN", subject, "mapping rule needs a body member defined by another agent");
        break;
      case RuleKind::Common:
        add("COMMON_RULE_MAPPING", subject, "common rules belong in the system block");
        break;
      case RuleKind::Focus:
        if (!r.context) add("FOCUS_WITHOUT_CONTEXT", subject, "focus rule must carry a query context");
        if (r.has_foreign_member()) add("LOCAL_RULE_FOREIGN_BODY", subject, "focus rules are local");
        break;
    }
    if (r.kind != RuleKind::Focus && r.context)
      add("CONTEXT_ON_NON_FOCUS", subject, "only focus rules are context-tagged");
    check_range(r, subject);
  }

  void check_range(const Rule& r, const std::string& subject) {
    if (r.body.empty()) {
      if (!r.head.ground()) add("RANGE_RESTRICTION", subject, "facts must be ground");
      return;
    }
    std::set<std::string> body_vars;
    for (const auto& b : r.body)
      for (const auto& a : b.args)
        if (is_variable_token(a)) body_vars.insert(a);
    for (const auto& a : r.head.args)
      if (is_variable_token(a) && !body_vars.count(a))
        add("RANGE_RESTRICTION", subject, "head variable " + a + " does not occur in the body");
  }

  void check_common() {
    std::set<std::string> ids;
    for (const auto& r : sys_.common_rules) {
      const std::string subject = "common/" + r.id;
      if (!ids.insert(r.id).second) add("DUP_RULE_ID", subject, "rule id used twice");
      if (r.kind == RuleKind::Mapping || r.has_foreign_member()) {
        add("COMMON_RULE_MAPPING", subject, "common knowledge rules cannot be mapping rules");
        continue;
      }
      if (r.kind != RuleKind::StrictLocal && r.kind != RuleKind::DefeasibleLocal)
        add("COMMON_RULE_KIND", subject, "common rules are strict or defeasible");
      if (!r.head.source.is_local()) add("HEAD_NOT_LOCAL", subject, "rule head must be a local literal");
      if (r.context) add("CONTEXT_ON_NON_FOCUS", subject, "only focus rules are context-tagged");
      check_range(r, subject);
    }
  }

  void check_contexts() {
    std::set<QueryContextId> ids;
    for (const auto& c : sys_.contexts) {
      if (!ids.insert(c.id).second) add("DUP_CONTEXT", c.id, "query context id used twice");
      if (!exists(c.originator)) add("UNKNOWN_AGENT", c.id, "context originator " + c.originator.str() + " undeclared");
      for (const auto& r : c.focus) {
        const std::string subject = c.id + "/" + r.id;
        if (r.kind != RuleKind::Focus) add("FOCUS_KIND", subject, "context rules must be focus rules");
        if (r.context != c.id) add("FOCUS_CONTEXT_MISMATCH", subject, "focus rule tagged with another context");
        if (!r.ground()) add("RANGE_RESTRICTION", subject, "focus facts must be ground");
        if (r.has_foreign_member() || !r.head.source.is_local())
          add("LOCAL_RULE_FOREIGN_BODY", subject, "focus rules are local");
      }
    }
  }

  const System& sys_;
  std::set<AgentId> names_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const System& system) { return Checker(system).run(); }

}  // namespace cdl
