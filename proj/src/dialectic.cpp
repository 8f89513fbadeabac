// Reference evaluator. It unfolds the query recursively over every agent's
// extended rules and compares support by rank alone: a set of suppliers is
// as strong as its least trusted member, so a rule's strength is the worst of
// its members' best options and a literal's strength is the best of its
// rules. No messages and no set contents, only ranks.
#include "cdl/argumentation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace cdl {

namespace {

using Rank = std::optional<int>;

Rank better(Rank a, int b) { return a ? std::min(*a, b) : b; }

struct AgentView {
  std::vector<Rule> rules;
  std::map<Literal, std::vector<const Rule*>> by_head;
  std::set<Literal> strict;  // closure of the strict rules
  const AgentSpec* spec = nullptr;

  int rank(const AgentId& supplier) const {
    const auto& pref = spec->preference;
    return static_cast<int>(std::find(pref.begin(), pref.end(), supplier) - pref.begin());
  }
};

std::set<Literal> naive_strict_closure(const std::vector<Rule>& rules) {
  std::set<Literal> known;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& r : rules) {
      if (!r.is_strict() || known.count(r.head.bare())) continue;
      if (std::all_of(r.body.begin(), r.body.end(), [&](const Literal& b) { return known.count(b.bare()) > 0; })) {
        known.insert(r.head.bare());
        grew = true;
      }
    }
  }
  return known;
}

std::map<AgentId, AgentView> build_views(const System& system, const QueryContext& ctx) {
  std::map<AgentId, AgentView> views;
  for (const auto& a : system.agents) {
    AgentView& v = views[a.id];
    v.spec = &a;
    v.rules = extended_rules(system, ctx, a.id);
    for (const auto& r : v.rules) v.by_head[r.head.bare()].push_back(&r);
    v.strict = naive_strict_closure(v.rules);
  }
  return views;
}

std::vector<AgentId> suppliers(const AgentView& v, const Literal& member, const AgentId& self,
                               const AgentId& originator) {
  switch (member.source.kind) {
    case Source::Kind::Local: return {self};
    case Source::Kind::Agent: return {member.source.agent};
    case Source::Kind::Schematic: break;
  }
  std::vector<AgentId> out{self};
  for (const auto& k : v.spec->known)
    if (k != self && k != originator) out.push_back(k);
  return out;
}

class Unfolding {
public:
  Unfolding(const System& system, const QueryContext& ctx, OracleOptions options)
      : views_(build_views(system, ctx)), originator_(ctx.originator), options_(options) {}

  struct Value {
    TruthValue tv = TruthValue::Undefined;
    Rank ss;
    Rank bs;  // present for true, and for undefined unless nothing matched
  };

  Value eval(const AgentId& i, const Literal& p, std::set<LocatedLiteral> history) {
    auto key = std::make_tuple(i, p, history);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++evaluations_ > options_.max_evaluations)
      throw OracleBudgetExceeded("reference evaluator exceeded " + std::to_string(options_.max_evaluations) +
                                 " evaluations");
    Value v = compute(i, p, history);
    memo_.emplace(std::move(key), v);
    return v;
  }

private:
  struct Leaf {
    Rank ss;  // supported
    Rank bs;  // supported or merely unblocked; empty means failed
  };

  Leaf leaf(const AgentId& i, const Literal& b, const AgentId& c, const std::set<LocatedLiteral>& history) {
    const LocatedLiteral entry{b, c};
    const AgentView& v = views_.at(i);
    if (c == i) {
      if (history.count(entry)) return {};
      auto h = history;
      h.insert(entry);
      const Value sub = eval(i, b, std::move(h));
      if (sub.tv == TruthValue::True) return {sub.ss, sub.bs};
      if (sub.tv == TruthValue::Undefined && sub.bs) return {std::nullopt, sub.bs};
      return {};
    }
    const int r = v.rank(c);
    if (history.count(entry)) return {std::nullopt, r};
    if (!views_.count(c)) return {};
    auto h = history;
    h.insert(entry);
    const Value sub = eval(c, b, std::move(h));
    if (sub.tv == TruthValue::True) return {r, r};
    if (sub.tv == TruthValue::Undefined && sub.bs) return {std::nullopt, r};
    return {};
  }

  std::pair<Rank, Rank> side(const AgentId& i, const Literal& s, const std::set<LocatedLiteral>& history) {
    const AgentView& v = views_.at(i);
    Rank ss, bs;
    auto it = v.by_head.find(s);
    if (it == v.by_head.end()) return {ss, bs};
    for (const Rule* r : it->second) {
      int rule_ss = -1, rule_bs = -1;
      bool applicable = true, blocked = false;
      for (const auto& member : r->body) {
        Rank m_ss, m_bs;
        for (const auto& c : suppliers(v, member, i, originator_)) {
          const Leaf l = leaf(i, member.bare(), c, history);
          if (l.ss) m_ss = better(m_ss, *l.ss);
          if (l.bs) m_bs = better(m_bs, *l.bs);
        }
        if (!m_bs) {
          blocked = true;
          break;
        }
        rule_bs = std::max(rule_bs, *m_bs);
        if (m_ss)
          rule_ss = std::max(rule_ss, *m_ss);
        else
          applicable = false;
      }
      if (blocked) continue;
      bs = better(bs, rule_bs);
      if (applicable) ss = better(ss, rule_ss);
    }
    return {ss, bs};
  }

  Value compute(const AgentId& i, const Literal& p, const std::set<LocatedLiteral>& history) {
    const AgentView& v = views_.at(i);
    const Literal np = p.complement();
    const bool lp = v.strict.count(p) > 0, ln = v.strict.count(np) > 0;
    if (lp && ln) return {TruthValue::Undefined, std::nullopt, -1};
    if (lp) return {TruthValue::True, -1, -1};
    if (ln) return {TruthValue::False, std::nullopt, std::nullopt};
    if (!v.by_head.count(p) && !v.by_head.count(np)) return {};

    const auto [ssp, bsp] = side(i, p, history);
    const auto [ssn, bsn] = side(i, np, history);
    if (ssp && (!bsn || *ssp < *bsn)) return {TruthValue::True, ssp, bsp};
    if (!bsp || (ssn && *ssn < *bsp)) return {TruthValue::False, ssp, bsp};
    return {TruthValue::Undefined, ssp, bsp};
  }

  std::map<AgentId, AgentView> views_;
  AgentId originator_;
  OracleOptions options_;
  std::map<std::tuple<AgentId, Literal, std::set<LocatedLiteral>>, Value> memo_;
  std::size_t evaluations_ = 0;
};

}  // namespace

TruthValue oracle_answer(const System& system, const QueryContext& ctx, const AgentId& where, const Literal& p,
                         OracleOptions options) {
  if (!system.find_agent(where)) return TruthValue::Undefined;
  Unfolding u(system, ctx, options);
  const Literal q = p.bare();
  return u.eval(where, q, {{q, where}}).tv;
}

bool acyclic_query(const System& system, const QueryContext& ctx, const AgentId& where, const Literal& p) {
  // Nodes are (atom, agent) with the sign dropped, so a rule for ~p that
  // needs p, or any rule that needs its own atom, closes a cycle. Only on
  // such graphs is the answer independent of the query history.
  const auto views = build_views(system, ctx);
  auto atom = [](Literal l) {
    l = l.bare();
    l.negated = false;
    return l;
  };
  using Node = LocatedLiteral;
  std::map<Node, int> colour;  // 1 on stack, 2 done
  std::function<bool(const Node&)> visit = [&](const Node& n) -> bool {
    colour[n] = 1;
    const AgentView& v = views.at(n.agent);
    for (const Literal& s : {n.literal, n.literal.complement()}) {
      auto it = v.by_head.find(s);
      if (it == v.by_head.end()) continue;
      for (const Rule* r : it->second)
        for (const auto& m : r->body)
          for (const auto& c : suppliers(v, m, n.agent, ctx.originator)) {
            if (!views.count(c)) continue;  // never answered
            const Node next{atom(m), c};
            const int col = colour.count(next) ? colour[next] : 0;
            if (col == 1) return false;
            if (col == 0 && !visit(next)) return false;
          }
    }
    colour[n] = 2;
    return true;
  };
  if (!views.count(where)) return true;
  return visit({atom(p), where});
}

}  // namespace cdl
