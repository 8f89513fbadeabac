#include "cdl/argumentation.hpp"

#include "cdl/grounding.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cdl {

namespace {

ConstantPool context_pool(const System& system, const QueryContext& ctx) {
  ConstantPool pool = system.constants();
  for (const auto& f : ctx.focus) pool.merge(constants_of(f));
  return pool;
}

bool present(const System& system, const AgentId& id) { return system.find_agent(id) != nullptr; }

struct BudgetExhausted {};

class TreeBuilder {
public:
  TreeBuilder(const std::map<AgentId, std::vector<Rule>>& rules, std::size_t budget) : budget_(budget) {
    for (const auto& [agent, rs] : rules) {
      auto& idx = by_head_[agent];
      for (const auto& r : rs) idx[r.head.bare()].push_back(&r);
    }
    for (auto& [agent, idx] : by_head_)
      for (auto& [head, rs] : idx)
        std::sort(rs.begin(), rs.end(), [](const Rule* a, const Rule* b) { return a->id < b->id; });
  }

  std::vector<ProofNode> all_trees(const AgentId& agent) {
    std::vector<ProofNode> out;
    for (const auto& [head, rs] : by_head_[agent]) {
      std::set<Literal> path;
      for (auto& t : trees(agent, head, path)) out.push_back(std::move(t));
    }
    return out;
  }

  std::size_t nodes() const noexcept { return nodes_; }

private:
  std::vector<ProofNode> trees(const AgentId& agent, const Literal& q, std::set<Literal>& path) {
    std::vector<ProofNode> out;
    auto idx = by_head_[agent].find(q);
    if (idx == by_head_[agent].end()) return out;
    path.insert(q);
    for (const Rule* r : idx->second) {
      std::vector<std::vector<ProofNode>> options;
      bool possible = true;
      for (const auto& b : r->body) {
        if (b.source.is_local()) {
          const Literal bl = b.bare();
          if (path.count(bl)) {
            possible = false;
            break;
          }
          auto sub = trees(agent, bl, path);
          if (sub.empty()) {
            possible = false;
            break;
          }
          options.push_back(std::move(sub));
        } else {
          ProofNode leaf;
          leaf.literal = b.bare();
          leaf.agent = b.source.agent;
          options.push_back({std::move(leaf)});
        }
      }
      if (!possible) continue;

      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        ProofNode n;
        n.literal = q;
        n.agent = agent;
        n.rule = r->id;
        n.strict = r->is_strict();
        for (std::size_t m = 0; m < options.size(); ++m) n.children.push_back(options[m][pick[m]]);
        charge(n);
        out.push_back(std::move(n));
        std::size_t k = options.size();
        bool more = false;
        while (k > 0) {
          --k;
          if (++pick[k] < options[k].size()) {
            more = true;
            break;
          }
          pick[k] = 0;
        }
        if (!more) break;
      }
    }
    path.erase(q);
    return out;
  }

  void charge(const ProofNode& n) {
    std::size_t size = 0;
    std::function<void(const ProofNode&)> count = [&](const ProofNode& x) {
      ++size;
      for (const auto& c : x.children) count(c);
    };
    count(n);
    nodes_ += size;
    if (nodes_ > budget_) throw BudgetExhausted{};
  }

  std::map<AgentId, std::map<Literal, std::vector<const Rule*>>> by_head_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

void collect_subtrees(const ProofNode& n, std::vector<const ProofNode*>& out) {
  for (const auto& c : n.children) {
    if (c.foreign_leaf()) continue;
    out.push_back(&c);
    collect_subtrees(c, out);
  }
}

void collect_leaves(const ProofNode& n, SupportSet& out) {
  if (n.foreign_leaf()) {
    out.insert({n.literal, n.agent});
    return;
  }
  for (const auto& c : n.children) collect_leaves(c, out);
}

void collect_local_nodes(const ProofNode& n, std::vector<const ProofNode*>& out) {
  if (n.foreign_leaf()) return;
  out.push_back(&n);
  for (const auto& c : n.children) collect_local_nodes(c, out);
}

}  // namespace

std::vector<Rule> extended_rules(const System& system, const QueryContext& ctx, const AgentId& agent,
                                 bool with_focus) {
  const AgentSpec* spec = system.find_agent(agent);
  if (!spec) return {};
  std::vector<Rule> out = ground_rules(spec->rules, context_pool(system, ctx));
  if (!with_focus) return out;
  std::set<Literal> seen;
  for (const auto& f : ctx.focus) {
    if (!seen.insert(f.head.bare()).second) continue;
    Rule r = f;
    r.id = "focus_" + f.id;
    r.kind = RuleKind::Focus;
    r.head = f.head.bare();
    r.context = ctx.id;
    out.push_back(std::move(r));
  }
  return out;
}

std::map<AgentId, std::vector<Rule>> instantiate_schematic(const System& system, const QueryContext& ctx,
                                                           const std::optional<std::set<AgentId>>& focus_holders) {
  std::map<AgentId, std::vector<Rule>> out;
  std::map<AgentId, std::vector<Rule>> schematic;
  std::map<AgentId, std::set<Literal>> heads;
  std::map<AgentId, std::set<std::string>> ids;
  for (const auto& a : system.agents) {
    const bool holds = !focus_holders || focus_holders->count(a.id) > 0;
    for (auto& r : extended_rules(system, ctx, a.id, holds)) {
      const bool has_schematic =
          std::any_of(r.body.begin(), r.body.end(), [](const Literal& b) { return b.source.is_schematic(); });
      if (has_schematic) {
        schematic[a.id].push_back(std::move(r));
      } else {
        heads[a.id].insert(r.head.bare());
        ids[a.id].insert(r.id);
        out[a.id].push_back(std::move(r));
      }
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : system.agents) {
      for (const auto& r : schematic[a.id]) {
        // Per member: candidate sources, empty optional meaning "local".
        std::vector<std::vector<std::optional<AgentId>>> options;
        for (const auto& b : r.body) {
          std::vector<std::optional<AgentId>> opts;
          if (!b.source.is_schematic()) {
            opts.push_back(b.source.is_local() ? std::nullopt : std::optional<AgentId>(b.source.agent));
          } else {
            const Literal bl = b.bare();
            if (heads[a.id].count(bl) && bl != r.head.bare()) opts.push_back(std::nullopt);
            for (const auto& k : a.known)
              if (k != a.id && k != ctx.originator && present(system, k) && heads[k].count(bl)) opts.push_back(k);
          }
          if (opts.empty()) break;
          options.push_back(std::move(opts));
        }
        if (options.size() != r.body.size()) continue;

        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
          Rule inst = r;
          std::string suffix;
          for (std::size_t m = 0; m < r.body.size(); ++m) {
            const auto& choice = options[m][pick[m]];
            if (!r.body[m].source.is_schematic()) continue;
            inst.body[m].source = choice ? Source::of(*choice) : Source::local();
            if (!suffix.empty()) suffix += ',';
            suffix += choice ? choice->str() : "local";
          }
          inst.id = r.id + "@" + suffix;
          if (ids[a.id].insert(inst.id).second) {
            heads[a.id].insert(inst.head.bare());
            out[a.id].push_back(std::move(inst));
            changed = true;
          }
          std::size_t k = options.size();
          bool more = false;
          while (k > 0) {
            --k;
            if (++pick[k] < options[k].size()) {
              more = true;
              break;
            }
            pick[k] = 0;
          }
          if (!more) break;
        }
      }
    }
  }
  return out;
}

std::string ProofNode::key() const {
  std::string s = literal.atom_text() + "@" + agent.str();
  if (foreign_leaf()) return s;
  s += "[" + rule + "](";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) s += ",";
    s += children[i].key();
  }
  return s + ")";
}

const Argument* SupportRelation::find(const std::string& key) const {
  for (const auto& a : arguments)
    if (a.key() == key) return &a;
  return nullptr;
}

SupportRelation build_support_relation(const System& system, const QueryContext& ctx, SrOptions options) {
  SupportRelation sr;
  sr.ctx = ctx.id;
  const auto rules = instantiate_schematic(system, ctx, options.focus_holders);

  std::vector<Argument> candidates;
  std::set<std::string> seen;
  TreeBuilder builder(rules, options.node_budget);
  try {
    for (const auto& a : system.agents)
      for (auto& t : builder.all_trees(a.id)) {
        Argument arg{a.id, std::move(t)};
        if (seen.insert(arg.key()).second) candidates.push_back(std::move(arg));
      }
  } catch (const BudgetExhausted&) {
    sr.diagnostics.push_back("SR_NODE_BUDGET: tree enumeration stopped after " + std::to_string(options.node_budget) +
                             " nodes; the support relation is incomplete");
  }

  // Well-founded support: admit an argument once every foreign leaf is the
  // conclusion of an admitted argument of the leaf's agent.
  std::set<LocatedLiteral> concluded;
  std::vector<bool> admitted(candidates.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (admitted[i]) continue;
      const SupportSet leaves = foreign_support(candidates[i].tree);
      if (std::all_of(leaves.begin(), leaves.end(), [&](const LocatedLiteral& l) { return concluded.count(l) > 0; })) {
        admitted[i] = true;
        concluded.insert({candidates[i].conclusion(), candidates[i].owner});
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (admitted[i]) sr.arguments.push_back(std::move(candidates[i]));
  std::sort(sr.arguments.begin(), sr.arguments.end(), [](const Argument& a, const Argument& b) {
    return std::tie(a.owner, a.tree.literal) < std::tie(b.owner, b.tree.literal) ||
           (std::tie(a.owner, a.tree.literal) == std::tie(b.owner, b.tree.literal) && a.key() < b.key());
  });
  return sr;
}

std::vector<const Argument*> maximal_arguments(const SupportRelation& sr) {
  std::set<std::string> inner;
  for (const auto& a : sr.arguments)
    for (const auto* s : subarguments(a)) inner.insert(s->key());
  std::vector<const Argument*> out;
  for (const auto& a : sr.arguments)
    if (!a.tree.fact() && !inner.count(a.key())) out.push_back(&a);
  return out;
}

std::vector<const ProofNode*> subarguments(const Argument& a) {
  std::vector<const ProofNode*> out;
  collect_subtrees(a.tree, out);
  return out;
}

SupportSet foreign_support(const ProofNode& tree) {
  SupportSet out;
  collect_leaves(tree, out);
  return out;
}

bool strict_only(const ProofNode& tree) {
  if (tree.foreign_leaf() || !tree.strict) return false;
  return std::all_of(tree.children.begin(), tree.children.end(), [](const ProofNode& c) { return strict_only(c); });
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::Justified: return "justified";
    case Label::Rejected: return "rejected";
    case Label::Undecided: return "undecided";
  }
  return "?";
}

Label Labeling::of(const Argument& a) const {
  auto it = labels.find(a.key());
  return it == labels.end() ? Label::Undecided : it->second;
}

Labeling label(const SupportRelation& sr, const System& system) {
  const std::size_t n = sr.arguments.size();
  std::map<std::string, std::size_t> index;
  std::map<LocatedLiteral, std::vector<std::size_t>> by_conclusion;
  for (std::size_t i = 0; i < n; ++i) {
    index[sr.arguments[i].key()] = i;
    by_conclusion[{sr.arguments[i].conclusion(), sr.arguments[i].owner}].push_back(i);
  }

  struct Attack {
    std::size_t attacker;
    bool weaker;  // attacker cannot defeat the attacked node
  };
  struct Info {
    std::vector<std::size_t> subs;
    std::vector<std::vector<std::size_t>> leaf_supporters;
    std::vector<Attack> attacks;
  };
  std::vector<Info> info(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Argument& a = sr.arguments[i];
    const AgentSpec* spec = system.find_agent(a.owner);
    const std::vector<AgentId> pref = spec ? spec->preference : std::vector<AgentId>{};
    for (const auto* s : subarguments(a)) info[i].subs.push_back(index.at(s->key()));
    for (const auto& leaf : foreign_support(a.tree)) info[i].leaf_supporters.push_back(by_conclusion[leaf]);

    std::vector<const ProofNode*> nodes;
    collect_local_nodes(a.tree, nodes);
    for (const ProofNode* node : nodes) {
      auto opp = by_conclusion.find({node->literal.complement(), a.owner});
      if (opp == by_conclusion.end()) continue;
      const bool node_strict = strict_only(*node);
      const int node_rank = support_rank(foreign_support(*node), pref, a.owner);
      for (std::size_t b : opp->second) {
        const ProofNode& bt = sr.arguments[b].tree;
        const bool b_strict = strict_only(bt);
        bool weaker;
        if (node_strict || b_strict)
          weaker = node_strict && !b_strict;
        else
          weaker = support_rank(foreign_support(bt), pref, a.owner) > node_rank;
        info[i].attacks.push_back({b, weaker});
      }
    }
  }

  std::vector<Label> lab(n, Label::Undecided);
  Labeling out;
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.iterations;
    for (std::size_t i = 0; i < n; ++i) {
      if (lab[i] != Label::Undecided) continue;
      const Info& in = info[i];
      auto is = [&](std::size_t k, Label l) { return lab[k] == l; };

      const bool rejected =
          std::any_of(in.subs.begin(), in.subs.end(), [&](std::size_t k) { return is(k, Label::Rejected); }) ||
          std::any_of(in.leaf_supporters.begin(), in.leaf_supporters.end(),
                      [&](const std::vector<std::size_t>& sup) {
                        return std::all_of(sup.begin(), sup.end(), [&](std::size_t k) { return is(k, Label::Rejected); });
                      }) ||
          std::any_of(in.attacks.begin(), in.attacks.end(),
                      [&](const Attack& at) { return !at.weaker && is(at.attacker, Label::Justified); });
      if (rejected) {
        lab[i] = Label::Rejected;
        changed = true;
        continue;
      }
      const bool justified =
          std::all_of(in.subs.begin(), in.subs.end(), [&](std::size_t k) { return is(k, Label::Justified); }) &&
          std::all_of(in.leaf_supporters.begin(), in.leaf_supporters.end(),
                      [&](const std::vector<std::size_t>& sup) {
                        return std::any_of(sup.begin(), sup.end(), [&](std::size_t k) { return is(k, Label::Justified); });
                      }) &&
          std::all_of(in.attacks.begin(), in.attacks.end(),
                      [&](const Attack& at) { return at.weaker || is(at.attacker, Label::Rejected); });
      if (justified) {
        lab[i] = Label::Justified;
        changed = true;
      }
    }
    out.justified_per_round.push_back(
        static_cast<std::size_t>(std::count(lab.begin(), lab.end(), Label::Justified)));
  }
  for (std::size_t i = 0; i < n; ++i) out.labels[sr.arguments[i].key()] = lab[i];
  return out;
}

TruthValue labeled_answer(const SupportRelation& sr, const Labeling& labeling, const System& system,
                          const QueryContext& ctx, const AgentId& agent, const Literal& p) {
  const Literal q = p.bare();
  const auto rules = extended_rules(system, ctx, agent);
  const bool defined = std::any_of(rules.begin(), rules.end(), [&](const Rule& r) {
    return r.head.bare() == q || r.head.bare() == q.complement();
  });
  if (!defined) return TruthValue::Undefined;

  bool pos_justified = false, neg_justified = false, all_pos_rejected = true, any_pos = false;
  for (const auto& a : sr.arguments) {
    if (a.owner != agent) continue;
    const Label l = labeling.of(a);
    if (a.conclusion() == q) {
      any_pos = true;
      pos_justified |= l == Label::Justified;
      all_pos_rejected &= l == Label::Rejected;
    } else if (a.conclusion() == q.complement()) {
      neg_justified |= l == Label::Justified;
    }
  }
  if (pos_justified) return TruthValue::True;
  if (neg_justified) return TruthValue::False;
  // With no argument at all, a dependency cycle may be what keeps p open.
  if (all_pos_rejected && (any_pos || acyclic_query(system, ctx, agent, q))) return TruthValue::False;
  return TruthValue::Undefined;
}

}  // namespace cdl
