#include "cdl/local_theory.hpp"

#include <algorithm>
#include <deque>

namespace cdl {

LocalTheory::LocalTheory(AgentId owner, ConstantPool base_constants)
    : owner_(std::move(owner)), base_(std::move(base_constants)), seen_(base_) {}

void LocalTheory::add_rule(const Rule& rule) {
  closure_cache_.clear();
  if (rule.ground()) {
    add_instance(rule, rule);
    return;
  }
  templates_.push_back(rule);
  for (auto& inst : instantiate(rule, seen_)) add_instance(std::move(inst), rule);
}

void LocalTheory::add_instance(Rule rule, const Rule& parent) {
  if (!entry_ids_.insert(rule.id).second) return;
  Entry e;
  const auto own = constants_of(parent);
  for (const auto& c : constants_of(rule))
    if (!own.count(c) && !base_.count(c)) e.needs.push_back(c);
  by_head_[rule.head.bare()].push_back(entries_.size());
  e.rule = std::move(rule);
  entries_.push_back(std::move(e));
}

void LocalTheory::regrounding(const ConstantPool& fresh) {
  bool grew = false;
  for (const auto& c : fresh) grew |= seen_.insert(c).second;
  if (!grew) return;
  for (std::size_t t = 0; t < templates_.size(); ++t) {
    const Rule tmpl = templates_[t];
    for (auto& inst : instantiate(tmpl, seen_)) add_instance(std::move(inst), tmpl);
  }
}

std::size_t LocalTheory::install_focus(const QueryContextId& ctx, std::span<const Rule> focus) {
  closure_cache_.clear();
  auto& pool = ctx_constants_[ctx];
  ConstantPool fresh;
  for (const auto& f : focus) fresh.merge(constants_of(f));
  pool.insert(fresh.begin(), fresh.end());
  regrounding(fresh);

  std::size_t added = 0;
  for (const auto& f : focus) {
    const Literal head = f.head.bare();
    bool present = false;
    if (auto it = by_head_.find(head); it != by_head_.end())
      for (auto i : it->second)
        present |= entries_[i].rule.context == ctx;
    if (present) continue;
    Rule r;
    r.id = "tr" + std::to_string(focus_counter_++);
    r.kind = RuleKind::DefeasibleLocal;
    r.head = head;
    r.context = ctx;
    Entry e;
    e.rule = std::move(r);
    entry_ids_.insert(e.rule.id);
    by_head_[head].push_back(entries_.size());
    entries_.push_back(std::move(e));
    ++added;
  }
  return added;
}

bool LocalTheory::visible(const Entry& e, const QueryContextId& ctx) const {
  if (!e.rule.visible_in(ctx)) return false;
  if (e.needs.empty()) return true;
  auto it = ctx_constants_.find(ctx);
  if (it == ctx_constants_.end()) return false;
  return std::all_of(e.needs.begin(), e.needs.end(), [&](const std::string& c) { return it->second.count(c) > 0; });
}

std::vector<const Rule*> LocalTheory::relevant_rules(const QueryContextId& ctx, const Literal& p) const {
  std::vector<const Rule*> out;
  auto it = by_head_.find(p.bare());
  if (it == by_head_.end()) return out;
  for (auto i : it->second)
    if (visible(entries_[i], ctx)) out.push_back(&entries_[i].rule);
  std::sort(out.begin(), out.end(), [](const Rule* a, const Rule* b) { return a->id < b->id; });
  if (access_log_)
    for (const Rule* r : out) access_log_(ctx, *r);
  return out;
}

bool LocalTheory::defines(const QueryContextId& ctx, const Literal& p) const {
  for (const Literal& h : {p.bare(), p.bare().complement()}) {
    auto it = by_head_.find(h);
    if (it == by_head_.end()) continue;
    for (auto i : it->second)
      if (visible(entries_[i], ctx)) return true;
  }
  return false;
}

std::vector<const Rule*> LocalTheory::visible_rules(const QueryContextId& ctx) const {
  std::vector<const Rule*> out;
  for (const auto& e : entries_)
    if (visible(e, ctx)) out.push_back(&e.rule);
  return out;
}

const std::set<Literal>& LocalTheory::closure(const QueryContextId& ctx) const {
  if (auto it = closure_cache_.find(ctx); it != closure_cache_.end()) return it->second;
  std::vector<const Rule*> strict;
  for (const auto& e : entries_)
    if (e.rule.is_strict() && visible(e, ctx)) strict.push_back(&e.rule);
  return closure_cache_[ctx] = strict_closure(strict);
}

bool LocalTheory::locally(const QueryContextId& ctx, const Literal& p) const {
  return closure(ctx).count(p.bare()) > 0;
}

std::set<Literal> strict_closure(std::span<const Rule* const> strict_rules) {
  // Each rule fires once its count of underived body members reaches zero.
  std::vector<std::size_t> missing(strict_rules.size());
  std::map<Literal, std::vector<std::size_t>> waiting;
  std::deque<Literal> agenda;
  std::set<Literal> derived;
  for (std::size_t i = 0; i < strict_rules.size(); ++i) {
    std::set<Literal> body;
    for (const auto& b : strict_rules[i]->body) body.insert(b.bare());
    missing[i] = body.size();
    for (const auto& b : body) waiting[b].push_back(i);
    if (body.empty()) agenda.push_back(strict_rules[i]->head.bare());
  }
  while (!agenda.empty()) {
    Literal l = std::move(agenda.front());
    agenda.pop_front();
    if (!derived.insert(l).second) continue;
    if (auto it = waiting.find(l); it != waiting.end())
      for (auto i : it->second)
        if (--missing[i] == 0) agenda.push_back(strict_rules[i]->head.bare());
  }
  return derived;
}

}  // namespace cdl
