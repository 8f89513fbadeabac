#include "cdl/agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdl {

namespace {

SupportSet merged(SupportSet a, const SupportSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace

Agent::Agent(AgentSpec spec, ConstantPool base_constants)
    : spec_(std::move(spec)), theory_(spec_.id, std::move(base_constants)) {
  for (const auto& r : spec_.rules) theory_.add_rule(r);
}

QueryContextId Agent::start_query(const Literal& literal, const std::vector<Literal>& focus,
                                  std::vector<Envelope>& outbox, std::optional<AgentId> ask) {
  if (!literal.ground()) throw std::invalid_argument("query literal must be ground: " + literal.text());
  for (const auto& f : focus)
    if (!f.ground()) throw std::invalid_argument("focus fact must be ground: " + f.text());

  outbox_ = &outbox;
  const QueryContextId ctx = id().str() + "/" + std::to_string(next_ctx_++);
  const auto focus_rules = make_focus_rules(ctx, focus);
  ensure_context(ctx, id(), focus_rules);

  Waiter observer;
  observer.kind = Waiter::Kind::Observer;
  observer.ctx = ctx;
  const Literal p = literal.bare();
  const AgentId where = ask.value_or(id());
  History h;
  h.visited.push_back({p, where});
  if (where == id())
    request(ctx, p, h, observer);
  else
    ask_remote(ctx, p, where, h, observer);
  outbox_ = nullptr;
  return ctx;
}

void Agent::receive(const Envelope& envelope, std::vector<Envelope>& outbox) {
  outbox_ = &outbox;
  if (const auto* q = std::get_if<QueryMsg>(&envelope.msg))
    handle_query(*q);
  else
    handle_answer(std::get<AnswerMsg>(envelope.msg));
  outbox_ = nullptr;
}

ContextState& Agent::ensure_context(const QueryContextId& ctx, const AgentId& originator,
                                    const std::vector<Rule>& focus) {
  auto [it, fresh] = contexts_.try_emplace(ctx);
  if (fresh) {
    it->second.context = QueryContext{ctx, originator, focus};
    theory_.install_focus(ctx, focus);
  }
  return it->second;
}

void Agent::handle_query(const QueryMsg& q) {
  ensure_context(q.ctx, q.originator, q.focus);
  Waiter w;
  w.kind = Waiter::Kind::Remote;
  w.ctx = q.ctx;
  w.agent = q.sender;
  w.corr = q.corr;
  request(q.ctx, q.literal.bare(), q.history, w);
}

void Agent::handle_answer(const AnswerMsg& a) {
  auto it = outstanding_.find(a.reply_to);
  if (it == outstanding_.end()) {
    notes_.push_back("stray answer for " + a.literal.atom_text() + " in " + a.ctx + " from " + a.sender.str());
    return;
  }
  Outstanding o = std::move(it->second);
  outstanding_.erase(it);
  const RemoteKey key{o.ctx, o.to, o.literal, o.key};
  outstanding_by_key_.erase(key);
  remote_answers_.emplace(key, a);
  const LocatedLiteral asked{o.literal, o.to};
  for (const auto& w : o.waiters) deliver(w, a, asked);
}

void Agent::request(const QueryContextId& ctx, const Literal& literal, const History& history, Waiter waiter) {
  auto& cs = contexts_.at(ctx);
  const auto key = std::make_pair(literal, history.key());
  const LocatedLiteral self{literal, id()};
  if (auto m = cs.memo.find(key); m != cs.memo.end()) {
    deliver(waiter, m->second, self);
    return;
  }
  if (auto i = cs.instances.find(key); i != cs.instances.end()) {
    instances_[i->second].callers.push_back(std::move(waiter));
    return;
  }
  const std::size_t idx = instances_.size();
  Instance inst;
  inst.ctx = ctx;
  inst.literal = literal;
  inst.history = history;
  inst.callers.push_back(std::move(waiter));
  instances_.push_back(std::move(inst));
  cs.instances.emplace(key, idx);
  start(idx);
}

void Agent::start(std::size_t idx) {
  Instance& inst = instances_[idx];
  const QueryContextId ctx = inst.ctx;
  const Literal p = inst.literal;
  const Literal np = p.complement();

  const bool lp = theory_.locally(ctx, p);
  const bool ln = theory_.locally(ctx, np);
  AnswerMsg ans;
  ans.ctx = ctx;
  ans.literal = p;
  ans.sender = id();
  if (lp || ln) {
    if (lp && !ln) {
      ans.tv = TruthValue::True;
      ans.ss = SupportSet{};
      ans.bs = SupportSet{};
    } else if (ln && !lp) {
      ans.tv = TruthValue::False;
    } else {
      // Strictly inconsistent: neither side may be asserted.
      ans.tv = TruthValue::Undefined;
      ans.bs = SupportSet{};
    }
    finish(idx, std::move(ans));
    return;
  }
  if (!theory_.defines(ctx, p)) {
    finish(idx, std::move(ans));
    return;
  }

  const AgentId& originator = contexts_.at(ctx).context.originator;
  for (const bool complement : {false, true}) {
    for (const Rule* rule : theory_.relevant_rules(ctx, complement ? np : p)) {
      PendingRule pr;
      pr.rule_id = rule->id;
      pr.for_complement = complement;
      for (const auto& b : rule->body) {
        MemberSlot slot;
        slot.literal = b;
        switch (b.source.kind) {
          case Source::Kind::Local:
            slot.candidates.push_back({id(), std::nullopt});
            break;
          case Source::Kind::Agent:
            slot.candidates.push_back({b.source.agent, std::nullopt});
            break;
          case Source::Kind::Schematic:
            slot.candidates.push_back({id(), std::nullopt});
            for (const auto& k : spec_.known)
              if (k != id() && k != originator) slot.candidates.push_back({k, std::nullopt});
            break;
        }
        pr.unresolved += slot.candidates.size();
        pr.members.push_back(std::move(slot));
      }
      inst.rules.push_back(std::move(pr));
    }
  }
  inst.open_rules = inst.rules.size();
  inst.dispatching = true;

  const std::size_t nrules = inst.rules.size();
  for (std::size_t r = 0; r < nrules; ++r) {
    if (instances_[idx].rules[r].unresolved == 0) {
      complete_rule(idx, r);
      continue;
    }
    const std::size_t nmembers = instances_[idx].rules[r].members.size();
    for (std::size_t m = 0; m < nmembers; ++m) {
      const std::size_t ncand = instances_[idx].rules[r].members[m].candidates.size();
      for (std::size_t c = 0; c < ncand; ++c) dispatch(idx, r, m, c);
    }
  }
  Instance& after = instances_[idx];
  after.dispatching = false;
  if (after.open_rules == 0 && !after.done) decide_and_finish(idx);
}

void Agent::dispatch(std::size_t idx, std::size_t r, std::size_t m, std::size_t c) {
  const Instance& inst = instances_[idx];
  const MemberSlot& slot = inst.rules[r].members[m];
  const AgentId at = slot.candidates[c].at;
  const LocatedLiteral entry{slot.literal.bare(), at};

  Waiter w;
  w.kind = Waiter::Kind::Member;
  w.ctx = inst.ctx;
  w.instance = idx;
  w.rule = r;
  w.member = m;
  w.candidate = c;

  if (at == id()) {
    // A local literal already on the chain cannot support its own rule.
    if (inst.history.contains(entry)) {
      resolve(idx, r, m, c, MemberStatus::failed());
      return;
    }
    const History h = inst.history.extended(entry);
    const QueryContextId ctx = inst.ctx;
    request(ctx, entry.literal, h, w);
    return;
  }
  if (inst.history.contains(entry)) {
    resolve(idx, r, m, c, MemberStatus::cycle({entry}));
    return;
  }
  const History h = inst.history.extended(entry);
  const QueryContextId ctx = inst.ctx;
  ask_remote(ctx, entry.literal, at, h, w);
}

void Agent::ask_remote(const QueryContextId& ctx, const Literal& literal, const AgentId& to, const History& history,
                       Waiter waiter) {
  const RemoteKey key{ctx, to, literal, history.key()};
  if (auto a = remote_answers_.find(key); a != remote_answers_.end()) {
    deliver(waiter, a->second, {literal, to});
    return;
  }
  if (auto o = outstanding_by_key_.find(key); o != outstanding_by_key_.end()) {
    outstanding_.at(o->second).waiters.push_back(std::move(waiter));
    return;
  }
  const std::uint64_t corr = next_corr_++;
  outstanding_.emplace(corr, Outstanding{ctx, literal, to, history.key(), {std::move(waiter)}});
  outstanding_by_key_.emplace(key, corr);

  const auto& cs = contexts_.at(ctx);
  QueryMsg q;
  q.ctx = ctx;
  q.originator = cs.context.originator;
  q.literal = literal;
  q.history = history;
  q.focus = cs.context.focus;
  q.sender = id();
  q.corr = corr;
  outbox_->push_back(Envelope{id(), to, std::move(q)});
}

void Agent::deliver(const Waiter& w, const AnswerMsg& answer, const LocatedLiteral& asked) {
  switch (w.kind) {
    case Waiter::Kind::Observer:
      finals_[w.ctx] = answer;
      return;
    case Waiter::Kind::Remote: {
      AnswerMsg out = answer;
      out.sender = id();
      out.reply_to = w.corr;
      outbox_->push_back(Envelope{id(), w.agent, std::move(out)});
      return;
    }
    case Waiter::Kind::Member:
      break;
  }
  MemberStatus status;
  const bool local = asked.agent == id();
  if (answer.tv == TruthValue::True) {
    if (local)
      status = MemberStatus::truth(answer.ss.value_or(SupportSet{}), answer.bs.value_or(answer.ss.value_or(SupportSet{})));
    else
      status = MemberStatus::truth({asked}, {asked});
  } else if (answer.tv == TruthValue::Undefined && answer.bs) {
    status = MemberStatus::cycle(local ? *answer.bs : SupportSet{asked});
  } else {
    status = MemberStatus::failed();
  }
  resolve(w.instance, w.rule, w.member, w.candidate, std::move(status));
}

void Agent::resolve(std::size_t idx, std::size_t r, std::size_t m, std::size_t c, MemberStatus status) {
  PendingRule& pr = instances_[idx].rules[r];
  auto& cand = pr.members[m].candidates[c];
  if (cand.status) return;
  cand.status = std::move(status);
  if (--pr.unresolved == 0) complete_rule(idx, r);
}

void Agent::complete_rule(std::size_t idx, std::size_t r) {
  Instance& inst = instances_[idx];
  PendingRule& pr = inst.rules[r];
  BestSets& best = pr.for_complement ? inst.negative : inst.positive;

  // Usable suppliers per member; a member with none blocks the rule.
  std::vector<std::vector<const MemberStatus*>> options;
  bool blocked = false;
  for (const auto& slot : pr.members) {
    std::vector<const MemberStatus*> usable;
    for (const auto& cand : slot.candidates)
      if (cand.status && cand.status->kind != MemberStatus::Kind::Failed) usable.push_back(&*cand.status);
    blocked |= usable.empty();
    options.push_back(std::move(usable));
  }

  if (blocked) {
    pr.status = RuleStatus::Blocked;
  } else {
    // Every combination of suppliers is one instantiation of the rule.
    pr.status = RuleStatus::UnblockedOnly;
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      bool all_true = true;
      SupportSet ss, bs;
      for (std::size_t m = 0; m < options.size(); ++m) {
        const MemberStatus& s = *options[m][pick[m]];
        all_true &= s.kind == MemberStatus::Kind::True;
        ss = merged(std::move(ss), s.ss);
        bs = merged(std::move(bs), s.bs);
      }
      if (all_true) {
        pr.status = RuleStatus::Applicable;
        if (!best.ss || stronger(ss, *best.ss, spec_.preference, id())) {
          best.ss = ss;
          best.ss_rule = pr.rule_id;
        }
      }
      if (!best.bs || stronger(bs, *best.bs, spec_.preference, id())) {
        best.bs = std::move(bs);
        best.bs_rule = pr.rule_id;
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

  if (--inst.open_rules == 0 && !inst.dispatching && !inst.done) decide_and_finish(idx);
}

void Agent::decide_and_finish(std::size_t idx) {
  const Instance& inst = instances_[idx];
  const auto& pref = spec_.preference;
  const auto& ssp = inst.positive.ss;
  const auto& bsp = inst.positive.bs;
  const auto& ssn = inst.negative.ss;
  const auto& bsn = inst.negative.bs;
  auto str = [&](const SupportSet& a, const SupportSet& b) { return stronger(a, b, pref, id()); };

  AnswerMsg ans;
  ans.ctx = inst.ctx;
  ans.literal = inst.literal;
  ans.sender = id();
  ans.bs = bsp;
  ans.ss = ssp;
  if (ssp && (!bsn || str(*ssp, *bsn)))
    ans.tv = TruthValue::True;
  else if (!bsp || ((!ssp || (bsn && str(*bsn, *ssp))) && ssn && str(*ssn, *bsp)))
    ans.tv = TruthValue::False;
  else
    ans.tv = TruthValue::Undefined;
  finish(idx, std::move(ans));
}

void Agent::finish(std::size_t idx, AnswerMsg answer) {
  Instance& inst = instances_[idx];
  inst.done = true;
  auto& cs = contexts_.at(inst.ctx);
  const auto key = std::make_pair(inst.literal, inst.history.key());
  cs.memo[key] = answer;

  Decision d;
  d.literal = inst.literal;
  d.history = inst.history.visited;
  d.tv = answer.tv;
  d.positive = inst.positive;
  d.negative = inst.negative;
  for (const auto& pr : inst.rules) d.rules[pr.rule_id] = pr.status;
  cs.decisions.push_back(std::move(d));

  std::vector<Waiter> callers = std::move(inst.callers);
  inst.callers.clear();
  inst.rules.clear();
  const LocatedLiteral self{answer.literal, id()};
  for (const auto& w : callers) deliver(w, answer, self);
}

std::optional<AnswerMsg> Agent::final_answer(const QueryContextId& ctx) const {
  if (auto it = finals_.find(ctx); it != finals_.end()) return it->second;
  return std::nullopt;
}

const ContextState* Agent::context_state(const QueryContextId& ctx) const {
  auto it = contexts_.find(ctx);
  return it == contexts_.end() ? nullptr : &it->second;
}

std::size_t Agent::open_instances() const {
  return static_cast<std::size_t>(std::count_if(instances_.begin(), instances_.end(),
                                                [](const Instance& i) { return !i.done; }));
}

}  // namespace cdl
