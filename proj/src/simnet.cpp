#include "cdl/simnet.hpp"

#include <sstream>

namespace cdl {

std::string_view to_string(SchedulePolicy p) {
  switch (p) {
    case SchedulePolicy::Random: return "random";
    case SchedulePolicy::Fifo: return "fifo";
    case SchedulePolicy::Lifo: return "lifo";
  }
  return "?";
}

std::optional<SchedulePolicy> parse_schedule_policy(std::string_view s) {
  if (s == "random") return SchedulePolicy::Random;
  if (s == "fifo") return SchedulePolicy::Fifo;
  if (s == "lifo") return SchedulePolicy::Lifo;
  return std::nullopt;
}

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

AnswerMsg vocabulary_miss(const AgentId& sender, const QueryContextId& ctx, const Literal& literal,
                          std::uint64_t reply_to) {
  AnswerMsg a;
  a.ctx = ctx;
  a.literal = literal;
  a.sender = sender;
  a.reply_to = reply_to;
  return a;
}

}  // namespace

StepLimitExceeded::StepLimitExceeded(std::size_t steps, std::vector<std::string> pending)
    : std::runtime_error("no quiescence after " + std::to_string(steps) + " steps; " +
                         std::to_string(pending.size()) + " events pending:" + join_lines(pending)),
      pending_(std::move(pending)) {}

SimNet::SimNet(const System& system, SimConfig config)
    : config_(config), base_(system.constants()), rng_(config.seed) {
  for (const auto& spec : system.agents) agents_.emplace(spec.id, std::make_unique<Agent>(spec, base_));
}

SimNet::~SimNet() = default;

const Agent* SimNet::agent(const AgentId& id) const {
  auto it = agents_.find(id);
  return it == agents_.end() ? nullptr : it->second.get();
}

QueryContextId SimNet::inject(const InjectedQuery& q) {
  auto it = agents_.find(q.starter);
  if (it == agents_.end()) throw std::invalid_argument("starter " + q.starter.str() + " is not in the system");
  std::vector<Envelope> outbox;
  const QueryContextId ctx = it->second->start_query(q.literal, q.focus, outbox, q.ask);
  outcomes_.push_back({q, ctx, std::nullopt});
  post(outbox);
  return ctx;
}

void SimNet::join(AgentSpec spec) {
  if (agents_.count(spec.id)) throw std::invalid_argument("agent " + spec.id.str() + " already present");
  const AgentId id = spec.id;
  agents_.emplace(id, std::make_unique<Agent>(std::move(spec), base_));
}

void SimNet::leave(const AgentId& id) {
  if (!agents_.erase(id)) throw std::invalid_argument("agent " + id.str() + " is not present");

  // Everything the leaver still owed is replaced by "no rule here" replies.
  std::vector<Envelope> replies;
  std::vector<Event> kept;
  for (auto& ev : queue_) {
    const Envelope& e = ev.envelope;
    if (e.to != id && e.from != id) {
      kept.push_back(std::move(ev));
      continue;
    }
    ++dropped_;
    if (const auto* q = std::get_if<QueryMsg>(&e.msg); q && e.to == id) {
      replies.push_back({id, e.from, vocabulary_miss_from(id, *q)});
    } else if (const auto* a = std::get_if<AnswerMsg>(&e.msg); a && e.from == id) {
      replies.push_back({id, e.to, vocabulary_miss(id, a->ctx, a->literal, a->reply_to)});
    }
  }
  queue_ = std::move(kept);
  if (auto s = serving_.find(id); s != serving_.end()) {
    for (const auto& [req, what] : s->second)
      replies.push_back({id, req.first, vocabulary_miss(id, what.first, what.second, req.second)});
    serving_.erase(s);
  }
  for (auto& r : replies) {
    ++messages_;
    enqueue(std::move(r));
  }
}

void SimNet::post(std::vector<Envelope>& outbox) {
  for (auto& e : outbox) {
    ++messages_;
    if (const auto* a = std::get_if<AnswerMsg>(&e.msg)) {
      if (auto s = serving_.find(e.from); s != serving_.end()) s->second.erase({e.to, a->reply_to});
    }
    if (agents_.count(e.to)) {
      enqueue(std::move(e));
      continue;
    }
    // Unknown or departed addressee: the message is lost, a query is answered
    // on the addressee's behalf.
    ++dropped_;
    if (const auto* q = std::get_if<QueryMsg>(&e.msg)) {
      ++messages_;
      enqueue({e.to, e.from, vocabulary_miss_from(e.to, *q)});
    }
  }
  outbox.clear();
}

void SimNet::enqueue(Envelope e) { queue_.push_back({next_seq_++, std::move(e)}); }

bool SimNet::step() {
  if (queue_.empty()) return false;
  if (steps_ >= config_.max_steps) {
    std::vector<std::string> pending;
    for (const auto& ev : queue_) pending.push_back(describe(ev));
    throw StepLimitExceeded(steps_, std::move(pending));
  }
  std::size_t pick = 0;
  switch (config_.policy) {
    case SchedulePolicy::Fifo: pick = 0; break;
    case SchedulePolicy::Lifo: pick = queue_.size() - 1; break;
    case SchedulePolicy::Random:
      pick = std::uniform_int_distribution<std::size_t>(0, queue_.size() - 1)(rng_);
      break;
  }
  Event ev = std::move(queue_[pick]);
  queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(pick));

  auto it = agents_.find(ev.envelope.to);
  if (it == agents_.end()) {
    ++dropped_;
    return true;
  }
  ++steps_;
  trace_.push_back(TraceRecord::of(config_.seed, steps_, ev.envelope));
  if (const auto* q = std::get_if<QueryMsg>(&ev.envelope.msg))
    serving_[ev.envelope.to][{ev.envelope.from, q->corr}] = {q->ctx, q->literal};

  std::vector<Envelope> outbox;
  it->second->receive(ev.envelope, outbox);
  post(outbox);
  return true;
}

void SimNet::run_to_quiescence() {
  while (step()) {
  }
}

std::string SimNet::describe(const Event& ev) const {
  std::ostringstream out;
  const Envelope& e = ev.envelope;
  out << "#" << ev.seq << " " << e.from.str() << "->" << e.to.str() << " ";
  if (const auto* q = std::get_if<QueryMsg>(&e.msg))
    out << "query " << q->ctx << " " << q->literal.atom_text();
  else {
    const auto& a = std::get<AnswerMsg>(e.msg);
    out << "answer " << a.ctx << " " << a.literal.atom_text() << " " << to_string(a.tv);
  }
  return out.str();
}

RunResult SimNet::result() const {
  RunResult r;
  r.outcomes = outcomes_;
  for (auto& o : r.outcomes)
    if (const Agent* a = agent(o.query.starter)) o.answer = a->final_answer(o.ctx);
  r.trace = trace_;
  r.steps = steps_;
  r.messages = messages_;
  r.dropped = dropped_;
  return r;
}

RunResult run(const System& system, const std::vector<InjectedQuery>& queries, const SimConfig& config) {
  SimNet net(system, config);
  for (const auto& q : queries) net.inject(q);
  net.run_to_quiescence();
  return net.result();
}

}  // namespace cdl
