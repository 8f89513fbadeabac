#pragma once

#include "cdl/local_theory.hpp"
#include "cdl/messages.hpp"
#include "cdl/system.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cdl {

/// How a resolved body member (one candidate supplier) counts for its rule.
struct MemberStatus {
  enum class Kind { True, Failed, CycleTainted };

  Kind kind = Kind::Failed;
  SupportSet ss;  // meaningful for True
  SupportSet bs;  // True and CycleTainted

  static MemberStatus failed() { return {}; }
  static MemberStatus truth(SupportSet ss, SupportSet bs) { return {Kind::True, std::move(ss), std::move(bs)}; }
  static MemberStatus cycle(SupportSet bs) { return {Kind::CycleTainted, {}, std::move(bs)}; }
};

enum class RuleStatus { Open, Applicable, UnblockedOnly, Blocked };

/// Best supportive / blocking sets found so far for one side (p or ~p).
struct BestSets {
  std::optional<SupportSet> ss;
  std::optional<SupportSet> bs;
  std::string ss_rule;
  std::string bs_rule;
};

/// What an agent concluded for one (literal, history) in a context.
struct Decision {
  Literal literal;
  std::vector<LocatedLiteral> history;
  TruthValue tv = TruthValue::Undefined;
  BestSets positive;
  BestSets negative;
  std::map<std::string, RuleStatus> rules;  // rule id -> final status
};

/// Per-context bookkeeping: the context itself, the evaluation instances
/// keyed by (literal, history) and the memoised answers.
struct ContextState {
  QueryContext context;
  std::map<std::pair<Literal, std::vector<LocatedLiteral>>, std::size_t> instances;
  std::map<std::pair<Literal, std::vector<LocatedLiteral>>, AnswerMsg> memo;
  std::vector<Decision> decisions;
};

/// One reasoning agent. Processes a single inbound message to completion and
/// appends whatever it sends to the outbox; holds no reference to other
/// agents.
class Agent {
public:
  explicit Agent(AgentSpec spec, ConstantPool base_constants = {});

  const AgentId& id() const noexcept { return spec_.id; }
  const AgentSpec& spec() const noexcept { return spec_; }
  const LocalTheory& theory() const noexcept { return theory_; }
  LocalTheory& theory() noexcept { return theory_; }

  /// Opens a fresh context originated here and evaluates `literal` with the
  /// given focus facts, either locally or at `ask`. The result shows up in
  /// final_answer() once every sub-query has returned.
  QueryContextId start_query(const Literal& literal, const std::vector<Literal>& focus,
                             std::vector<Envelope>& outbox, std::optional<AgentId> ask = std::nullopt);

  void receive(const Envelope& envelope, std::vector<Envelope>& outbox);

  std::optional<AnswerMsg> final_answer(const QueryContextId& ctx) const;
  const ContextState* context_state(const QueryContextId& ctx) const;
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  /// Number of evaluation instances still waiting on sub-answers.
  std::size_t open_instances() const;

private:
  struct Waiter {
    enum class Kind { Observer, Remote, Member };
    Kind kind = Kind::Observer;
    QueryContextId ctx;
    AgentId agent;            // Remote: who asked
    std::uint64_t corr = 0;   // Remote: their correlation id
    std::size_t instance = 0; // Member: which rule slot waits
    std::size_t rule = 0;
    std::size_t member = 0;
    std::size_t candidate = 0;
  };

  struct Candidate {
    AgentId at;
    std::optional<MemberStatus> status;
  };

  struct MemberSlot {
    Literal literal;
    std::vector<Candidate> candidates;
  };

  struct PendingRule {
    std::string rule_id;
    bool for_complement = false;
    std::vector<MemberSlot> members;
    std::size_t unresolved = 0;
    RuleStatus status = RuleStatus::Open;
  };

  struct Instance {
    QueryContextId ctx;
    Literal literal;
    History history;
    std::vector<Waiter> callers;
    std::vector<PendingRule> rules;
    std::size_t open_rules = 0;
    bool dispatching = false;
    bool done = false;
    BestSets positive;
    BestSets negative;
  };

  struct Outstanding {
    QueryContextId ctx;
    Literal literal;
    AgentId to;
    std::vector<LocatedLiteral> key;
    std::vector<Waiter> waiters;
  };

  using RemoteKey = std::tuple<QueryContextId, AgentId, Literal, std::vector<LocatedLiteral>>;

  ContextState& ensure_context(const QueryContextId& ctx, const AgentId& originator, const std::vector<Rule>& focus);
  void handle_query(const QueryMsg& q);
  void handle_answer(const AnswerMsg& a);

  void request(const QueryContextId& ctx, const Literal& literal, const History& history, Waiter waiter);
  void start(std::size_t idx);
  void dispatch(std::size_t idx, std::size_t r, std::size_t m, std::size_t c);
  void ask_remote(const QueryContextId& ctx, const Literal& literal, const AgentId& to, const History& history,
                  Waiter waiter);
  void resolve(std::size_t idx, std::size_t r, std::size_t m, std::size_t c, MemberStatus status);
  void complete_rule(std::size_t idx, std::size_t r);
  void finish(std::size_t idx, AnswerMsg answer);
  void decide_and_finish(std::size_t idx);
  void deliver(const Waiter& w, const AnswerMsg& answer, const LocatedLiteral& asked);

  AgentSpec spec_;
  LocalTheory theory_;
  std::map<QueryContextId, ContextState> contexts_;
  std::deque<Instance> instances_;
  std::map<std::uint64_t, Outstanding> outstanding_;
  std::map<RemoteKey, std::uint64_t> outstanding_by_key_;
  std::map<RemoteKey, AnswerMsg> remote_answers_;
  std::map<QueryContextId, AnswerMsg> finals_;
  std::vector<std::string> notes_;
  std::uint64_t next_corr_ = 1;
  std::uint64_t next_ctx_ = 1;
  std::vector<Envelope>* outbox_ = nullptr;
};

}  // namespace cdl
