#pragma once

#include "cdl/agent.hpp"
#include "cdl/trace.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdl {

enum class SchedulePolicy { Random, Fifo, Lifo };

std::string_view to_string(SchedulePolicy p);
std::optional<SchedulePolicy> parse_schedule_policy(std::string_view s);

struct SimConfig {
  std::uint64_t seed = 0;
  std::size_t max_steps = 100'000;
  SchedulePolicy policy = SchedulePolicy::Random;
};

struct InjectedQuery {
  AgentId starter;
  Literal literal;
  std::vector<Literal> focus;
  /// Agent the starter addresses the query to; the starter itself when empty.
  std::optional<AgentId> ask;
};

struct QueryOutcome {
  InjectedQuery query;
  QueryContextId ctx;
  std::optional<AnswerMsg> answer;  // missing if the starter left before it arrived
};

struct RunResult {
  std::vector<QueryOutcome> outcomes;
  std::vector<TraceRecord> trace;
  std::size_t steps = 0;
  std::size_t messages = 0;  // sent, including synthesized replies
  std::size_t dropped = 0;   // removed by leave()
};

/// Thrown when a run does not reach quiescence within max_steps.
class StepLimitExceeded : public std::runtime_error {
public:
  StepLimitExceeded(std::size_t steps, std::vector<std::string> pending);
  const std::vector<std::string>& pending() const noexcept { return pending_; }

private:
  std::vector<std::string> pending_;
};

/// Single-threaded event loop delivering messages between agents in a
/// seeded order. Delivery is reliable and unordered.
class SimNet {
public:
  SimNet(const System& system, SimConfig config);
  ~SimNet();
  SimNet(const SimNet&) = delete;
  SimNet& operator=(const SimNet&) = delete;

  QueryContextId inject(const InjectedQuery& q);
  void join(AgentSpec spec);
  void leave(const AgentId& id);

  /// Delivers one pending message. False when nothing is pending.
  bool step();
  void run_to_quiescence();

  bool present(const AgentId& id) const { return agents_.count(id) > 0; }
  const Agent* agent(const AgentId& id) const;
  std::size_t pending() const noexcept { return queue_.size(); }
  std::size_t steps() const noexcept { return steps_; }

  RunResult result() const;
  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

private:
  struct Event {
    std::uint64_t seq = 0;
    Envelope envelope;
  };
  using Request = std::pair<AgentId, std::uint64_t>;  // (asker, corr)

  void post(std::vector<Envelope>& outbox);
  void enqueue(Envelope e);
  std::string describe(const Event& e) const;

  SimConfig config_;
  ConstantPool base_;
  std::map<AgentId, std::unique_ptr<Agent>> agents_;
  std::vector<Event> queue_;
  /// Queries each agent has received and not yet answered.
  std::map<AgentId, std::map<Request, std::pair<QueryContextId, Literal>>> serving_;
  std::vector<QueryOutcome> outcomes_;
  std::vector<TraceRecord> trace_;
  std::mt19937_64 rng_;
  std::uint64_t next_seq_ = 0;
  std::size_t steps_ = 0;
  std::size_t messages_ = 0;
  std::size_t dropped_ = 0;
};

/// Builds a network, injects every query at step 0 and runs to quiescence.
RunResult run(const System& system, const std::vector<InjectedQuery>& queries, const SimConfig& config);

}  // namespace cdl
