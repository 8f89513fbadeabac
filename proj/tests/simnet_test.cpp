#include "cdl/simnet.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace cdl {
namespace {

using test::lit;

const AgentId kAlice("alice"), kBob("bob"), kEric("eric");

std::optional<TruthValue> tv_of(const RunResult& r, std::size_t i = 0) {
  const auto& a = r.outcomes.at(i).answer;
  return a ? std::optional(a->tv) : std::nullopt;
}

TEST(SimNet, AlphaAloneIsQuiescentAndTrue) {
  const RunResult r = run(test::mushrooms(), {test::alpha_query()}, {});
  EXPECT_EQ(tv_of(r), TruthValue::True);
  EXPECT_LT(r.steps, 10'000u);
}

TEST(SimNet, ConcurrentAlphaAndBetaMatchSoloRuns) {
  const System s = test::mushrooms();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SimConfig c;
    c.seed = seed;
    const auto both = run(s, {test::alpha_query(), test::beta_query()}, c);
    EXPECT_EQ(tv_of(both, 0), tv_of(run(s, {test::alpha_query()}, c)));
    EXPECT_EQ(tv_of(both, 1), tv_of(run(s, {test::beta_query()}, c)));
    EXPECT_EQ(tv_of(both, 0), TruthValue::True);
    EXPECT_EQ(tv_of(both, 1), TruthValue::False);
  }
}

TEST(SimNet, SameConfigGivesByteIdenticalTrace) {
  const System s = test::mushrooms();
  SimConfig c;
  c.seed = 1234;
  const auto a = run(s, {test::alpha_query(), test::beta_query()}, c);
  const auto b = run(s, {test::alpha_query(), test::beta_query()}, c);
  EXPECT_EQ(trace_jsonl(a.trace), trace_jsonl(b.trace));
}

TEST(SimNet, PoliciesAndSeedsAgreeOnAnswers) {
  const System s = test::mushrooms();
  std::set<std::string> traces;
  for (auto policy : {SchedulePolicy::Fifo, SchedulePolicy::Lifo, SchedulePolicy::Random})
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto r = run(s, {test::alpha_query()}, {seed, 100'000, policy});
      EXPECT_EQ(tv_of(r), TruthValue::True) << to_string(policy) << " " << seed;
      traces.insert(trace_jsonl(r.trace));
    }
  EXPECT_GT(traces.size(), 1u);  // schedules really differ
}

TEST(SimNet, TraceRecordsHaveStableFieldOrder) {
  const auto r = run(test::mushrooms(), {test::alpha_query()}, {7, 100'000, SchedulePolicy::Fifo});
  ASSERT_FALSE(r.trace.empty());
  const std::string first = r.trace.front().json();
  EXPECT_EQ(first.rfind("{\"seed\":7,\"step\":", 0), 0u) << first;
  const char* order[] = {"\"seed\"", "\"step\"", "\"from\"", "\"to\"", "\"kind\"", "\"ctx\"",
                         "\"literal\"", "\"tv\"", "\"bs\"", "\"ss\""};
  std::size_t pos = 0;
  for (const char* key : order) {
    const auto at = first.find(key, pos);
    ASSERT_NE(at, std::string::npos) << key;
    pos = at;
  }
  EXPECT_EQ(summary_json("edible(m1)", TruthValue::True, 3, 4),
            "{\"query\":\"edible(m1)\",\"tv\":\"true\",\"steps\":3,\"messages\":4}");
}

TEST(SimNet, EveryMessageIsDeliveredOnceOrDropped) {
  const System s = test::mushrooms();
  SimNet net(s, {3, 100'000, SchedulePolicy::Random});
  net.inject(test::alpha_query());
  for (int i = 0; i < 20 && net.step(); ++i) {
  }
  net.leave(AgentId("catherine"));
  net.run_to_quiescence();
  const auto r = net.result();
  EXPECT_EQ(r.messages, r.trace.size() + r.dropped);
  EXPECT_EQ(net.pending(), 0u);
}

TEST(SimNet, RemovingEricFlipsAlphaToFalse) {
  const System s = test::mushrooms();
  SimNet net(s, {});
  net.leave(kEric);
  net.inject(test::alpha_query());
  net.run_to_quiescence();
  EXPECT_EQ(tv_of(net.result()), TruthValue::False);
}

TEST(SimNet, ReaddingEricRestoresTrue) {
  const System s = test::mushrooms();
  SimNet net(s, {});
  net.leave(kEric);
  net.inject(test::alpha_query());
  net.run_to_quiescence();
  net.join(*s.find_agent(kEric));
  net.inject(test::alpha_query());
  net.run_to_quiescence();
  const auto r = net.result();
  ASSERT_EQ(r.outcomes.size(), 2u);
  EXPECT_EQ(tv_of(r, 0), TruthValue::False);
  EXPECT_EQ(tv_of(r, 1), TruthValue::True);
}

TEST(SimNet, JoiningAnIrrelevantAgentChangesNothing) {
  const System s = test::mushrooms();
  SimNet net(s, {});
  net.join({AgentId("frank"), {}, {kAlice}, {kAlice}});
  net.inject(test::alpha_query());
  net.run_to_quiescence();
  EXPECT_EQ(tv_of(net.result()), TruthValue::True);
}

TEST(SimNet, LeavingMidQueryResolvesAsVocabularyMiss) {
  // Drop Eric at every possible point; the run must still finish, and once
  // he is gone before answering, Catherine's only support disappears.
  const System s = test::mushrooms();
  const auto full = run(s, {test::alpha_query()}, {5, 100'000, SchedulePolicy::Fifo});
  for (std::size_t cut = 0; cut <= full.steps; ++cut) {
    SimNet net(s, {5, 100'000, SchedulePolicy::Fifo});
    net.inject(test::alpha_query());
    for (std::size_t i = 0; i < cut && net.step(); ++i) {
    }
    net.leave(kEric);
    net.run_to_quiescence();
    const auto r = net.result();
    ASSERT_TRUE(tv_of(r)) << "cut " << cut;
    EXPECT_NE(*tv_of(r), TruthValue::Undefined) << "cut " << cut;
  }
}

TEST(SimNet, MembershipErrors) {
  const System s = test::mushrooms();
  SimNet net(s, {});
  EXPECT_THROW(net.join(*s.find_agent(kBob)), std::invalid_argument);
  net.leave(kBob);
  EXPECT_THROW(net.leave(kBob), std::invalid_argument);
}

TEST(SimNet, StepLimitCarriesPendingEvents) {
  const System s = test::mushrooms();
  try {
    run(s, {test::alpha_query()}, {0, 5, SchedulePolicy::Fifo});
    FAIL() << "expected StepLimitExceeded";
  } catch (const StepLimitExceeded& e) {
    EXPECT_FALSE(e.pending().empty());
  }
}

TEST(SimNet, CycleAnswersUndefined) {
  const System s = parse_scenario(read_file(test::scenario_path("cycle.cdl")));
  for (const auto& [who, what] : {std::pair{"one", "a"}, std::pair{"two", "b"}}) {
    const auto r = run(s, {{AgentId(who), lit(what), {}, std::nullopt}}, {});
    EXPECT_EQ(tv_of(r), TruthValue::Undefined) << who;
  }
}

}  // namespace
}  // namespace cdl
