#include "cdl/fuzz.hpp"
#include "cdl/scenario.hpp"

#include <gtest/gtest.h>

namespace cdl {
namespace {

TEST(Generator, SystemsValidateAndRespectBounds) {
  GenConfig g;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    const auto gc = generate_case(rng, g, 3);
    EXPECT_TRUE(validate(gc.system).empty());
    EXPECT_GE(gc.system.agents.size(), 1u);
    EXPECT_LE(gc.system.agents.size(), g.max_agents);
    std::set<std::string> preds, consts;
    for (const auto& a : gc.system.agents) {
      std::size_t own = 0;
      for (const auto& r : a.rules) {
        own += !r.inherited;
        EXPECT_TRUE(r.ground());
        for (const auto& l : r.body) preds.insert(l.predicate);
        preds.insert(r.head.predicate);
        consts.merge(constants_of(r));
      }
      EXPECT_LE(own, g.max_rules);
    }
    EXPECT_LE(preds.size(), g.predicates);
    EXPECT_LE(consts.size(), g.constants);
    EXPECT_EQ(gc.queries.size(), 3u);
  }
}

TEST(Generator, EmptyTheoriesAnswerUndefined) {
  CampaignConfig c;
  c.count = 30;
  c.queries_per_system = 3;
  c.gen.agents = 1;
  c.gen.rules = 0;
  c.labels = false;
  for (std::size_t i = 0; i < c.count; ++i) {
    std::mt19937_64 rng(iteration_seed(c.seed, i));
    const auto gc = generate_case(rng, c.gen, 3);
    const auto rep = check_equivalence(gc.system, gc.queries);
    for (const auto& chk : rep.checks) {
      EXPECT_EQ(chk.distributed, TruthValue::Undefined);
      EXPECT_EQ(chk.oracle, TruthValue::Undefined);
    }
  }
}

TEST(Campaign, SeededRunIsRepeatable) {
  CampaignConfig c;
  c.count = 40;
  c.seed = 17;
  EXPECT_EQ(run_campaign_serial(c), run_campaign_serial(c));
}

TEST(Campaign, ParallelEqualsSerial) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CampaignConfig c;
    c.count = 60;
    c.seed = seed;
    c.queries_per_system = 2;
    const auto serial = run_campaign_serial(c);
    const auto parallel = run_campaign_parallel(c);
    EXPECT_EQ(serial, parallel) << serial.text() << parallel.text();
    EXPECT_EQ(serial.systems, 60u);
  }
}

TEST(Campaign, IterationSeedsAreDistinct) {
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 10'000; ++i) seeds.insert(iteration_seed(5, i));
  EXPECT_EQ(seeds.size(), 10'000u);
}

TEST(Minimizer, KeepsOnlyRulesThatMatterForAMismatch) {
  // A step limit of 1 makes every non-trivial query "fail", so the mismatch
  // survives exactly as long as the query still needs a message.
  const System s = parse_scenario(
      "agent a {\n  knows: b.\n  trust: b.\n  mapping r1: p(c) <= q(c)@b.\n  defeasible r2: s(c) <= .\n"
      "  defeasible r3: t(c) <= s(c).\n}\n"
      "agent b {\n  defeasible r1: q(c) <= .\n  defeasible r2: u(c) <= .\n}\n");
  EquivalenceOptions o;
  o.sim.max_steps = 1;
  const InjectedQuery q{AgentId("a"), parse_literal("p(c)"), {}, std::nullopt};
  ASSERT_EQ(check_equivalence(s, {q}, o).mismatches(), 1u);
  const System m = minimize_counterexample(s, q, o);
  EXPECT_EQ(m.find_agent(AgentId("a"))->rules.size(), 1u);
  EXPECT_EQ(m.find_agent(AgentId("b"))->rules.size(), 0u);
  EXPECT_EQ(check_equivalence(m, {q}, o).mismatches(), 1u);
}

}  // namespace
}  // namespace cdl
