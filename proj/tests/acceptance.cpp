// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.
#include "cdl/argumentation.hpp"
#include "cdl/fuzz.hpp"
#include "cdl/grounding.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

namespace cdl {
namespace {

using test::lit;

const AgentId kAlice("alice"), kBob("bob"), kCatherine("catherine"), kDennis("dennis"), kEric("eric");

struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::optional<TruthValue> final_tv(const RunResult& r, std::size_t i = 0) {
  const auto& a = r.outcomes.at(i).answer;
  return a ? std::optional(a->tv) : std::nullopt;
}

// Every answer `from` sent to `to` about `literal` in the trace.
std::vector<const TraceRecord*> answers(const RunResult& r, const AgentId& from, const AgentId& to,
                                        const std::string& literal) {
  std::vector<const TraceRecord*> out;
  for (const auto& t : r.trace)
    if (!t.is_query && t.from == from && t.to == to && t.literal.atom_text() == literal) out.push_back(&t);
  return out;
}

bool all_answers(const RunResult& r, const AgentId& from, const AgentId& to, const std::string& literal,
                 const std::function<bool(const TraceRecord&)>& pred) {
  const auto xs = answers(r, from, to, literal);
  return !xs.empty() && std::all_of(xs.begin(), xs.end(), [&](const TraceRecord* t) { return pred(*t); });
}

void criterion1(Check& c) {
  const System s = test::mushrooms();
  const SupportSet from_eric{{lit("springtime_amanita(m1)"), kEric}};
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    SimConfig config;
    config.seed = seed;
    const auto r = run(s, {test::alpha_query()}, config);
    const std::string at = " (seed " + std::to_string(seed) + ")";
    c.expect(final_tv(r) == TruthValue::True, "Alice's answer is not true" + at);
    c.expect(all_answers(r, kBob, kAlice, "edible(m1)", [](auto& t) { return t.tv == TruthValue::False; }),
             "Bob did not answer false" + at);
    c.expect(all_answers(r, kDennis, kAlice, "edible(m1)", [](auto& t) { return t.tv == TruthValue::False; }),
             "Dennis did not answer false" + at);
    c.expect(all_answers(r, kEric, kAlice, "edible(m1)",
                         [](auto& t) { return t.tv == TruthValue::Undefined && !t.bs && !t.ss; }),
             "Eric's answer is not a vocabulary miss" + at);
    c.expect(all_answers(r, kCatherine, kAlice, "edible(m1)",
                         [&](auto& t) { return t.tv == TruthValue::True && t.ss == from_eric; }),
             "Catherine's answer is not true via Eric" + at);
  }
}

void criterion2(Check& c) {
  const System s = test::mushrooms();
  const auto solo_beta = run(s, {test::beta_query()}, {});
  c.expect(final_tv(solo_beta) == TruthValue::False, "Bob's beta answer is not false");

  // Bob asks Alice, whose verdict must rest on her death-cap rule.
  SimNet net(s, {});
  InjectedQuery ask_alice = test::beta_query();
  ask_alice.ask = kAlice;
  const auto ctx = net.inject(ask_alice);
  net.run_to_quiescence();
  c.expect(final_tv(net.result()) == TruthValue::False, "Alice's beta answer is not false");
  bool ra1 = false;
  if (const ContextState* st = net.agent(kAlice)->context_state(ctx))
    for (const auto& d : st->decisions)
      if (d.literal == lit("edible(m2)") && d.tv == TruthValue::False && d.negative.ss_rule.rfind("ra1#m2", 0) == 0)
        ra1 = true;
  c.expect(ra1, "Alice's false is not supported by ra1");

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig config;
    config.seed = seed;
    const auto both = run(s, {test::alpha_query(), test::beta_query()}, config);
    c.expect(final_tv(both, 0) == final_tv(run(s, {test::alpha_query()}, config)),
             "concurrent alpha differs from solo, seed " + std::to_string(seed));
    c.expect(final_tv(both, 1) == final_tv(run(s, {test::beta_query()}, config)),
             "concurrent beta differs from solo, seed " + std::to_string(seed));
  }
}

void criterion3(Check& c) {
  const System s = test::mushrooms();
  const auto alpha = build_support_relation(s, oracle_context(test::alpha_query()));
  const auto lab = label(alpha, s);
  const auto roots = maximal_arguments(alpha);
  c.expect(roots.size() == 7, "alpha has " + std::to_string(roots.size()) + " maximal arguments, expected 7");
  std::map<std::string, std::string> by_root;  // owner+rule -> label
  for (const auto* a : roots) by_root[a->owner.str() + ":" + a->tree.rule] = std::string(to_string(lab.of(*a)));
  const std::map<std::string, std::string> expected{
      {"alice:ra3#m1@catherine", "justified"}, {"alice:ra4#m1@bob", "rejected"},
      {"alice:ra4#m1@dennis", "rejected"},     {"bob:rb1#m1", "justified"},
      {"catherine:rc1#m1@eric", "justified"},  {"dennis:rd1#m1@eric", "justified"},
      {"eric:ck_ck1#m1", "justified"}};
  c.expect(by_root == expected, "alpha roots or labels differ from the worked example");
  for (const auto* a : roots)
    if (lab.of(*a) == Label::Justified)
      for (const auto* sub : subarguments(*a))
        c.expect(lab.labels.at(sub->key()) == Label::Justified, "unjustified subargument " + sub->key());

  SrOptions opts;
  opts.focus_holders = std::set<AgentId>{kAlice, kBob};
  const auto beta = build_support_relation(s, oracle_context(test::beta_query()), opts);
  const auto blab = label(beta, s);
  std::set<std::string> beta_roots;
  for (const auto* a : maximal_arguments(beta)) {
    beta_roots.insert(a->key());
    c.expect(blab.of(*a) == Label::Justified, "beta argument not justified: " + a->key());
  }
  const std::set<std::string> beta_expected{
      "~edible(m2)@alice[ra1#m2@local](mushroom(m2)@alice[focus_f1](),death_cap(m2)@alice[focus_f2]())",
      "death_cap(m2)@bob[rb2#m2](death_cap(m2)@alice)"};
  c.expect(beta_roots == beta_expected, "beta trees differ from the worked example");
}

void criterion4(Check& c) {
  CampaignConfig config;
  config.count = 200;
  config.seed = 1;
  const auto report = run_campaign_serial(config);
  c.expect(report.systems == 200 && report.queries >= 200, "campaign ran too few systems");
  c.expect(report.mismatches == 0 && report.failures == 0, "\n" + report.text());
}

void criterion5(Check& c) {
  const System s = parse_scenario(read_file(test::scenario_path("cycle.cdl")));
  for (const auto& [who, what] : {std::pair{"one", "a"}, std::pair{"two", "b"}}) {
    const InjectedQuery q{AgentId(who), lit(what), {}, std::nullopt};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimConfig config;
      config.seed = seed;
      c.expect(final_tv(run(s, {q}, config)) == TruthValue::Undefined, std::string("distributed ") + what);
    }
    const QueryContext ctx = oracle_context(q);
    c.expect(oracle_answer(s, ctx, q.starter, q.literal) == TruthValue::Undefined, std::string("oracle ") + what);
    const auto sr = build_support_relation(s, ctx);
    c.expect(labeled_answer(sr, label(sr, s), s, ctx, q.starter, q.literal) == TruthValue::Undefined,
             std::string("labelling ") + what);
  }
}

void criterion6(Check& c) {
  // Termination and delivery-order independence over 1,000 random runs.
  std::size_t runs = 0;
  for (std::size_t i = 0; i < 250; ++i) {
    std::mt19937_64 rng(iteration_seed(606, i));
    const auto gc = generate_case(rng, GenConfig{}, 1);
    std::optional<TruthValue> first;
    for (std::uint64_t seed = 0; seed < 4; ++seed, ++runs) {
      SimConfig config;
      config.seed = seed;
      config.policy = seed == 0 ? SchedulePolicy::Fifo : seed == 1 ? SchedulePolicy::Lifo : SchedulePolicy::Random;
      try {
        const auto r = run(gc.system, gc.queries, config);
        if (seed == 0) first = final_tv(r);
        c.expect(final_tv(r) == first, "schedule-dependent answer in system " + std::to_string(i));
      } catch (const StepLimitExceeded&) {
        c.expect(false, "max_steps overflow in system " + std::to_string(i));
      }
    }
  }
  c.expect(runs == 1000, "expected 1,000 runs");

  // Complement exclusion per agent, context and history.
  for (std::size_t i = 0; i < 100; ++i) {
    std::mt19937_64 rng(iteration_seed(707, i));
    const auto gc = generate_case(rng, GenConfig{}, 2);
    SimNet net(gc.system, {});
    std::vector<QueryContextId> ctxs;
    for (const auto& q : gc.queries) ctxs.push_back(net.inject(q));
    net.run_to_quiescence();
    for (const auto& a : gc.system.agents)
      for (const auto& ctx : ctxs)
        if (const ContextState* st = net.agent(a.id)->context_state(ctx))
          for (const auto& [key, ans] : st->memo)
            if (ans.tv == TruthValue::True) {
              auto other = st->memo.find({key.first.complement(), key.second});
              c.expect(other == st->memo.end() || other->second.tv != TruthValue::True,
                       "complement exclusion broken at " + a.id.str());
            }
  }

  // stronger(): strict weak order on random sets.
  std::mt19937_64 rng(31);
  const std::vector<AgentId> trust{kEric, kCatherine, kBob, kDennis};
  const std::vector<AgentId> pool{kAlice, kBob, kCatherine, kDennis, kEric, AgentId("zed")};
  auto random_set = [&] {
    SupportSet s;
    for (std::size_t k = rng() % 4; k > 0; --k) s.insert({lit("p" + std::to_string(rng() % 3)), pool[rng() % 6]});
    return s;
  };
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_set(), b = random_set(), d = random_set();
    auto gt = [&](const SupportSet& x, const SupportSet& y) { return stronger(x, y, trust, kAlice); };
    c.expect(!gt(a, a), "stronger is reflexive");
    c.expect(!(gt(a, b) && gt(b, a)), "stronger is symmetric");
    c.expect(!(gt(a, b) && gt(b, d)) || gt(a, d), "stronger is not transitive");
    c.expect(!(!gt(a, b) && !gt(b, a) && !gt(b, d) && !gt(d, b)) || (!gt(a, d) && !gt(d, a)),
             "incomparability is not transitive");
  }

  // Scenario round trip and ground idempotence.
  for (int seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 r(seed);
    const System s = parse_scenario(test::random_scenario(r));
    const std::string once = render_scenario(s);
    c.expect(render_scenario(parse_scenario(once)) == once, "round trip differs, seed " + std::to_string(seed));
    const System g = ground(s, {});
    const System gg = ground(g, {});
    for (std::size_t k = 0; k < g.agents.size(); ++k)
      c.expect(g.agents[k].rules == gg.agents[k].rules, "ground not idempotent, seed " + std::to_string(seed));
  }

  // SR subargument closure.
  for (std::size_t i = 0; i < 100; ++i) {
    std::mt19937_64 r(iteration_seed(808, i));
    const auto gc = generate_case(r, GenConfig{}, 1);
    const auto sr = build_support_relation(gc.system, oracle_context(gc.queries[0]));
    for (const auto& a : sr.arguments)
      for (const auto* sub : subarguments(a)) c.expect(sr.find(sub->key()) != nullptr, "SR not subargument-closed");
  }
}

void criterion7(Check& c) {
  const System s = test::mushrooms();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimConfig config;
    config.seed = seed;
    SimNet net(s, config);
    net.leave(kEric);
    net.inject(test::alpha_query());
    net.run_to_quiescence();
    net.join(*s.find_agent(kEric));
    net.inject(test::alpha_query());
    net.run_to_quiescence();
    const auto r = net.result();
    c.expect(final_tv(r, 0) == TruthValue::False, "without Eric the answer is not false");
    c.expect(final_tv(r, 1) == TruthValue::True, "after Eric rejoins the answer is not true");
  }
}

}  // namespace
}  // namespace cdl

int main() {
  using Fn = void (*)(cdl::Check&);
  const std::pair<const char*, Fn> criteria[] = {
      {"alpha end-to-end", cdl::criterion1},         {"beta end-to-end and context isolation", cdl::criterion2},
      {"support relation structure", cdl::criterion3}, {"oracle equivalence on 200 random systems", cdl::criterion4},
      {"cycle handling", cdl::criterion5},           {"property suites", cdl::criterion6},
      {"dynamic membership", cdl::criterion7},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    cdl::Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << ++n << " " << name << " (" << secs << "s)";
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
