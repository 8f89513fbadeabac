// Command line front end: run queries on a scenario with the distributed
// engine and/or the reference evaluator, export traces and DOT graphs, and
// drive the equivalence fuzzer.
#include "cdl/argumentation.hpp"
#include "cdl/fuzz.hpp"
#include "cdl/scenario.hpp"
#include "cdl/simnet.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kMismatch = 3 };

struct QueryArgs {
  std::string scenario;
  std::string focus_file;
  std::vector<std::string> facts;
  std::string starter;
  std::string query;
  std::string ask;
  std::uint64_t seed = 0;
  std::string policy = "random";
  std::size_t max_steps = 100'000;
  std::string engine = "distributed";
  std::string trace_out;
  std::string dot_out;
  std::string summary_out;
  std::vector<std::string> holders;
};

struct FuzzArgs {
  std::size_t agents = 0;  // 0: random up to --max-agents
  std::size_t max_agents = 5;
  std::optional<std::size_t> rules;
  std::size_t max_rules = 10;
  std::size_t predicates = 3;
  std::size_t constants = 3;
  std::size_t count = 200;
  std::size_t queries = 1;
  std::uint64_t seed = 1;
  std::string policy = "random";
  bool parallel = false;
  bool no_minimize = false;
};

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void add_scenario_options(CLI::App& cmd, QueryArgs& a) {
  cmd.add_option("--scenario", a.scenario, "Scenario file")->required();
  cmd.add_option("--focus", a.focus_file, "File with focus facts, one per line");
  cmd.add_option("--fact", a.facts, "Inline focus fact, repeatable");
  cmd.add_option("--starter", a.starter, "Agent that starts the query")->required();
  cmd.add_option("--query", a.query, "Query literal, e.g. \"edible(m1)\"")->required();
  cmd.add_option("--ask", a.ask, "Agent the starter addresses (default: the starter)");
  cmd.add_option("--seed", a.seed, "Scheduling seed (CDL_SEED overrides)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("CDL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("CDL_SEED is not a number: " + std::string(env));
    }
  }
  return flag;
}

cdl::SchedulePolicy policy_of(const std::string& s) {
  auto p = cdl::parse_schedule_policy(s);
  if (!p) throw InputError("unknown policy " + s);
  return *p;
}

struct Loaded {
  cdl::System system;
  cdl::InjectedQuery query;
};

std::string read_input(const std::string& path) {
  try {
    return cdl::read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

Loaded load(const QueryArgs& a) {
  Loaded l;
  l.system = cdl::parse_scenario(read_input(a.scenario));
  l.query.starter = cdl::AgentId(a.starter);
  if (!l.system.find_agent(l.query.starter)) throw InputError("unknown starter agent " + a.starter);
  l.query.literal = cdl::parse_literal(a.query);
  if (!l.query.literal.ground() || !l.query.literal.source.is_local())
    throw InputError("query must be a ground local literal: " + a.query);
  if (!a.focus_file.empty()) l.query.focus = cdl::parse_facts(read_input(a.focus_file));
  for (const auto& f : a.facts) {
    const cdl::Literal lit = cdl::parse_literal(f);
    if (!lit.ground() || !lit.source.is_local()) throw InputError("focus facts must be ground local literals: " + f);
    l.query.focus.push_back(lit);
  }
  if (!a.ask.empty()) {
    l.query.ask = cdl::AgentId(a.ask);
    if (!l.system.find_agent(*l.query.ask)) throw InputError("unknown agent " + a.ask);
  }
  return l;
}

std::string tv_text(std::optional<cdl::TruthValue> tv) { return tv ? std::string(cdl::to_string(*tv)) : "none"; }

std::string dot_for(const cdl::System& system, const cdl::QueryContext& ctx, const std::vector<std::string>& holders) {
  cdl::SrOptions opts;
  if (!holders.empty()) opts.focus_holders = std::set<cdl::AgentId>();
  for (const auto& h : holders) opts.focus_holders->insert(cdl::AgentId(h));
  const auto sr = cdl::build_support_relation(system, ctx, opts);
  for (const auto& d : sr.diagnostics) std::cerr << "warning: " << d << "\n";
  const auto lab = cdl::label(sr, system);
  return cdl::to_dot(sr, &lab);
}

int cmd_run(const QueryArgs& a) {
  const Loaded l = load(a);
  if (a.engine != "distributed" && a.engine != "oracle" && a.engine != "both")
    throw InputError("unknown engine " + a.engine);
  const cdl::QueryContext ctx = cdl::oracle_context(l.query);
  const cdl::AgentId where = l.query.ask.value_or(l.query.starter);

  std::optional<cdl::TruthValue> distributed, oracle;
  cdl::RunResult result;
  if (a.engine != "oracle") {
    cdl::SimConfig config{effective_seed(a.seed), a.max_steps, policy_of(a.policy)};
    result = cdl::run(l.system, {l.query}, config);
    if (const auto& ans = result.outcomes.front().answer) distributed = ans->tv;
    if (!a.trace_out.empty()) write_file(a.trace_out, cdl::trace_jsonl(result.trace));
  }
  if (a.engine != "distributed") oracle = cdl::oracle_answer(l.system, ctx, where, l.query.literal);
  if (!a.dot_out.empty()) write_file(a.dot_out, dot_for(l.system, ctx, a.holders));

  const auto tv = a.engine == "oracle" ? oracle : distributed;
  const std::string summary =
      cdl::summary_json(l.query.literal.atom_text(), tv, result.steps, result.messages);
  std::cout << summary << "\n";
  if (!a.summary_out.empty()) write_file(a.summary_out, summary + "\n");
  if (a.engine == "both") {
    const bool match = distributed && oracle && *distributed == *oracle;
    std::cout << "distributed=" << tv_text(distributed) << " oracle=" << tv_text(oracle)
              << (match ? " match" : " MISMATCH") << "\n";
    if (!match) return kMismatch;
  }
  return kOk;
}

int cmd_oracle(const QueryArgs& a) {
  const Loaded l = load(a);
  const cdl::QueryContext ctx = cdl::oracle_context(l.query);
  const cdl::AgentId where = l.query.ask.value_or(l.query.starter);
  const auto tv = cdl::oracle_answer(l.system, ctx, where, l.query.literal);
  std::cout << "oracle: " << cdl::to_string(tv) << "\n";
  const auto sr = cdl::build_support_relation(l.system, ctx);
  const auto lab = cdl::label(sr, l.system);
  std::size_t justified = 0, rejected = 0;
  for (const auto& [key, label] : lab.labels) {
    justified += label == cdl::Label::Justified;
    rejected += label == cdl::Label::Rejected;
  }
  std::cout << "arguments: " << sr.arguments.size() << " (" << justified << " justified, " << rejected
            << " rejected)\n";
  if (cdl::acyclic_query(l.system, ctx, where, l.query.literal))
    std::cout << "labelled: " << cdl::to_string(cdl::labeled_answer(sr, lab, l.system, ctx, where, l.query.literal))
              << "\n";
  else
    std::cout << "labelled: skipped (cyclic dependencies)\n";
  if (!a.dot_out.empty()) write_file(a.dot_out, dot_for(l.system, ctx, a.holders));
  return kOk;
}

int cmd_render_dot(const QueryArgs& a) {
  const Loaded l = load(a);
  const std::string dot = dot_for(l.system, cdl::oracle_context(l.query), a.holders);
  if (a.dot_out.empty() || a.dot_out == "-")
    std::cout << dot;
  else
    write_file(a.dot_out, dot);
  return kOk;
}

int cmd_validate(const std::string& path) {
  const cdl::System sys = cdl::parse_scenario_unchecked(read_input(path));
  const auto ds = cdl::validate(sys);
  for (const auto& d : ds) std::cout << path << ": " << d.text() << "\n";
  if (!ds.empty()) return kInput;
  std::cout << path << ": ok (" << sys.agents.size() << " agents)\n";
  return kOk;
}

int cmd_fuzz(const FuzzArgs& f) {
  if (f.agents == 0 && f.max_agents == 0) throw InputError("need at least one agent");
  cdl::CampaignConfig c;
  c.seed = effective_seed(f.seed);
  c.count = f.count;
  c.queries_per_system = f.queries;
  c.policy = policy_of(f.policy);
  c.minimize = !f.no_minimize;
  c.gen.max_agents = f.max_agents;
  if (f.agents > 0) c.gen.agents = f.agents;
  c.gen.max_rules = f.max_rules;
  c.gen.rules = f.rules;
  if (f.predicates == 0 || f.constants == 0) throw InputError("need at least one predicate and constant");
  c.gen.predicates = f.predicates;
  c.gen.constants = f.constants;
  const auto report = f.parallel ? cdl::run_campaign_parallel(c) : cdl::run_campaign_serial(c);
  std::cout << report.text();
  return report.mismatches > 0 || report.failures > 0 ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual defeasible reasoning over a simulated peer network"};
  app.require_subcommand(1);

  QueryArgs q;
  auto* run = app.add_subcommand("run", "Answer a query with the distributed protocol and/or the oracle");
  add_scenario_options(*run, q);
  run->add_option("--engine", q.engine, "distributed, oracle or both")
      ->check(CLI::IsMember({"distributed", "oracle", "both"}));
  run->add_option("--policy", q.policy, "Delivery order: random, fifo or lifo");
  run->add_option("--max-steps", q.max_steps, "Step limit for the simulator");
  run->add_option("--trace", q.trace_out, "Write the message trace (JSON lines)");
  run->add_option("--dot", q.dot_out, "Write the labelled support relation (DOT)");
  run->add_option("--summary", q.summary_out, "Write the summary record (JSON)");

  QueryArgs o;
  auto* oracle = app.add_subcommand("oracle", "Answer a query with the reference evaluator and the labelling");
  add_scenario_options(*oracle, o);
  oracle->add_option("--dot", o.dot_out, "Write the labelled support relation (DOT)");
  oracle->add_option("--holders", o.holders, "Agents holding the focus facts in the graph (default: all)");

  QueryArgs d;
  auto* dot = app.add_subcommand("render-dot", "Print the labelled support relation as DOT");
  add_scenario_options(*dot, d);
  dot->add_option("--out", d.dot_out, "Output file (default: stdout)");
  dot->add_option("--holders", d.holders, "Agents holding the focus facts (default: all)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_path, "Scenario file")->required();

  FuzzArgs f;
  auto* fuzz = app.add_subcommand("fuzz", "Compare the protocol with the oracle on random systems");
  fuzz->add_option("--agents", f.agents, "Exact number of agents (default: random up to --max-agents)");
  fuzz->add_option("--max-agents", f.max_agents, "Upper bound on agents");
  fuzz->add_option("--rules", f.rules, "Exact rules per agent (default: random up to --max-rules)");
  fuzz->add_option("--max-rules", f.max_rules, "Upper bound on rules per agent");
  fuzz->add_option("--predicates", f.predicates, "Number of predicates");
  fuzz->add_option("--constants", f.constants, "Number of constants");
  fuzz->add_option("--count", f.count, "Number of systems");
  fuzz->add_option("--queries", f.queries, "Queries per system");
  fuzz->add_option("--seed", f.seed, "Campaign seed (CDL_SEED overrides)");
  fuzz->add_option("--policy", f.policy, "Delivery order: random, fifo or lifo");
  fuzz->add_flag("--parallel", f.parallel, "Spread systems over OpenMP threads");
  fuzz->add_flag("--no-minimize", f.no_minimize, "Report counterexamples unreduced");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*run) return cmd_run(q);
    if (*oracle) return cmd_oracle(o);
    if (*dot) return cmd_render_dot(d);
    if (*validate) return cmd_validate(validate_path);
    if (*fuzz) return cmd_fuzz(f);
  } catch (const cdl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const cdl::ScenarioError& e) {
    for (const auto& diag : e.diagnostics()) std::cerr << "invalid scenario: " << diag.text() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
