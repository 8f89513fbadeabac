#include "cdl/fuzz.hpp"
#include "cdl/scenario.hpp"

#include <omp.h>

#include <sstream>

namespace cdl {

bool Counterexample::operator==(const Counterexample& o) const {
  return iteration == o.iteration && scenario == o.scenario && query.starter == o.query.starter &&
         query.literal == o.query.literal && query.focus == o.query.focus && query.ask == o.query.ask &&
         distributed == o.distributed && oracle == o.oracle && error == o.error;
}

std::uint64_t iteration_seed(std::uint64_t seed, std::size_t i) {
  // splitmix64 over (seed, i)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

bool mismatch(const QueryCheck& c) { return !c.match; }

std::string tv_text(const std::optional<TruthValue>& tv) { return tv ? std::string(to_string(*tv)) : "-"; }

EquivalenceOptions options_for(const CampaignConfig& config, std::uint64_t seed) {
  EquivalenceOptions o;
  o.sim.seed = seed;
  o.sim.policy = config.policy;
  o.labels = config.labels;
  return o;
}

CampaignReport one_iteration(const CampaignConfig& config, std::size_t i) {
  const std::uint64_t seed = iteration_seed(config.seed, i);
  std::mt19937_64 rng(seed);
  const GeneratedCase gc = generate_case(rng, config.gen, config.queries_per_system);
  const EquivalenceOptions options = options_for(config, seed);
  const EquivalenceReport eq = check_equivalence(gc.system, gc.queries, options);

  CampaignReport r;
  r.systems = 1;
  for (const auto& c : eq.checks) {
    ++r.queries;
    if (!c.error.empty()) ++r.failures;
    if (c.labeled) {
      ++r.label_checked;
      r.label_mismatches += !c.label_match;
    }
    if (!mismatch(c)) continue;
    ++r.mismatches;
    Counterexample cx;
    cx.iteration = i;
    cx.query = c.query;
    cx.distributed = c.distributed;
    cx.oracle = c.oracle;
    cx.error = c.error;
    EquivalenceOptions quiet = options;
    quiet.labels = false;
    cx.scenario = render_scenario(config.minimize ? minimize_counterexample(gc.system, c.query, quiet) : gc.system);
    r.counterexamples.push_back(std::move(cx));
  }
  return r;
}

void merge(CampaignReport& into, CampaignReport&& part) {
  into.systems += part.systems;
  into.queries += part.queries;
  into.mismatches += part.mismatches;
  into.failures += part.failures;
  into.label_checked += part.label_checked;
  into.label_mismatches += part.label_mismatches;
  for (auto& c : part.counterexamples) into.counterexamples.push_back(std::move(c));
}

}  // namespace

std::string CampaignReport::text() const {
  std::ostringstream out;
  out << "systems " << systems << ", queries " << queries << ", mismatches " << mismatches << ", failures "
      << failures << ", labelled " << label_checked << " (" << label_mismatches << " disagree)\n";
  for (const auto& c : counterexamples) {
    out << "-- iteration " << c.iteration << ": " << c.query.starter.str() << " asks "
        << c.query.literal.atom_text();
    if (c.query.ask) out << " at " << c.query.ask->str();
    out << ", distributed=" << tv_text(c.distributed) << " oracle=" << tv_text(c.oracle);
    if (!c.error.empty()) out << " (" << c.error << ")";
    out << "\n";
    if (!c.query.focus.empty()) {
      out << "focus:";
      for (const auto& f : c.query.focus) out << " " << f.atom_text();
      out << "\n";
    }
    out << c.scenario;
  }
  return out.str();
}

System minimize_counterexample(const System& system, const InjectedQuery& query, const EquivalenceOptions& options) {
  auto still_fails = [&](const System& s) {
    const auto rep = check_equivalence(s, {query}, options);
    return rep.mismatches() > 0;
  };
  System best = system;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t a = 0; a < best.agents.size(); ++a) {
      for (std::size_t r = 0; r < best.agents[a].rules.size();) {
        if (best.agents[a].rules[r].inherited) {
          ++r;
          continue;
        }
        System trial = best;
        trial.agents[a].rules.erase(trial.agents[a].rules.begin() + static_cast<std::ptrdiff_t>(r));
        if (still_fails(trial)) {
          best = std::move(trial);
          shrunk = true;
        } else {
          ++r;
        }
      }
    }
  }
  return best;
}

CampaignReport run_campaign_serial(const CampaignConfig& config) {
  CampaignReport total;
  for (std::size_t i = 0; i < config.count; ++i) merge(total, one_iteration(config, i));
  return total;
}

CampaignReport run_campaign_parallel(const CampaignConfig& config) {
  std::vector<CampaignReport> parts(config.count);
  const auto n = static_cast<std::int64_t>(config.count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = one_iteration(config, static_cast<std::size_t>(i));
  CampaignReport total;
  for (auto& p : parts) merge(total, std::move(p));
  return total;
}

}  // namespace cdl
