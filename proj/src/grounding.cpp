#include "cdl/grounding.hpp"

#include <map>

namespace cdl {

namespace {

Literal substitute(const Literal& l, const std::map<std::string, std::string>& binding) {
  Literal out = l;
  for (auto& a : out.args)
    if (auto it = binding.find(a); it != binding.end()) a = it->second;
  return out;
}

}  // namespace

std::vector<Rule> instantiate(const Rule& rule, const ConstantPool& constants) {
  const auto vars = variables_of(rule);
  if (vars.empty()) return {rule};
  const std::vector<std::string> names(vars.begin(), vars.end());
  const std::vector<std::string> pool(constants.begin(), constants.end());
  std::vector<Rule> out;
  if (pool.empty()) return out;

  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    std::map<std::string, std::string> binding;
    std::string digest;
    for (std::size_t i = 0; i < names.size(); ++i) {
      binding[names[i]] = pool[idx[i]];
      if (i) digest += ',';
      digest += pool[idx[i]];
    }
    Rule inst = rule;
    inst.id = rule.id + "#" + digest;
    inst.head = substitute(rule.head, binding);
    for (auto& b : inst.body) b = substitute(b, binding);
    out.push_back(std::move(inst));

    std::size_t k = names.size();
    while (k > 0) {
      --k;
      if (++idx[k] < pool.size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::vector<Rule> ground_rules(std::span<const Rule> rules, const ConstantPool& constants,
                               std::vector<Diagnostic>* warnings) {
  std::vector<Rule> out;
  for (const auto& r : rules) {
    auto inst = instantiate(r, constants);
    if (inst.empty() && warnings)
      warnings->push_back({"GROUND_EMPTY", r.id, "no constants to instantiate variables"});
    for (auto& i : inst) out.push_back(std::move(i));
  }
  return out;
}

System ground(const System& system, const ConstantPool& extra_constants, std::vector<Diagnostic>* warnings) {
  ConstantPool pool = system.constants();
  pool.insert(extra_constants.begin(), extra_constants.end());
  System out = system;
  for (auto& a : out.agents) a.rules = ground_rules(a.rules, pool, warnings);
  out.common_rules = ground_rules(system.common_rules, pool, warnings);
  for (auto& c : out.contexts) c.focus = ground_rules(c.focus, pool, warnings);
  return out;
}

}  // namespace cdl
