#pragma once

#include "cdl/system.hpp"
#include "cdl/validate.hpp"

#include <set>
#include <span>
#include <string>
#include <vector>

namespace cdl {

using ConstantPool = std::set<std::string>;

/// All variable-free instances of `rule` over `constants`, in substitution
/// order. Instance ids are `<id>#<c1,c2,...>` with values listed in sorted
/// variable-name order. A ground rule is returned unchanged.
std::vector<Rule> instantiate(const Rule& rule, const ConstantPool& constants);

/// Grounds every rule; variable rules that yield no instance add a
/// GROUND_EMPTY warning when `warnings` is given.
std::vector<Rule> ground_rules(std::span<const Rule> rules, const ConstantPool& constants,
                               std::vector<Diagnostic>* warnings = nullptr);

/// Replaces every variable rule in the system by its instances over the
/// system's constants plus `extra_constants`.
System ground(const System& system, const ConstantPool& extra_constants,
              std::vector<Diagnostic>* warnings = nullptr);

}  // namespace cdl
