#pragma once

#include <string>
#include <vector>

namespace pondera {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-test of the library's invariants: vacuum identities, thermal
/// spectrum limits, commutator closure, physicality on a coarse sweep,
/// bistability residuals and closed-form vs quadrature fidelity.
std::vector<CheckResult> run_builtin_checks();

}  // namespace pondera
