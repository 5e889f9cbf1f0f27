#pragma once

#include <string>
#include <vector>

namespace stpe {

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast built-in diagnostics: quadrature exactness, the temporal coupling
// tables, slabwise L2 projection moments, the closed-form right-hand sides
// against finite differences, Ritz orthogonality, exact reproduction of a
// space-time polynomial solution, and slab-interface continuity.
std::vector<SelfCheck> run_self_test();

}  // namespace stpe
