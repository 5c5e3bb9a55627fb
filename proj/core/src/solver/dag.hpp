// Copyright 2026 The Testforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TESTFORGE_SRC_SOLVER_DAG_HPP_
#define TESTFORGE_SRC_SOLVER_DAG_HPP_

#include <unordered_map>
#include <utility>
#include <vector>

#include "testforge/solver/sym_expr.hpp"

namespace testforge::solver::detail {

// Children-first order of every distinct node reachable from `roots`.
// Iterative so that long chains do not exhaust the stack.
inline std::vector<const SymNode*> topo_order(const std::vector<const SymNode*>& roots,
                                              std::unordered_map<const SymNode*, int>* index = nullptr) {
  std::vector<const SymNode*> order;
  std::unordered_map<const SymNode*, int> local;
  auto& seen = index ? *index : local;
  std::vector<std::pair<const SymNode*, bool>> stack;
  for (const SymNode* r : roots) {
    if (r == nullptr || seen.count(r)) continue;
    stack.emplace_back(r, false);
    while (!stack.empty()) {
      auto [n, expanded] = stack.back();
      stack.pop_back();
      if (seen.count(n)) continue;
      if (expanded) {
        seen.emplace(n, static_cast<int>(order.size()));
        order.push_back(n);
        continue;
      }
      stack.emplace_back(n, true);
      if (n->b && !seen.count(n->b.get())) stack.emplace_back(n->b.get(), false);
      if (n->a && !seen.count(n->a.get())) stack.emplace_back(n->a.get(), false);
    }
  }
  return order;
}

}  // namespace testforge::solver::detail

#endif  // TESTFORGE_SRC_SOLVER_DAG_HPP_
