// Copyright 2026 The twinscf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWINSCF_SCF_H
#define TWINSCF_SCF_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "twinscf/bitvec.h"
#include "twinscf/graph.h"
#include "twinscf/mod_decomp.h"

namespace twinscf {

/// Default node budget for the simplicial clique search.
inline constexpr uint64_t kDefaultSimplicialBudget = 2'000'000;

/// Exhaustive scan: for each center, looks for an independent triple in its neighborhood.
bool is_claw_free_naive(const Graph &g);
/// Claw test guided by the modular decomposition: rejects trees of the wrong shape and then
/// only searches prime quotients and prime children of serial nodes. `t` must be decompose(g).
bool is_claw_free_via_tree(const Graph &g, const MDTree &t);

/// K is a non-empty clique and, for every x in K, N(x) \ K is a clique.
bool is_simplicial_clique(const Graph &g, const BitVec &k);

enum class SearchStatus { Found, None, BudgetExceeded };

struct SimplicialSearch {
    SearchStatus status = SearchStatus::None;
    BitVec clique;
    uint64_t nodes = 0;
};

/// Depth-first clique growth restricted to `within` (one connected component is typical).
/// Partial cliques are pruned as soon as some member has an outside neighborhood that cannot
/// be repaired by adding further candidates.
SimplicialSearch search_simplicial_clique(const Graph &g, const BitVec &within, uint64_t budget = kDefaultSimplicialBudget);
/// Searches the whole graph. Throws BudgetExceeded when the budget runs out first.
std::optional<BitVec> find_simplicial_clique(const Graph &g, uint64_t budget = kDefaultSimplicialBudget);
/// Enumerates every clique. Small graphs only (oracle).
std::optional<BitVec> find_simplicial_clique_exhaustive(const Graph &g);

struct ScfVerdict {
    bool claw_free = false;
    /// One entry per connected component (ordered by minimum vertex); empty if not claw-free.
    std::vector<std::optional<BitVec>> witnesses;
    bool is_scf = false;
    /// Some component's search ran out of budget; is_scf is then false.
    bool budget_exceeded = false;
};

/// Claw-freeness plus a simplicial clique in every component. Isolated vertices are their
/// own witnesses. Never throws on budget exhaustion; check `budget_exceeded`.
ScfVerdict scf_verdict(const Graph &g, uint64_t budget = kDefaultSimplicialBudget);

}  // namespace twinscf

#endif
