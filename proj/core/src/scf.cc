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

#include "twinscf/scf.h"

#include <stdexcept>

#include "twinscf/errors.h"

namespace twinscf {

namespace {

bool is_clique_set(const Graph &g, const BitVec &s) {
    bool ok = true;
    s.for_each([&](size_t y) {
        if (!ok) return;
        BitVec rest = s;
        rest.reset(y);
        if (!rest.is_subset_of(g.neighbors(y))) ok = false;
    });
    return ok;
}

// Some pair of nonadjacent vertices in `s` with a common non-neighbor in `s`.
bool has_independent_triple(const Graph &g, const BitVec &s) {
    for (size_t a = s.first(); a < g.size(); a = s.next(a + 1)) {
        BitVec non_a = s.minus(g.neighbors(a));
        non_a.reset(a);
        for (size_t b = non_a.next(a + 1); b < g.size(); b = non_a.next(b + 1)) {
            BitVec third = non_a.minus(g.neighbors(b));
            third.reset(b);
            if (third.next(b + 1) < g.size()) return true;
        }
    }
    return false;
}

bool is_clique_node(const MDTree &t, size_t i) {
    const MDNode &n = t.nodes[i];
    if (n.is_leaf()) return true;
    if (n.kind != NodeKind::Serial) return false;
    for (size_t c : n.children)
        if (!t.nodes[c].is_leaf()) return false;
    return true;
}

bool prime_ok(const MDTree &t, size_t i) {
    const MDNode &n = t.nodes[i];
    if (n.kind != NodeKind::Prime) return false;
    for (size_t c : n.children)
        if (!is_clique_node(t, c)) return false;
    return true;
}

bool serial_ok(const MDTree &t, size_t i) {
    const MDNode &n = t.nodes[i];
    if (n.kind != NodeKind::Serial) return false;
    for (size_t c : n.children) {
        const MDNode &ch = t.nodes[c];
        if (ch.is_leaf() || prime_ok(t, c)) continue;
        if (ch.kind == NodeKind::Parallel && ch.children.size() == 2 && is_clique_node(t, ch.children[0]) &&
            is_clique_node(t, ch.children[1]))
            continue;
        return false;
    }
    return true;
}

// Bounded claw scan; true means a claw was found. Random frustration graphs away from the
// sparse end are full of claws and this settles them without building the tree.
bool quick_claw(const Graph &g, size_t max_pairs) {
    size_t n = g.size(), pairs = 0;
    for (size_t c = 0; c < n; c++) {
        const BitVec &nc = g.neighbors(c);
        if (nc.count() < 3) continue;
        for (size_t a = nc.first(); a < n; a = nc.next(a + 1)) {
            BitVec non_a = nc.minus(g.neighbors(a));
            non_a.reset(a);
            for (size_t b = non_a.next(a + 1); b < n; b = non_a.next(b + 1)) {
                if (++pairs > max_pairs) return false;
                BitVec third = non_a.minus(g.neighbors(b));
                third.reset(b);
                if (third.next(b + 1) < n) return true;
            }
        }
    }
    return false;
}

Graph quotient(const MDNode &n) {
    return Graph(n.children.size(), n.quotient_edges);
}

}  // namespace

bool is_claw_free_naive(const Graph &g) {
    size_t n = g.size();
    for (size_t c = 0; c < n; c++) {
        const BitVec &nc = g.neighbors(c);
        if (nc.count() < 3) continue;
        for (size_t a = nc.first(); a < n; a = nc.next(a + 1)) {
            BitVec non_a = nc.minus(g.neighbors(a));
            non_a.reset(a);
            for (size_t b = non_a.next(a + 1); b < n; b = non_a.next(b + 1)) {
                BitVec third = non_a.minus(g.neighbors(b));
                third.reset(b);
                if (third.next(b + 1) < n) return false;
            }
        }
    }
    return true;
}

bool is_claw_free_via_tree(const Graph &g, const MDTree &t) {
    if (t.nodes.empty()) return true;
    if (t.graph_size != g.size()) throw std::invalid_argument("is_claw_free_via_tree: tree does not match graph");
    const MDNode &root = t.root_node();
    // Shape check.
    auto top_ok = [&](size_t i) { return t.nodes[i].is_leaf() || prime_ok(t, i) || serial_ok(t, i); };
    if (root.kind == NodeKind::Parallel) {
        for (size_t c : root.children)
            if (!top_ok(c)) return false;
    } else if (!top_ok(t.root)) {
        return false;
    }
    // Claws inside prime quotients; independent triples in prime children of serial nodes.
    for (const auto &node : t.nodes) {
        if (node.kind == NodeKind::Prime) {
            if (!is_claw_free_naive(quotient(node))) return false;
        } else if (node.kind == NodeKind::Serial) {
            for (size_t c : node.children) {
                const MDNode &ch = t.nodes[c];
                if (ch.kind != NodeKind::Prime) continue;
                Graph q = quotient(ch);
                if (has_independent_triple(q, BitVec::full(q.size()))) return false;
            }
        }
    }
    return true;
}

bool is_simplicial_clique(const Graph &g, const BitVec &k) {
    if (k.none() || !is_clique_set(g, k)) return false;
    bool ok = true;
    k.for_each([&](size_t x) {
        if (ok && !is_clique_set(g, g.neighbors(x).minus(k))) ok = false;
    });
    return ok;
}

namespace {

class CliqueSearch {
   public:
    CliqueSearch(const Graph &g, uint64_t budget) : g_(g), budget_(budget) {}

    SimplicialSearch run(const BitVec &within) {
        SimplicialSearch res;
        for (size_t v = within.first(); v < g_.size(); v = within.next(v + 1)) {
            BitVec k(g_.size());
            k.set(v);
            BitVec cand = g_.neighbors(v) & within;
            cand.reset_below(v + 1);
            int r = grow(k, cand);
            if (r == 1) {
                res.status = SearchStatus::Found;
                res.clique = found_;
                break;
            }
            if (r == 2) {
                res.status = SearchStatus::BudgetExceeded;
                break;
            }
        }
        res.nodes = nodes_;
        return res;
    }

   private:
    // 0: none in this subtree, 1: found, 2: budget exhausted.
    int grow(const BitVec &k, const BitVec &cand) {
        if (++nodes_ > budget_) return 2;
        bool simplicial = true;
        k.for_each([&](size_t x) {
            if (simplicial && !is_clique_set(g_, g_.neighbors(x).minus(k))) simplicial = false;
        });
        if (simplicial) {
            found_ = k;
            return 1;
        }
        // Vertices outside k | cand stay outside every extension of this branch.
        BitVec reach = k | cand;
        bool ok = true;
        k.for_each([&](size_t x) {
            if (ok && !is_clique_set(g_, g_.neighbors(x).minus(reach))) ok = false;
        });
        if (!ok) return 0;
        for (size_t w = cand.first(); w < g_.size(); w = cand.next(w + 1)) {
            BitVec k2 = k;
            k2.set(w);
            BitVec c2 = cand & g_.neighbors(w);
            c2.reset_below(w + 1);
            int r = grow(k2, c2);
            if (r) return r;
        }
        return 0;
    }

    const Graph &g_;
    uint64_t budget_;
    uint64_t nodes_ = 0;
    BitVec found_;
};

}  // namespace

SimplicialSearch search_simplicial_clique(const Graph &g, const BitVec &within, uint64_t budget) {
    if (within.size() != g.size()) throw std::invalid_argument("search_simplicial_clique: size mismatch");
    return CliqueSearch(g, budget).run(within);
}

std::optional<BitVec> find_simplicial_clique(const Graph &g, uint64_t budget) {
    auto r = search_simplicial_clique(g, BitVec::full(g.size()), budget);
    if (r.status == SearchStatus::BudgetExceeded) throw BudgetExceeded("simplicial clique search exceeded " + std::to_string(budget) + " nodes");
    if (r.status == SearchStatus::Found) return r.clique;
    return std::nullopt;
}

std::optional<BitVec> find_simplicial_clique_exhaustive(const Graph &g) {
    size_t n = g.size();
    if (n > 20) throw std::invalid_argument("find_simplicial_clique_exhaustive: n > 20");
    for (uint32_t s = 1; s < (1u << n); s++) {
        BitVec k(n);
        for (size_t i = 0; i < n; i++)
            if (s >> i & 1) k.set(i);
        if (is_simplicial_clique(g, k)) return k;
    }
    return std::nullopt;
}

ScfVerdict scf_verdict(const Graph &g, uint64_t budget) {
    ScfVerdict v;
    if (g.size() == 0) {
        v.claw_free = v.is_scf = true;
        return v;
    }
    v.claw_free = !quick_claw(g, 4 * g.size()) && is_claw_free_via_tree(g, decompose(g));
    if (!v.claw_free) return v;
    v.is_scf = true;
    for (const auto &comp : components(g)) {
        if (comp.count() == 1) {
            v.witnesses.emplace_back(comp);
            continue;
        }
        auto r = search_simplicial_clique(g, comp, budget);
        if (r.status == SearchStatus::Found) {
            v.witnesses.emplace_back(r.clique);
        } else {
            v.witnesses.emplace_back(std::nullopt);
            v.is_scf = false;
            if (r.status == SearchStatus::BudgetExceeded) v.budget_exceeded = true;
        }
    }
    return v;
}

}  // namespace twinscf
