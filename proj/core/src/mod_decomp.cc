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

#include "twinscf/mod_decomp.h"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace twinscf {

const char *node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Single:
            return "Single";
        case NodeKind::Parallel:
            return "Parallel";
        case NodeKind::Serial:
            return "Serial";
        case NodeKind::Prime:
            return "Prime";
    }
    return "?";
}

namespace {

// Grows `c` (a module of g[x] containing v) to the smallest module containing c + {w}.
// Only `w` needs processing because `c` is already closed. Returns false as soon as the
// closure touches `bad` or fills all of x.
bool close_module(const Graph &g, const BitVec &x, size_t v, size_t w, BitVec &c, const BitVec &bad,
                  size_t x_count, std::vector<size_t> &stack) {
    c.set(w);
    stack.assign(1, w);
    size_t size = c.count();
    const BitVec &nv = g.neighbors(v);
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        BitVec d = g.neighbors(u) ^ nv;
        d &= x;
        d.subtract(c);
        if (d.none()) continue;
        if (d.intersects(bad)) return false;
        c |= d;
        size += d.count();
        if (size == x_count) return false;
        d.for_each([&](size_t y) { stack.push_back(y); });
    }
    return true;
}

// Maximal modules of g[x] when both g[x] and its complement are connected. In that case
// every proper module lies inside exactly one maximal module, so any closure that reaches
// an already-assigned vertex (or a vertex known to force the whole set) can be abandoned.
std::vector<BitVec> maximal_modules(const Graph &g, const BitVec &x) {
    size_t n = g.size();
    size_t x_count = x.count();
    std::vector<BitVec> parts;
    BitVec unassigned = x;
    BitVec assigned(n);
    std::vector<size_t> stack;
    while (unassigned.any()) {
        size_t v = unassigned.first();
        BitVec u(n);
        u.set(v);
        BitVec bad = assigned;
        for (size_t w = unassigned.next(v + 1); w < n; w = unassigned.next(w + 1)) {
            if (u.test(w) || bad.test(w)) continue;
            BitVec c = u;
            if (close_module(g, x, v, w, c, bad, x_count, stack)) {
                u = std::move(c);
            } else {
                bad.set(w);
            }
        }
        assigned |= u;
        unassigned.subtract(u);
        parts.push_back(std::move(u));
    }
    return parts;
}

size_t build(const Graph &g, const BitVec &x, MDTree &t) {
    size_t idx = t.nodes.size();
    t.nodes.emplace_back();
    t.nodes[idx].vertices = x;
    if (x.count() == 1) {
        t.nodes[idx].kind = NodeKind::Single;
        t.nodes[idx].vertex = x.first();
        return idx;
    }
    std::vector<BitVec> parts = components(g, x);
    NodeKind kind = NodeKind::Parallel;
    if (parts.size() == 1) {
        parts = co_components(g, x);
        kind = NodeKind::Serial;
        if (parts.size() == 1) {
            parts = maximal_modules(g, x);
            kind = NodeKind::Prime;
        }
    }
    std::sort(parts.begin(), parts.end(), [](const BitVec &a, const BitVec &b) { return a.first() < b.first(); });
    std::vector<size_t> children;
    children.reserve(parts.size());
    for (const auto &p : parts) children.push_back(build(g, p, t));
    MDNode &node = t.nodes[idx];
    node.kind = kind;
    node.children = std::move(children);
    if (kind == NodeKind::Prime) {
        for (size_t i = 0; i < parts.size(); i++)
            for (size_t j = i + 1; j < parts.size(); j++)
                if (g.adjacent(parts[i].first(), parts[j].first())) node.quotient_edges.emplace_back(i, j);
    }
    return idx;
}

}  // namespace

MDTree decompose(const Graph &g, const BitVec &within) {
    if (within.size() != g.size()) throw std::invalid_argument("decompose: vertex set size mismatch");
    if (within.none()) throw std::invalid_argument("decompose: empty vertex set");
    MDTree t;
    t.graph_size = g.size();
    t.root = build(g, within, t);
    return t;
}

MDTree decompose(const Graph &g) { return decompose(g, BitVec::full(g.size())); }

bool is_module_oracle(const Graph &g, const BitVec &subset) {
    if (subset.none()) return false;
    for (size_t y = 0; y < g.size(); y++) {
        if (subset.test(y)) continue;
        size_t k = g.neighbors(y).and_count(subset);
        if (k != 0 && k != subset.count()) return false;
    }
    return true;
}

std::vector<BitVec> strong_modules_oracle(const Graph &g) {
    size_t n = g.size();
    if (n > 12) throw std::invalid_argument("strong_modules_oracle: n > 12");
    std::vector<uint32_t> nbr(n, 0);
    for (size_t v = 0; v < n; v++)
        for (size_t w = 0; w < n; w++)
            if (g.adjacent(v, w)) nbr[v] |= 1u << w;
    std::vector<uint32_t> modules;
    for (uint32_t s = 1; s < (1u << n); s++) {
        bool ok = true;
        for (size_t y = 0; y < n && ok; y++) {
            if (s >> y & 1) continue;
            uint32_t seen = nbr[y] & s;
            ok = seen == 0 || seen == s;
        }
        if (ok) modules.push_back(s);
    }
    std::vector<BitVec> out;
    for (uint32_t a : modules) {
        bool strong = true;
        for (uint32_t b : modules) {
            if ((a & b) && (a & ~b) && (b & ~a)) {
                strong = false;
                break;
            }
        }
        if (!strong) continue;
        BitVec bv(n);
        for (size_t i = 0; i < n; i++)
            if (a >> i & 1) bv.set(i);
        out.push_back(bv);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BitVec> tree_vertex_sets(const MDTree &t) {
    std::vector<BitVec> out;
    for (const auto &node : t.nodes) out.push_back(node.vertices);
    std::sort(out.begin(), out.end());
    return out;
}

Graph rebuild_graph(const MDTree &t) {
    Graph g(t.graph_size);
    auto join = [&](const BitVec &a, const BitVec &b) {
        a.for_each([&](size_t u) { b.for_each([&](size_t v) { g.add_edge(u, v); }); });
    };
    for (const auto &node : t.nodes) {
        if (node.kind == NodeKind::Serial) {
            for (size_t i = 0; i < node.children.size(); i++)
                for (size_t j = i + 1; j < node.children.size(); j++)
                    join(t.nodes[node.children[i]].vertices, t.nodes[node.children[j]].vertices);
        } else if (node.kind == NodeKind::Prime) {
            for (auto [i, j] : node.quotient_edges)
                join(t.nodes[node.children[i]].vertices, t.nodes[node.children[j]].vertices);
        }
    }
    return g;
}

namespace {
void dump_node(const MDTree &t, size_t idx, int depth, std::ostringstream &out) {
    const MDNode &node = t.nodes[idx];
    out << std::string(2 * depth, ' ') << node_kind_name(node.kind);
    node.vertices.for_each([&](size_t v) { out << ' ' << v; });
    out << '\n';
    for (size_t c : node.children) dump_node(t, c, depth + 1, out);
}
}  // namespace

std::string dump_tree(const MDTree &t) {
    std::ostringstream out;
    if (!t.nodes.empty()) dump_node(t, t.root, 0, out);
    return out.str();
}

}  // namespace twinscf
