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

#include "twinscf/collapse.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "twinscf/errors.h"

namespace twinscf {

namespace {

std::vector<std::vector<size_t>> group_by_key(const Graph &g, const BitVec &alive, bool closed) {
    std::unordered_map<BitVec, size_t, BitVecHash> index;
    std::vector<std::vector<size_t>> groups;
    alive.for_each([&](size_t v) {
        BitVec key = g.neighbors(v) & alive;
        if (closed) key.set(v);
        auto [it, inserted] = index.emplace(std::move(key), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(v);
    });
    std::vector<std::vector<size_t>> out;
    for (auto &grp : groups)
        if (grp.size() >= 2) out.push_back(std::move(grp));
    return out;
}

// Bookkeeping shared by the collapse drivers and trace replay.
//
// Each surviving vertex stands for the class of input vertices merged into it. The removed
// fraction is (N - S) / N where N counts input vertices with at least one neighbor and S counts
// surviving classes that contain at least one of them.
class CollapseState {
   public:
    explicit CollapseState(const Graph &g) : g_(g), alive_(BitVec::full(g.size())), touched_(g.size()) {
        for (size_t v = 0; v < g.size(); v++) touched_.set(v, g.degree(v) > 0);
        original_touched_ = touched_.count();
    }

    const BitVec &alive() const { return alive_; }
    int round() const { return round_; }
    void set_round(int r) { round_ = r; }

    void merge(EventKind kind, int round, size_t kept, std::vector<size_t> others) {
        for (size_t v : others) {
            if (v == kept) continue;
            alive_.reset(v);
            if (touched_.test(v)) touched_.set(kept);
        }
        trace_.events.push_back({kind, round, kept, std::move(others)});
        last_round_ = std::max(last_round_, round);
    }

    CollapseResult finish() {
        CollapseResult r;
        r.vertex_map = alive_.to_vector();
        r.reduced = induced_subgraph(g_, r.vertex_map);
        r.alive = alive_;
        r.trace = std::move(trace_);
        r.rounds = last_round_;
        size_t surviving = touched_.and_count(alive_);
        r.delta_xi = original_touched_ ? static_cast<double>(original_touched_ - surviving) / static_cast<double>(original_touched_) : 0.0;
        return r;
    }

    // One false round then one true round. Returns true if either merged something.
    bool twin_round_pair() {
        bool changed = false;
        for (bool closed : {false, true}) {
            round_++;
            auto sets = group_by_key(g_, alive_, closed);
            for (auto &s : sets) {
                size_t kept = s.front();
                s.erase(s.begin());
                merge(closed ? EventKind::TrueMerge : EventKind::FalseMerge, round_, kept, std::move(s));
            }
            changed |= !sets.empty();
        }
        if (!changed) round_ -= 2;
        return changed;
    }

    bool line_module_sweep() {
        if (alive_.none()) return false;
        MDTree t = decompose(g_, alive_);
        std::vector<std::vector<size_t>> modules;
        for (const auto &node : t.nodes) {
            if (node.kind != NodeKind::Prime) continue;
            bool leaves = std::all_of(node.children.begin(), node.children.end(), [&](size_t c) { return t.nodes[c].is_leaf(); });
            if (!leaves) continue;
            std::vector<size_t> members = node.vertices.to_vector();
            if (is_line_graph(induced_subgraph(g_, members))) modules.push_back(std::move(members));
        }
        std::sort(modules.begin(), modules.end());
        for (auto &m : modules) {
            size_t kept = m.front();
            merge(EventKind::LineModule, round_, kept, std::move(m));
        }
        return !modules.empty();
    }

   private:
    const Graph &g_;
    BitVec alive_;
    BitVec touched_;
    size_t original_touched_ = 0;
    CollapseTrace trace_;
    int round_ = 0;
    int last_round_ = 0;
};

}  // namespace

std::vector<std::vector<size_t>> false_sibling_sets(const Graph &g, const BitVec &alive) { return group_by_key(g, alive, false); }

std::vector<std::vector<size_t>> true_sibling_sets(const Graph &g, const BitVec &alive) { return group_by_key(g, alive, true); }

std::vector<std::vector<size_t>> sibling_sets_via_tree(const MDTree &t, bool true_twins) {
    NodeKind want = true_twins ? NodeKind::Serial : NodeKind::Parallel;
    std::vector<std::vector<size_t>> out;
    for (const auto &node : t.nodes) {
        if (node.kind != want) continue;
        std::vector<size_t> leaves;
        for (size_t c : node.children)
            if (t.nodes[c].is_leaf()) leaves.push_back(t.nodes[c].vertex);
        if (leaves.size() >= 2) {
            std::sort(leaves.begin(), leaves.end());
            out.push_back(std::move(leaves));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CollapseResult collapse_twins(const Graph &g) {
    CollapseState s(g);
    while (s.twin_round_pair()) {
    }
    return s.finish();
}

CollapseResult collapse_full(const Graph &g) {
    CollapseState s(g);
    while (true) {
        while (s.twin_round_pair()) {
        }
        if (!s.line_module_sweep()) break;
    }
    return s.finish();
}

namespace {

bool is_module_within(const Graph &g, const BitVec &alive, const BitVec &members) {
    size_t k = members.count();
    bool ok = true;
    alive.minus(members).for_each([&](size_t y) {
        size_t c = g.neighbors(y).and_count(members);
        if (c != 0 && c != k) ok = false;
    });
    return ok;
}

}  // namespace

CollapseResult replay_trace(const Graph &g, const CollapseTrace &trace) {
    CollapseState s(g);
    for (const auto &e : trace.events) {
        std::string where = "event at round " + std::to_string(e.round) + ": ";
        if (e.kept >= g.size() || !s.alive().test(e.kept)) throw std::invalid_argument(where + "kept vertex not alive");
        BitVec members(g.size());
        for (size_t v : e.others) {
            if (v >= g.size() || !s.alive().test(v)) throw std::invalid_argument(where + "vertex not alive");
            members.set(v);
        }
        members.set(e.kept);
        if (e.kind == EventKind::LineModule) {
            if (members.first() != e.kept) throw std::invalid_argument(where + "kept is not the module minimum");
            if (!is_module_within(g, s.alive(), members)) throw std::invalid_argument(where + "members do not form a module");
            if (!is_line_graph(induced_subgraph(g, members))) throw std::invalid_argument(where + "module is not a line graph");
        } else {
            bool closed = e.kind == EventKind::TrueMerge;
            auto key = [&](size_t v) {
                BitVec k = g.neighbors(v) & s.alive();
                if (closed) k.set(v);
                return k;
            };
            BitVec ref = key(e.kept);
            for (size_t v : e.others)
                if (key(v) != ref) throw std::invalid_argument(where + "vertices are not siblings");
        }
        s.merge(e.kind, e.round, e.kept, e.others);
    }
    return s.finish();
}

std::string CollapseTrace::to_text() const {
    std::ostringstream out;
    for (const auto &e : events) {
        out << (e.kind == EventKind::FalseMerge ? 'F' : e.kind == EventKind::TrueMerge ? 'T' : 'L') << ' ' << e.round << ' ' << e.kept;
        for (size_t v : e.others) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

CollapseTrace CollapseTrace::from_text(std::istream &in) {
    CollapseTrace t;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        CollapseEvent e;
        if (tag == "F") {
            e.kind = EventKind::FalseMerge;
        } else if (tag == "T") {
            e.kind = EventKind::TrueMerge;
        } else if (tag == "L") {
            e.kind = EventKind::LineModule;
        } else {
            throw ParseError("unknown event tag '" + tag + "'", lineno);
        }
        long long r = 0, kept = 0;
        if (!(ss >> r >> kept) || r < 0 || kept < 0) throw ParseError("expected round and kept vertex", lineno);
        e.round = static_cast<int>(r);
        e.kept = static_cast<size_t>(kept);
        long long v = 0;
        while (ss >> v) {
            if (v < 0) throw ParseError("negative vertex", lineno);
            e.others.push_back(static_cast<size_t>(v));
        }
        if (!ss.eof()) throw ParseError("malformed vertex list", lineno);
        if (e.others.empty()) throw ParseError("event without members", lineno);
        t.events.push_back(std::move(e));
    }
    return t;
}

bool is_cograph(const MDTree &t) {
    return std::none_of(t.nodes.begin(), t.nodes.end(), [](const MDNode &n) { return n.kind == NodeKind::Prime; });
}

// Line-graph recognition.
//
// Vertices of a connected component are visited in BFS order and each is assigned an edge
// (a, b) of a partial root graph. A visited vertex v with visited neighbors S must share an
// endpoint with the first edge in S, and the root edges incident to a or b must be exactly S.
// The few ambiguous cases (the triangle/star choice) are resolved by backtracking.
namespace {

class RootBuilder {
   public:
    RootBuilder(const Graph &g, std::vector<size_t> order)
        : g_(g), order_(std::move(order)), processed_(g.size()), ea_(g.size()), eb_(g.size()) {}

    bool run() {
        inc_.assign(order_.size() + 1, BitVec(g_.size()));
        return place(0);
    }

   private:
    bool place(size_t t) {
        if (t == order_.size()) return true;
        size_t v = order_[t];
        if (t == 0) return assign(t, v, 0, 1, 2);
        BitVec s = g_.neighbors(v) & processed_;
        size_t s0 = s.first();
        std::array<size_t, 2> as{ea_[s0], eb_[s0]};
        size_t na = t == 1 ? 1 : 2;
        for (size_t i = 0; i < na; i++) {
            size_t a = as[i];
            if (!inc_[a].is_subset_of(s)) continue;
            BitVec rest = s.minus(inc_[a]);
            if (rest.none()) {
                if (assign(t, v, a, roots_, roots_ + 1)) return true;
                continue;
            }
            size_t r0 = rest.first();
            for (size_t b : {ea_[r0], eb_[r0]}) {
                if (b == a) continue;
                if (!inc_[b].is_subset_of(s) || !rest.is_subset_of(inc_[b]) || inc_[a].intersects(inc_[b])) continue;
                if (assign(t, v, a, b, roots_)) return true;
            }
        }
        return false;
    }

    bool assign(size_t t, size_t v, size_t a, size_t b, size_t new_roots) {
        size_t saved = roots_;
        roots_ = new_roots;
        ea_[v] = a;
        eb_[v] = b;
        inc_[a].set(v);
        inc_[b].set(v);
        processed_.set(v);
        if (place(t + 1)) return true;
        processed_.reset(v);
        inc_[a].reset(v);
        inc_[b].reset(v);
        roots_ = saved;
        return false;
    }

    const Graph &g_;
    std::vector<size_t> order_;
    BitVec processed_;
    std::vector<size_t> ea_, eb_;
    std::vector<BitVec> inc_;
    size_t roots_ = 0;
};

std::vector<size_t> bfs_order(const Graph &g, const BitVec &component) {
    std::vector<size_t> order;
    BitVec seen(g.size());
    size_t start = component.first();
    order.push_back(start);
    seen.set(start);
    for (size_t i = 0; i < order.size(); i++) {
        BitVec nb = g.neighbors(order[i]).minus(seen);
        nb.for_each([&](size_t w) { order.push_back(w); });
        seen |= nb;
    }
    return order;
}

}  // namespace

bool is_line_graph(const Graph &g) {
    for (const auto &comp : components(g)) {
        if (comp.count() <= 2) continue;
        RootBuilder rb(g, bfs_order(g, comp));
        if (!rb.run()) return false;
    }
    return true;
}

const std::vector<Graph> &beineke_graphs() {
    static const std::vector<Graph> graphs = {
        Graph(4, {{0, 3}, {1, 3}, {2, 3}}),
        Graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}}),
        Graph(5, {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}),
        Graph(6, {{0, 1}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {4, 5}}),
        Graph(6, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}}),
        Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 5}, {4, 5}}),
        Graph(6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}}),
        Graph(6, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}),
        Graph(6, {{0, 1}, {0, 2}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}),
    };
    return graphs;
}

namespace {

using SmallAdj = std::array<uint8_t, 6>;

// Smallest adjacency encoding over all relabelings; graphs with at most 6 vertices.
uint32_t canonical_code(const SmallAdj &adj, size_t k) {
    std::array<size_t, 6> perm{};
    std::iota(perm.begin(), perm.begin() + k, 0);
    uint32_t best = UINT32_MAX;
    do {
        uint32_t code = 0;
        for (size_t i = 0; i < k; i++)
            for (size_t j = i + 1; j < k; j++) code = (code << 1) | ((adj[perm[i]] >> perm[j]) & 1);
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.begin() + k));
    return best;
}

struct ForbiddenIndex {
    // Per size k: (sorted degree sequence, canonical code).
    std::vector<std::pair<std::vector<int>, uint32_t>> by_size[7];
};

const ForbiddenIndex &forbidden_index() {
    static const ForbiddenIndex idx = [] {
        ForbiddenIndex f;
        for (const auto &h : beineke_graphs()) {
            size_t k = h.size();
            SmallAdj adj{};
            std::vector<int> deg;
            for (size_t i = 0; i < k; i++) {
                for (size_t j = 0; j < k; j++)
                    if (h.adjacent(i, j)) adj[i] |= static_cast<uint8_t>(1u << j);
                deg.push_back(static_cast<int>(h.degree(i)));
            }
            std::sort(deg.begin(), deg.end());
            f.by_size[k].emplace_back(deg, canonical_code(adj, k));
        }
        return f;
    }();
    return idx;
}

bool subset_forbidden(const Graph &g, const std::vector<size_t> &sub) {
    size_t k = sub.size();
    SmallAdj adj{};
    std::vector<int> deg(k, 0);
    for (size_t i = 0; i < k; i++)
        for (size_t j = 0; j < k; j++)
            if (i != j && g.adjacent(sub[i], sub[j])) {
                adj[i] |= static_cast<uint8_t>(1u << j);
                deg[i]++;
            }
    std::sort(deg.begin(), deg.end());
    uint32_t code = 0;
    bool have_code = false;
    for (const auto &[fdeg, fcode] : forbidden_index().by_size[k]) {
        if (fdeg != deg) continue;
        if (!have_code) {
            code = canonical_code(adj, k);
            have_code = true;
        }
        if (code == fcode) return true;
    }
    return false;
}

bool scan_subsets(const Graph &g, std::vector<size_t> &cur, size_t start, size_t k) {
    if (cur.size() == k) return subset_forbidden(g, cur);
    for (size_t v = start; v < g.size(); v++) {
        cur.push_back(v);
        if (scan_subsets(g, cur, v + 1, k)) return true;
        cur.pop_back();
    }
    return false;
}

}  // namespace

bool is_line_graph_beineke(const Graph &g) {
    for (size_t k = 4; k <= 6; k++) {
        std::vector<size_t> cur;
        if (scan_subsets(g, cur, 0, k)) return false;
    }
    return true;
}

}  // namespace twinscf
