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

#ifndef TWINSCF_COLLAPSE_H
#define TWINSCF_COLLAPSE_H

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "twinscf/bitvec.h"
#include "twinscf/graph.h"
#include "twinscf/mod_decomp.h"

namespace twinscf {

enum class EventKind { FalseMerge, TrueMerge, LineModule };

/// One collapse step. Vertex ids always refer to the input graph.
struct CollapseEvent {
    EventKind kind = EventKind::FalseMerge;
    int round = 0;
    size_t kept = 0;
    /// Removed siblings (ascending) for twin merges; all module members including `kept` for
    /// line-module collapses.
    std::vector<size_t> others;

    bool operator==(const CollapseEvent &o) const {
        return kind == o.kind && round == o.round && kept == o.kept && others == o.others;
    }
};

struct CollapseTrace {
    std::vector<CollapseEvent> events;

    /// Lines `F r kept removed...`, `T r kept removed...`, `L r kept members...`.
    std::string to_text() const;
    static CollapseTrace from_text(std::istream &in);
    bool operator==(const CollapseTrace &o) const { return events == o.events; }
};

struct CollapseResult {
    /// Surviving vertices, relabeled 0..k-1 in ascending original order.
    Graph reduced;
    CollapseTrace trace;
    /// reduced vertex -> input vertex.
    std::vector<size_t> vertex_map;
    /// Surviving vertices as a subset of the input.
    BitVec alive;
    /// Fraction of originally non-isolated vertices removed, see collapse.cc.
    double delta_xi = 0.0;
    /// Highest round index that produced an event (0 if none).
    int rounds = 0;
};

/// Alternating false-sibling / true-sibling rounds until neither changes the graph.
CollapseResult collapse_twins(const Graph &g);
/// Twin rounds interleaved with sweeps collapsing prime modules whose children are all leaves
/// and whose induced graph is a line graph, to a global fixed point.
CollapseResult collapse_full(const Graph &g);

/// Applies a trace to g, validating every event. Throws std::invalid_argument on a bad event.
CollapseResult replay_trace(const Graph &g, const CollapseTrace &trace);

/// Maximal false-sibling (equal open neighborhood) sets of size >= 2 within `alive`,
/// each ascending, ordered by minimum. Vertices without neighbors in `alive` are false siblings
/// of each other.
std::vector<std::vector<size_t>> false_sibling_sets(const Graph &g, const BitVec &alive);
/// Same for true siblings (equal closed neighborhoods).
std::vector<std::vector<size_t>> true_sibling_sets(const Graph &g, const BitVec &alive);
/// Sibling sets read off the modular decomposition: leaf children of Parallel (false) or
/// Serial (true) nodes. Used to cross-check the hashing-based search.
std::vector<std::vector<size_t>> sibling_sets_via_tree(const MDTree &t, bool true_twins);

/// Exact line-graph recognition by root-graph reconstruction.
bool is_line_graph(const Graph &g);
/// Line-graph recognition by scanning for the nine forbidden induced subgraphs. Exponential;
/// intended as an oracle for small graphs.
bool is_line_graph_beineke(const Graph &g);
/// The nine minimal non-line graphs.
const std::vector<Graph> &beineke_graphs();

/// True iff the tree has no Prime node.
bool is_cograph(const MDTree &t);

}  // namespace twinscf

#endif
