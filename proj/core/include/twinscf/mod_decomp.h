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

#ifndef TWINSCF_MOD_DECOMP_H
#define TWINSCF_MOD_DECOMP_H

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twinscf/bitvec.h"
#include "twinscf/graph.h"

namespace twinscf {

enum class NodeKind { Single, Parallel, Serial, Prime };

const char *node_kind_name(NodeKind k);

struct MDNode {
    NodeKind kind = NodeKind::Single;
    /// The leaf vertex of a Single node.
    size_t vertex = 0;
    /// Union of all descendant leaves.
    BitVec vertices;
    /// Node indices, sorted by the minimum vertex they contain.
    std::vector<size_t> children;
    /// Prime nodes only: edges of the quotient graph, as pairs of positions in `children`.
    std::vector<std::pair<size_t, size_t>> quotient_edges;

    bool is_leaf() const { return kind == NodeKind::Single; }
};

/// Modular decomposition tree. Node 0 is not special; use `root`.
struct MDTree {
    std::vector<MDNode> nodes;
    size_t root = 0;
    size_t graph_size = 0;

    const MDNode &node(size_t i) const { return nodes[i]; }
    const MDNode &root_node() const { return nodes[root]; }
};

/// Decomposes g (all vertices). Requires g.size() >= 1.
MDTree decompose(const Graph &g);
/// Decomposes the induced subgraph g[within] keeping original vertex ids. `within` must be non-empty.
MDTree decompose(const Graph &g, const BitVec &within);

/// True iff every vertex outside `subset` sees either all or none of it.
bool is_module_oracle(const Graph &g, const BitVec &subset);
/// All non-empty modules that overlap no other module, by exhaustive enumeration. n <= 12.
std::vector<BitVec> strong_modules_oracle(const Graph &g);
/// Vertex sets of all tree nodes, sorted (same order as strong_modules_oracle).
std::vector<BitVec> tree_vertex_sets(const MDTree &t);
/// Graph on t.graph_size vertices with the edges implied by the tree.
Graph rebuild_graph(const MDTree &t);
/// Indented text dump, one node per line: kind followed by its vertex set.
std::string dump_tree(const MDTree &t);

}  // namespace twinscf

#endif
