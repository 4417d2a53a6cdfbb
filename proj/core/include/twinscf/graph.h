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

#ifndef TWINSCF_GRAPH_H
#define TWINSCF_GRAPH_H

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "twinscf/bitvec.h"

namespace twinscf {

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
   public:
    Graph() = default;
    explicit Graph(size_t n) : rows_(n, BitVec(n)) {}
    Graph(size_t n, const std::vector<std::pair<size_t, size_t>> &edges);

    static Graph complete(size_t n);
    static Graph cycle(size_t n);
    static Graph path(size_t n);

    size_t size() const { return rows_.size(); }
    bool adjacent(size_t u, size_t v) const { return rows_[u].test(v); }
    const BitVec &neighbors(size_t v) const { return rows_[v]; }
    size_t degree(size_t v) const { return rows_[v].count(); }
    size_t edge_count() const;

    void add_edge(size_t u, size_t v);
    void remove_edge(size_t u, size_t v);

    /// Edges as (u, v) with u < v in lexicographic order.
    std::vector<std::pair<size_t, size_t>> edges() const;

    bool operator==(const Graph &o) const { return rows_ == o.rows_; }
    bool operator!=(const Graph &o) const { return !(*this == o); }

   private:
    std::vector<BitVec> rows_;
};

/// Induced subgraph on the listed vertices, relabeled 0..k-1 in list order.
Graph induced_subgraph(const Graph &g, const std::vector<size_t> &vertices);
Graph induced_subgraph(const Graph &g, const BitVec &subset);
Graph complement(const Graph &g);

/// Connected components of g restricted to `within`, each sorted, ordered by min vertex.
std::vector<BitVec> components(const Graph &g, const BitVec &within);
std::vector<BitVec> components(const Graph &g);
/// Components of the complement of g[within].
std::vector<BitVec> co_components(const Graph &g, const BitVec &within);

/// Vertices with no neighbors.
BitVec isolated_vertices(const Graph &g);

/// Reads the `g <n> <m>` edge-list format. Throws ParseError with a line number.
Graph read_graph(std::istream &in);
std::string write_graph(const Graph &g);

}  // namespace twinscf

#endif
