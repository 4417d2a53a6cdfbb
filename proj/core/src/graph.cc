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

#include "twinscf/graph.h"

#include <sstream>
#include <stdexcept>

#include "twinscf/errors.h"

namespace twinscf {

Graph::Graph(size_t n, const std::vector<std::pair<size_t, size_t>> &edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

Graph Graph::complete(size_t n) {
    Graph g(n);
    for (size_t u = 0; u < n; u++)
        for (size_t v = u + 1; v < n; v++) g.add_edge(u, v);
    return g;
}

Graph Graph::cycle(size_t n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

Graph Graph::path(size_t n) {
    Graph g(n);
    for (size_t v = 1; v < n; v++) g.add_edge(v - 1, v);
    return g;
}

size_t Graph::edge_count() const {
    size_t c = 0;
    for (const auto &r : rows_) c += r.count();
    return c / 2;
}

void Graph::add_edge(size_t u, size_t v) {
    if (u >= size() || v >= size()) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    rows_[u].set(v);
    rows_[v].set(u);
}

void Graph::remove_edge(size_t u, size_t v) {
    if (u >= size() || v >= size()) throw std::out_of_range("edge endpoint out of range");
    rows_[u].reset(v);
    rows_[v].reset(u);
}

std::vector<std::pair<size_t, size_t>> Graph::edges() const {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t u = 0; u < size(); u++) {
        for (size_t v = rows_[u].next(u + 1); v < size(); v = rows_[u].next(v + 1)) out.emplace_back(u, v);
    }
    return out;
}

Graph induced_subgraph(const Graph &g, const std::vector<size_t> &vertices) {
    Graph h(vertices.size());
    for (size_t i = 0; i < vertices.size(); i++) {
        if (vertices[i] >= g.size()) throw std::out_of_range("vertex out of range");
        for (size_t j = i + 1; j < vertices.size(); j++)
            if (g.adjacent(vertices[i], vertices[j])) h.add_edge(i, j);
    }
    return h;
}

Graph induced_subgraph(const Graph &g, const BitVec &subset) {
    if (subset.size() != g.size()) throw std::out_of_range("subset size mismatch");
    return induced_subgraph(g, subset.to_vector());
}

Graph complement(const Graph &g) {
    Graph h(g.size());
    for (size_t u = 0; u < g.size(); u++)
        for (size_t v = u + 1; v < g.size(); v++)
            if (!g.adjacent(u, v)) h.add_edge(u, v);
    return h;
}

std::vector<BitVec> components(const Graph &g, const BitVec &within) {
    std::vector<BitVec> out;
    BitVec left = within;
    std::vector<size_t> stack;
    while (left.any()) {
        size_t s = left.first();
        BitVec comp(g.size());
        comp.set(s);
        left.reset(s);
        stack.assign(1, s);
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            BitVec fresh = g.neighbors(v) & left;
            fresh.for_each([&](size_t w) { stack.push_back(w); });
            comp |= fresh;
            left.subtract(fresh);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<BitVec> components(const Graph &g) { return components(g, BitVec::full(g.size())); }

std::vector<BitVec> co_components(const Graph &g, const BitVec &within) {
    std::vector<BitVec> out;
    BitVec left = within;
    std::vector<size_t> stack;
    while (left.any()) {
        size_t s = left.first();
        BitVec comp(g.size());
        comp.set(s);
        left.reset(s);
        stack.assign(1, s);
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            BitVec fresh = left.minus(g.neighbors(v));
            fresh.for_each([&](size_t w) { stack.push_back(w); });
            comp |= fresh;
            left.subtract(fresh);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

BitVec isolated_vertices(const Graph &g) {
    BitVec out(g.size());
    for (size_t v = 0; v < g.size(); v++)
        if (g.neighbors(v).none()) out.set(v);
    return out;
}

Graph read_graph(std::istream &in) {
    std::string line;
    size_t lineno = 0;
    bool have_header = false;
    size_t n = 0, m = 0, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (!have_header) {
            long long nn = -1, mm = -1;
            if (first != "g" || !(ss >> nn >> mm) || nn < 0 || mm < 0)
                throw ParseError("expected header 'g <n> <edge_count>'", lineno);
            std::string extra;
            if (ss >> extra) throw ParseError("trailing text after header", lineno);
            n = static_cast<size_t>(nn);
            m = static_cast<size_t>(mm);
            g = Graph(n);
            have_header = true;
            continue;
        }
        long long u = -1, v = -1;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) throw ParseError("expected edge 'u v'", lineno);
        if (u < 0 || v < 0 || static_cast<size_t>(u) >= n || static_cast<size_t>(v) >= n)
            throw ParseError("vertex out of range", lineno);
        if (u >= v) throw ParseError("edge must satisfy u < v", lineno);
        if (g.adjacent(u, v)) throw ParseError("duplicate edge", lineno);
        g.add_edge(u, v);
        seen++;
    }
    if (!have_header) throw ParseError("empty graph file");
    if (seen != m)
        throw ParseError("header declares " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return g;
}

std::string write_graph(const Graph &g) {
    std::ostringstream out;
    auto e = g.edges();
    out << "g " << g.size() << " " << e.size() << "\n";
    for (auto [u, v] : e) out << u << " " << v << "\n";
    return out.str();
}

}  // namespace twinscf
