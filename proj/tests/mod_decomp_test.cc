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

#include <gtest/gtest.h>

#include <random>

#include "test_graphs.h"
#include "twinscf/mod_decomp.h"

namespace twinscf {
namespace {

Graph graph_from_mask(size_t n, uint32_t mask) {
    Graph g(n);
    size_t bit = 0;
    for (size_t u = 0; u < n; u++)
        for (size_t v = u + 1; v < n; v++, bit++)
            if (mask >> bit & 1) g.add_edge(u, v);
    return g;
}

void expect_quotients_prime(const MDTree &t) {
    for (const auto &node : t.nodes) {
        if (node.kind != NodeKind::Prime) continue;
        size_t k = node.children.size();
        ASSERT_GE(k, 4u);
        Graph q(k, node.quotient_edges);
        for (uint32_t s = 1; s < (1u << k); s++) {
            size_t c = std::popcount(s);
            if (c < 2 || c == k) continue;
            BitVec b(k);
            for (size_t i = 0; i < k; i++)
                if (s >> i & 1) b.set(i);
            EXPECT_FALSE(is_module_oracle(q, b));
        }
    }
}

void expect_no_nested_same_kind(const MDTree &t) {
    for (const auto &node : t.nodes) {
        if (node.kind != NodeKind::Parallel && node.kind != NodeKind::Serial) continue;
        for (size_t c : node.children) EXPECT_NE(t.nodes[c].kind, node.kind);
    }
}

void check_against_oracle(const Graph &g) {
    MDTree t = decompose(g);
    ASSERT_EQ(tree_vertex_sets(t), strong_modules_oracle(g)) << write_graph(g);
    ASSERT_EQ(rebuild_graph(t), g);
    expect_no_nested_same_kind(t);
}

TEST(ModDecomp, SingleVertex) {
    MDTree t = decompose(Graph(1));
    EXPECT_EQ(t.root_node().kind, NodeKind::Single);
}

TEST(ModDecomp, C4IsSerialOfParallels) {
    EXPECT_EQ(dump_tree(decompose(Graph::cycle(4))),
              "Serial 0 1 2 3\n  Parallel 0 2\n    Single 0\n    Single 2\n  Parallel 1 3\n    Single 1\n    Single 3\n");
}

TEST(ModDecomp, ClawIsSerialOfCenterAndParallel) {
    EXPECT_EQ(dump_tree(decompose(testing::claw())),
              "Serial 0 1 2 3\n  Single 0\n  Parallel 1 2 3\n    Single 1\n    Single 2\n    Single 3\n");
}

TEST(ModDecomp, P4IsPrime) {
    MDTree t = decompose(Graph::path(4));
    EXPECT_EQ(t.root_node().kind, NodeKind::Prime);
    EXPECT_EQ(t.root_node().children.size(), 4u);
    EXPECT_EQ(t.root_node().quotient_edges.size(), 3u);
}

TEST(ModDecomp, ModuleOracle) {
    Graph c4 = Graph::cycle(4);
    EXPECT_TRUE(is_module_oracle(c4, BitVec(4, {0, 2})));
    EXPECT_FALSE(is_module_oracle(Graph::path(4), BitVec(4, {1, 2})));
    EXPECT_TRUE(is_module_oracle(c4, BitVec::full(4)));
}

TEST(ModDecomp, StrongModulesOracleExamples) {
    EXPECT_EQ(strong_modules_oracle(Graph::path(4)).size(), 5u);
    auto k3 = strong_modules_oracle(Graph::complete(3));
    EXPECT_EQ(k3.size(), 4u);
    auto two_k2 = strong_modules_oracle(Graph(4, {{0, 1}, {2, 3}}));
    EXPECT_EQ(two_k2.size(), 7u);
    EXPECT_THROW(strong_modules_oracle(Graph(13)), std::invalid_argument);
}

TEST(ModDecomp, AllLabeledGraphsUpToSixVertices) {
    for (size_t n = 1; n <= 6; n++) {
        uint32_t pairs = static_cast<uint32_t>(n * (n - 1) / 2);
        for (uint32_t mask = 0; mask < (1u << pairs); mask++) check_against_oracle(graph_from_mask(n, mask));
    }
}

TEST(ModDecomp, RandomGraphsUpToTenVertices) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; i++) {
        size_t n = 1 + rng() % 10;
        double p = 0.1 + 0.1 * static_cast<double>(rng() % 9);
        Graph g = testing::random_graph(n, p, rng);
        check_against_oracle(g);
        expect_quotients_prime(decompose(g));
    }
}

TEST(ModDecomp, RestrictedDecompositionKeepsIds) {
    Graph g = Graph::path(6);
    MDTree t = decompose(g, BitVec(6, {2, 3, 4, 5}));
    EXPECT_EQ(t.root_node().kind, NodeKind::Prime);
    EXPECT_EQ(t.root_node().vertices.to_vector(), (std::vector<size_t>{2, 3, 4, 5}));
}

}  // namespace
}  // namespace twinscf
