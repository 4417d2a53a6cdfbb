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

#include "twinscf/models.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <deque>
#include <set>

#include "twinscf/collapse.h"
#include "twinscf/scf.h"

namespace twinscf {
namespace {

// Per-qubit letters 0 = I, 1 = X, 2 = Y, 3 = Z.
std::vector<int> letters(const PhasedString &s, size_t q) {
    std::vector<int> out(q);
    for (size_t i = 0; i < q; i++) {
        bool z = s.exps.test(i), x = s.exps.test(q + i);
        out[i] = x && z ? 2 : x ? 1 : z ? 3 : 0;
    }
    return out;
}

bool anticommute_by_letters(const std::vector<int> &a, const std::vector<int> &b) {
    int odd = 0;
    for (size_t i = 0; i < a.size(); i++) odd ^= a[i] && b[i] && a[i] != b[i];
    return odd;
}

TEST(Models, SubstreamsAreDistinctAndStable) {
    EXPECT_EQ(substream_seed(7, 3), substream_seed(7, 3));
    std::set<uint64_t> seen;
    for (uint64_t m = 0; m < 4; m++)
        for (uint64_t i = 0; i < 256; i++) seen.insert(substream_seed(m, i));
    EXPECT_EQ(seen.size(), 1024u);
}

TEST(Models, GnpEdgeDensity) {
    Rng rng(5);
    size_t edges = 0, trials = 200, n = 30;
    for (size_t t = 0; t < trials; t++) edges += sample_gnp(n, 0.3, rng).edge_count();
    double pairs = static_cast<double>(trials * n * (n - 1) / 2);
    double mean = static_cast<double>(edges) / pairs;
    EXPECT_NEAR(mean, 0.3, 3 * std::sqrt(0.3 * 0.7 / pairs));
}

TEST(Models, AlphabetParsing) {
    EXPECT_EQ(pauli_pair_label(0), "XX");
    EXPECT_EQ(pauli_pair_label(5), "YZ");
    EXPECT_EQ(parse_alphabet("XX,YZ,ZY"), (std::vector<int>{0, 5, 7}));
    EXPECT_EQ(parse_alphabet("all").size(), 9u);
    EXPECT_EQ(format_alphabet(parse_alphabet("XX,ZZ")), "XX,ZZ");
    EXPECT_THROW(parse_alphabet("XQ"), std::invalid_argument);
    EXPECT_THROW(parse_alphabet("XX,XX"), std::invalid_argument);
    EXPECT_EQ(parse_tiling("3x5"), (Tiling{3, 5}));
    EXPECT_THROW(parse_tiling("3x"), std::invalid_argument);
    EXPECT_THROW(parse_tiling("0x2"), std::invalid_argument);
}

TEST(Models, BrickGeometry) {
    const auto &geo = brick_geometry();
    Tiling t{4, 4};
    std::vector<std::set<size_t>> adj(geo.qubits(t));
    for (size_t cb = 0; cb < t.b; cb++)
        for (size_t ca = 0; ca < t.a; ca++)
            for (size_t e = 0; e < geo.edges.size(); e++) {
                auto [u, v] = geo.endpoints(e, ca, cb, t);
                adj[u].insert(v);
                adj[v].insert(u);
            }
    for (size_t q = 0; q < adj.size(); q++) EXPECT_EQ(adj[q].size(), q % 4 < 2 ? 3u : 2u) << q;
    // Connected and bipartite.
    std::vector<int> color(adj.size(), -1);
    std::deque<size_t> queue{0};
    color[0] = 0;
    while (!queue.empty()) {
        size_t x = queue.front();
        queue.pop_front();
        for (size_t y : adj[x]) {
            if (color[y] < 0) {
                color[y] = 1 - color[x];
                queue.push_back(y);
            }
            EXPECT_NE(color[y], color[x]);
        }
    }
    for (int c : color) EXPECT_GE(c, 0);
    EXPECT_TRUE(tiling_is_wrap_free(geo, t));
    EXPECT_FALSE(tiling_is_wrap_free(geo, Tiling{1, 1}));
}

TEST(Models, FullBrickAtPOne) {
    Rng rng(1);
    Hamiltonian h = sample_brick(1.0, Tiling{4, 4}, rng);
    EXPECT_EQ(h.ctx().width(), 64u);
    EXPECT_EQ(h.terms().size(), 45u * 16u);
    for (const auto &t : h.terms()) {
        auto l = letters(t, 64);
        EXPECT_EQ(64 - std::count(l.begin(), l.end(), 0), 2);
    }
}

TEST(Models, TooSmallTilingRejected) {
    EXPECT_THROW(lattice_hamiltonian(square_nuclei_geometry(), {0}, 0b111, Tiling{1, 3}), std::invalid_argument);
    EXPECT_THROW(lattice_hamiltonian(square_nuclei_geometry(), {0}, 0b111, Tiling{2, 3}), std::invalid_argument);
    EXPECT_NO_THROW(lattice_hamiltonian(square_nuclei_geometry(), {0}, 0b111, Tiling{3, 3}));
}

TEST(Models, SampledCellsRespectMandatoryEdges) {
    Rng rng(2);
    std::vector<int> alpha = parse_alphabet("XX,YY");
    std::vector<size_t> hist(4, 0);
    size_t trials = 30000;
    for (size_t i = 0; i < trials; i++) {
        CellMask c = sample_cell(brick_geometry(), alpha, 0.5, rng);
        for (size_t e = 0; e < 5; e++) EXPECT_NE((c >> (2 * e)) & 3, 0u);
        hist[c & 3]++;
    }
    // At p = 1/2 the three non-empty subsets of an edge are equally likely.
    for (size_t s = 1; s < 4; s++) EXPECT_NEAR(hist[s] / double(trials), 1.0 / 3, 3 * std::sqrt(2.0 / 9 / trials));
    CellMask sq = sample_cell(square_nuclei_geometry(), {0}, 1e-9, rng);
    EXPECT_EQ(sq, 0b011u);
    EXPECT_THROW(sample_cell(brick_geometry(), alpha, 0.0, rng), std::invalid_argument);
}

TEST(Models, AdmissibleCountsMatchDirectEnumeration) {
    struct Case {
        const LatticeGeometry *geo;
        size_t na;
    };
    for (Case c : {Case{&brick_geometry(), 1}, Case{&brick_geometry(), 2}, Case{&square_nuclei_geometry(), 3}, Case{&square_nuclei_geometry(), 4}}) {
        size_t m = c.geo->edges.size() * c.na;
        std::vector<double> direct(m + 1, 0);
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); mask++) {
            bool ok = true;
            for (size_t e = 0; e < c.geo->edges.size(); e++)
                if (c.geo->edges[e].mandatory && ((mask >> (e * c.na)) & ((1u << c.na) - 1)) == 0) ok = false;
            if (ok) direct[std::popcount(mask)]++;
        }
        for (size_t k = 0; k <= m; k++) EXPECT_EQ(admissible_cells(*c.geo, c.na, k), direct[k]) << c.geo->name << " k=" << k;
    }
    EXPECT_EQ(admissible_cells(brick_geometry(), 9, 5), 59049.0);
    EXPECT_EQ(admissible_cells(brick_geometry(), 9, 4), 0.0);
    EXPECT_EQ(admissible_cells(square_nuclei_geometry(), 9, 2), 81.0);
    EXPECT_EQ(admissible_cells(square_nuclei_geometry(), 9, 1), 0.0);
    // Independent edges: Pr = (1 - (1-p)^{|A|})^{mandatory}.
    EXPECT_NEAR(admissible_probability(brick_geometry(), 9, 0.1), std::pow(1 - std::pow(0.9, 9), 5), 1e-12);
}

TEST(Models, EnumerationMatchesBruteForceSum) {
    const auto &geo = square_nuclei_geometry();
    std::vector<int> alpha = parse_alphabet("XX,ZY");
    Tiling t{3, 3};
    ExactLatticeCounts c = enumerate_lattice(geo, alpha, t, CollapseMode::Twins);
    for (size_t k = 0; k <= c.m; k++) EXPECT_EQ(static_cast<double>(c.cells[k]), admissible_cells(geo, 2, k));
    for (double p : {0.2, 0.5, 0.9}) {
        double norm = 0, before = 0, after = 0, xi = 0;
        for (CellMask mask = 0; mask < 64; mask++) {
            if ((mask & 3) == 0 || (mask & 12) == 0) continue;
            int k = std::popcount(mask);
            double w = std::pow(p, k) * std::pow(1 - p, 6 - k);
            Graph g = lattice_graph(geo, alpha, mask, t);
            CollapseResult r = collapse_twins(g);
            norm += w;
            before += w * scf_verdict(g).is_scf;
            after += w * scf_verdict(r.reduced).is_scf;
            xi += w * r.delta_xi;
        }
        ExactPoint pt = exact_point(c, p);
        EXPECT_NEAR(pt.p_scf_before, before / norm, 1e-12);
        EXPECT_NEAR(pt.p_scf_after, after / norm, 1e-12);
        EXPECT_NEAR(pt.delta_xi_mean, xi / norm, 1e-10);
        EXPECT_NEAR(norm, admissible_probability(geo, 2, p), 1e-12);
    }
}

TEST(Models, EnumerationIndependentOfJobs) {
    std::vector<int> alpha = parse_alphabet("XX,YZ");
    auto a = enumerate_lattice(brick_geometry(), alpha, Tiling{2, 3}, CollapseMode::Twins, kDefaultSimplicialBudget, 1);
    auto b = enumerate_lattice(brick_geometry(), alpha, Tiling{2, 3}, CollapseMode::Twins, kDefaultSimplicialBudget, 3);
    EXPECT_EQ(a.scf_before, b.scf_before);
    EXPECT_EQ(a.scf_after, b.scf_after);
    EXPECT_EQ(a.delta_xi_sum, b.delta_xi_sum);
}

TEST(Models, MajoranaCompleteModels) {
    Rng rng(3);
    Hamiltonian h2 = sample_majorana(2, 1.0, rng);
    EXPECT_EQ(h2.terms().size(), 7u);
    EXPECT_NEAR(collapse_full(build_frustration_graph(h2).graph).delta_xi, 5.0 / 6.0, 1e-12);
    Hamiltonian h3 = sample_majorana(3, 1.0, rng);
    EXPECT_EQ(h3.terms().size(), 30u);
    CollapseResult r3 = collapse_full(build_frustration_graph(h3).graph);
    // Twin merges alone stop at the line graph of K6 formed by the quadratic terms.
    EXPECT_NEAR(collapse_twins(build_frustration_graph(h3).graph).delta_xi, 0.5, 1e-12);
    EXPECT_NEAR(r3.delta_xi, 29.0 / 30.0, 1e-12);
    EXPECT_TRUE(scf_verdict(r3.reduced).is_scf);
    EXPECT_TRUE(sample_majorana(3, 0.0, rng).terms().empty());
    for (const auto &t : h3.terms()) {
        EXPECT_GE(std::abs(t.scalar), 0.1);
        EXPECT_LE(std::abs(t.scalar), 1.0);
    }
}

TEST(Models, UniformPauliSingleQubit) {
    Rng rng(4);
    Hamiltonian h = sample_uniform_pauli(1, 1, 1.0, 0, rng);
    std::set<int> seen;
    for (const auto &t : h.terms()) seen.insert(letters(t, 1)[0]);
    EXPECT_EQ(seen, (std::set<int>{1, 2, 3}));
    EXPECT_THROW(sample_uniform_pauli(1, 1, 1.0, 4, rng), std::invalid_argument);
    EXPECT_EQ(sample_uniform_pauli(3, 0, 1.0, 0, rng).terms().size(), 63u);
}

TEST(Models, KLocalAnticommutationFormula) {
    // Every ordered pair of weight-k strings, compared letter by letter.
    for (auto [n, k] : {std::pair<size_t, size_t>{4, 2}, {5, 3}, {3, 3}, {6, 1}}) {
        Rng rng(0);
        Hamiltonian all = sample_uniform_pauli(n, k, 1.0, 0, rng);
        ASSERT_EQ(static_cast<double>(all.terms().size()), binomial(n, k) * std::pow(3.0, static_cast<double>(k)));
        double anti = 0;
        for (const auto &a : all.terms())
            for (const auto &b : all.terms()) anti += anticommute_by_letters(letters(a, n), letters(b, n));
        double pairs = static_cast<double>(all.terms().size() * all.terms().size());
        EXPECT_NEAR(klocal_anticommute_probability(n, k), anti / pairs, 1e-12) << n << " " << k;
    }
}

TEST(Models, SampledStringsAreUniform) {
    Rng rng(9);
    size_t n = 6, k = 2, trials = 4000;
    double anti = 0;
    for (size_t i = 0; i < trials; i++) {
        Hamiltonian h = sample_uniform_pauli(n, k, 0.0, 2, rng);
        anti += anticommute_by_letters(letters(h.terms()[0], n), letters(h.terms()[1], n));
    }
    // Two distinct strings; the formula counts ordered pairs with repetition, so rescale.
    double m = binomial(n, k) * 9;
    double expect = klocal_anticommute_probability(n, k) * m / (m - 1);
    EXPECT_NEAR(anti / trials, expect, 3 * std::sqrt(expect * (1 - expect) / trials));
}

// Below the k-local threshold the frustration graph should be claw-free with probability at
// least 1 - eps.
TEST(Models, KLocalThresholdIsMostlyClawFree) {
    const size_t n = 10000, k = 2, trials = 100;
    const double eps = 0.1;
    size_t m = static_cast<size_t>(klocal_threshold(n, k, eps));
    ASSERT_GT(m, 100u);
    Rng rng(31);
    size_t free = 0;
    for (size_t t = 0; t < trials; t++) free += is_claw_free_naive(build_frustration_graph(sample_uniform_pauli(n, k, 0, m, rng)).graph);
    double frac = static_cast<double>(free) / trials;
    EXPECT_GE(frac, 1 - eps - 3 * std::sqrt(eps * (1 - eps) / trials)) << "m=" << m;
}

TEST(Models, ThresholdAndClawFormulas) {
    EXPECT_DOUBLE_EQ(expected_claws(4, 0.5), 1.0 / 16.0);
    EXPECT_NEAR(klocal_threshold(200, 2, 0.01) / klocal_threshold(100, 2, 0.01), std::pow(2.0, 0.75), 1e-12);
    EXPECT_NEAR(klocal_threshold(100, 2, 0.16) / klocal_threshold(100, 2, 0.01), 2.0, 1e-12);
    EXPECT_EQ(binomial(20, 4), 4845.0);
    for (double p : {0.01, 0.05, 0.2, 0.5, 0.8, 0.95}) {
        GnpBounds b = gnp_bounds(20, p);
        EXPECT_LE(b.lower, b.upper) << p;
        EXPECT_GE(b.lower, 0.0);
        EXPECT_LE(b.upper, 1.0);
    }
}

TEST(Models, GnpFrequencyWithinBounds) {
    Rng rng(11);
    size_t n = 12, trials = 3000;
    for (double p : {0.02, 0.1}) {
        double hits = 0;
        for (size_t i = 0; i < trials; i++) hits += scf_verdict(sample_gnp(n, p, rng)).is_scf;
        double f = hits / trials, sigma = std::sqrt(std::max(f * (1 - f), 1e-4) / trials);
        GnpBounds b = gnp_bounds(n, p);
        EXPECT_LE(f, b.upper + 3 * sigma) << p;
        EXPECT_GE(f, b.lower - 3 * sigma) << p;
    }
}

TEST(Models, SamplersAreDeterministic) {
    Rng a(42), b(42);
    Hamiltonian x = sample_brick(0.3, Tiling{4, 4}, a), y = sample_brick(0.3, Tiling{4, 4}, b);
    ASSERT_EQ(x.terms().size(), y.terms().size());
    for (size_t i = 0; i < x.terms().size(); i++) {
        EXPECT_EQ(x.terms()[i].exps, y.terms()[i].exps);
        EXPECT_EQ(x.terms()[i].scalar, y.terms()[i].scalar);
    }
}

TEST(Models, EvaluateInstance) {
    // Claw K_{1,3}: the leaves merge, then the two survivors are true twins.
    Graph claw(4, {{0, 1}, {0, 2}, {0, 3}});
    InstanceOutcome o = evaluate_instance(claw, CollapseMode::Twins);
    EXPECT_FALSE(o.scf_before);
    EXPECT_TRUE(o.scf_after);
    EXPECT_NEAR(o.delta_xi, 0.75, 1e-15);
    EXPECT_FALSE(o.flagged);
}

}  // namespace
}  // namespace twinscf
