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

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <numeric>
#include <set>
#include <sstream>

#include "dense_oracle.h"
#include "twinscf/errors.h"
#include "twinscf/operator_algebra.h"

namespace twinscf {
namespace {

using testing::Mat;
using testing::cd;
using testing::oracle_dense;
using testing::random_string;

TEST(OperatorAlgebra, XTimesZIsMinusIY) {
    auto ctx = AlgebraContext::pauli(1);
    auto x = parse_term("1 X", ctx), z = parse_term("1 Z", ctx), y = parse_term("1 Y", ctx);
    auto xz = multiply(x, z, ctx);
    EXPECT_EQ(xz.exps, y.exps);
    EXPECT_TRUE((oracle_dense(xz, ctx) - cd(0, -1) * oracle_dense(y, ctx)).norm() < 1e-12);
}

TEST(OperatorAlgebra, MajoranaProductCancelsSharedMode) {
    auto ctx = AlgebraContext::majorana(4);
    PhasedString a(0, 1.0, BitVec(4, {0, 1}));
    PhasedString b(0, 1.0, BitVec(4, {1, 2}));
    auto ab = multiply(a, b, ctx);
    EXPECT_EQ(ab.exps, BitVec(4, {0, 2}));
    // γ1γ2γ2γ3 = γ1γ3.
    EXPECT_EQ(ab.phase, 0);
    EXPECT_TRUE((oracle_dense(ab, ctx) - oracle_dense(a, ctx) * oracle_dense(b, ctx)).norm() < 1e-12);
}

TEST(OperatorAlgebra, MultiplyMatchesDenseOnRandomPairs) {
    std::mt19937_64 rng(3);
    for (auto ctx : {AlgebraContext::pauli(3), AlgebraContext::majorana(6), AlgebraContext::majorana(5)}) {
        for (int i = 0; i < 300; i++) {
            auto a = random_string(ctx, rng), b = random_string(ctx, rng);
            EXPECT_LT((oracle_dense(multiply(a, b, ctx), ctx) - oracle_dense(a, ctx) * oracle_dense(b, ctx)).norm(), 1e-12);
        }
    }
}

TEST(OperatorAlgebra, MultiplyIsAssociative) {
    std::mt19937_64 rng(4);
    auto ctx = AlgebraContext::pauli(3);
    for (int i = 0; i < 200; i++) {
        auto a = random_string(ctx, rng), b = random_string(ctx, rng), c = random_string(ctx, rng);
        auto l = multiply(multiply(a, b, ctx), c, ctx), r = multiply(a, multiply(b, c, ctx), ctx);
        EXPECT_EQ(l.phase, r.phase);
        EXPECT_EQ(l.exps, r.exps);
    }
}

TEST(OperatorAlgebra, CommutesMatchesDense) {
    for (auto ctx : {AlgebraContext::pauli(2), AlgebraContext::majorana(4)}) {
        size_t total = size_t{1} << ctx.n();
        for (size_t u = 0; u < total; u++) {
            for (size_t v = 0; v < total; v++) {
                BitVec eu(ctx.n()), ev(ctx.n());
                for (size_t i = 0; i < ctx.n(); i++) {
                    eu.set(i, u >> i & 1);
                    ev.set(i, v >> i & 1);
                }
                PhasedString a(0, 1.0, eu), b(0, 1.0, ev);
                Mat da = oracle_dense(a, ctx), db = oracle_dense(b, ctx);
                bool dense_commute = (da * db - db * da).norm() < 1e-12;
                EXPECT_EQ(commutes(a, b, ctx), dense_commute);
            }
        }
    }
}

TEST(OperatorAlgebra, CommutationExamples) {
    auto p = AlgebraContext::pauli(2);
    EXPECT_FALSE(commutes(parse_term("1 XI", p), parse_term("1 ZI", p), p));
    EXPECT_TRUE(commutes(parse_term("1 XI", p), parse_term("1 IZ", p), p));
    auto m = AlgebraContext::majorana(6);
    auto q4 = parse_term("1 m:1,2,3,4", m);
    EXPECT_TRUE(commutes(q4, parse_term("1 m:5,6", m), m));
    EXPECT_TRUE(commutes(q4, parse_term("1 m:1,2", m), m));
    EXPECT_FALSE(commutes(q4, parse_term("1 m:1,5", m), m));
}

TEST(OperatorAlgebra, HermiticityMatchesDense) {
    std::mt19937_64 rng(5);
    for (auto ctx : {AlgebraContext::pauli(2), AlgebraContext::majorana(4)}) {
        for (int i = 0; i < 200; i++) {
            auto a = random_string(ctx, rng);
            Mat d = oracle_dense(a, ctx);
            EXPECT_EQ(is_hermitian(a, ctx), (d - d.adjoint()).norm() < 1e-12);
        }
    }
}

TEST(OperatorAlgebra, CanonicalPhaseIsHermitian) {
    for (auto ctx : {AlgebraContext::pauli(3), AlgebraContext::majorana(6)}) {
        for (size_t u = 0; u < (size_t{1} << ctx.n()); u++) {
            BitVec e(ctx.n());
            for (size_t i = 0; i < ctx.n(); i++) e.set(i, u >> i & 1);
            EXPECT_TRUE(is_hermitian(PhasedString(canonical_phase(e, ctx), 1.0, e), ctx));
        }
    }
}

TEST(OperatorAlgebra, ParseAndFormat) {
    auto p = AlgebraContext::pauli(4);
    auto t = parse_term("1.0 XXIZ", p);
    EXPECT_EQ(format_term(t, p), "1 XXIZ");
    auto id = parse_term("-2.0 IIII", p);
    EXPECT_TRUE(id.is_identity());
    EXPECT_DOUBLE_EQ(id.scalar, -2.0);
    auto y = parse_term("0.5 -YIII", p);
    EXPECT_DOUBLE_EQ(y.scalar, -0.5);
    EXPECT_EQ(format_term(y, p), "-0.5 YIII");

    auto m = AlgebraContext::majorana(6);
    auto g = parse_term("0.5 m:1,2,5", m);
    EXPECT_EQ(g.exps, BitVec(6, {0, 1, 4}));
    EXPECT_EQ(format_term(g, m), "0.5 m:1,2,5");
    // Reordering two modes flips the sign.
    auto swapped = parse_term("0.5 m:2,1,5", m);
    EXPECT_DOUBLE_EQ(swapped.scalar, -0.5);
    // i·γ1γ2 is the Hermitian form; the bare product is anti-Hermitian but the parser
    // accepts the canonical form via the m: grammar.
    auto pair = parse_term("1 m:1,2", m);
    EXPECT_TRUE(is_hermitian(pair, m));
}

TEST(OperatorAlgebra, ParseErrors) {
    auto p = AlgebraContext::pauli(2);
    EXPECT_THROW(parse_term("1 XQ", p), ParseError);
    EXPECT_THROW(parse_term("1 XXX", p), ParseError);
    EXPECT_THROW(parse_term("0 XX", p), ParseError);
    EXPECT_THROW(parse_term("1 iXX", p), ParseError);
    EXPECT_THROW(parse_term("abc XX", p), ParseError);
    EXPECT_THROW(parse_term("1 m:1,2", p), ParseError);
    auto m = AlgebraContext::majorana(4);
    EXPECT_THROW(parse_term("1 m:1,1", m), ParseError);
    EXPECT_THROW(parse_term("1 m:1,9", m), ParseError);
    EXPECT_THROW(parse_term("1 im:1,2", m), ParseError);
}

TEST(OperatorAlgebra, ReadHamiltonianFile) {
    std::istringstream in("# comment\n\n1.0 XI\n-0.5 ZZ  # trailing\n2 II\n");
    Hamiltonian h = read_hamiltonian(in);
    EXPECT_EQ(h.size(), 3u);
    EXPECT_EQ(h.identity_count(), 1u);
    std::istringstream back(write_hamiltonian(h));
    Hamiltonian h2 = read_hamiltonian(back);
    EXPECT_EQ(h2.size(), 3u);
    EXPECT_EQ(h2.terms()[1].scalar, -0.5);

    std::istringstream maj("1 m:1,2\n1 m:3,4,5,6\n");
    Hamiltonian hm = read_hamiltonian(maj);
    EXPECT_EQ(hm.ctx().kind(), AlgebraKind::MajoranaModes);
    EXPECT_EQ(hm.ctx().n(), 6u);

    std::istringstream odd("1 m:1,3\n");
    EXPECT_EQ(read_hamiltonian(odd).ctx().n(), 4u);
}

TEST(OperatorAlgebra, ReadHamiltonianErrors) {
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(read_hamiltonian(empty), ParseError);
    std::istringstream dup("1 XZ\n2 XZ\n");
    try {
        read_hamiltonian(dup);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream arity("1 XZ\n1 XZZ\n");
    EXPECT_THROW(read_hamiltonian(arity), ParseError);
}

TEST(OperatorAlgebra, FrustrationGraphs) {
    std::istringstream xz("1 X\n1 Z\n");
    auto fg = build_frustration_graph(read_hamiltonian(xz));
    EXPECT_EQ(fg.graph.edge_count(), 1u);

    std::istringstream commuting("1 XI\n1 IX\n");
    EXPECT_EQ(build_frustration_graph(read_hamiltonian(commuting)).graph.edge_count(), 0u);

    // All six quadratic terms on four modes: every vertex misses exactly its complement pair.
    std::istringstream quad("1 m:1,2\n1 m:1,3\n1 m:1,4\n1 m:2,3\n1 m:2,4\n1 m:3,4\n");
    auto oct = build_frustration_graph(read_hamiltonian(quad));
    EXPECT_EQ(oct.graph.size(), 6u);
    EXPECT_EQ(oct.graph.edge_count(), 12u);
    for (size_t v = 0; v < 6; v++) EXPECT_EQ(oct.graph.degree(v), 4u);

    std::istringstream with_id("1 X\n3 I\n1 Z\n");
    auto f = build_frustration_graph(read_hamiltonian(with_id));
    EXPECT_EQ(f.term_of_vertex, (std::vector<size_t>{0, 2}));
}

TEST(OperatorAlgebra, FrustrationGraphInvariantUnderReordering) {
    std::mt19937_64 rng(9);
    auto ctx = AlgebraContext::pauli(4);
    std::vector<PhasedString> terms;
    std::set<BitVec> seen;
    while (terms.size() < 10) {
        auto s = random_string(ctx, rng);
        if (s.exps.none() || !seen.insert(s.exps).second) continue;
        terms.push_back(PhasedString(canonical_phase(s.exps, ctx), 1.0, s.exps));
    }
    auto g1 = build_frustration_graph(Hamiltonian(ctx, terms)).graph;
    std::vector<size_t> perm(terms.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<PhasedString> shuffled;
    for (size_t i : perm) shuffled.push_back(terms[i]);
    auto g2 = build_frustration_graph(Hamiltonian(ctx, shuffled)).graph;
    for (size_t i = 0; i < perm.size(); i++)
        for (size_t j = 0; j < perm.size(); j++) EXPECT_EQ(g2.adjacent(i, j), g1.adjacent(perm[i], perm[j]));
}

TEST(OperatorAlgebra, HamiltonianValidation) {
    auto ctx = AlgebraContext::pauli(1);
    BitVec x(2, {1});
    EXPECT_THROW(Hamiltonian(ctx, {PhasedString(0, 0.0, x)}), std::invalid_argument);
    EXPECT_THROW(Hamiltonian(ctx, {PhasedString(1, 1.0, x)}), std::invalid_argument);
    EXPECT_THROW(Hamiltonian(ctx, {PhasedString(0, 1.0, x), PhasedString(2, 1.0, x)}), std::invalid_argument);
    EXPECT_THROW(multiply(PhasedString(0, 1.0, x), PhasedString(0, 1.0, BitVec(4)), ctx), std::invalid_argument);
}

TEST(OperatorAlgebra, JordanWignerMatchesDense) {
    std::mt19937_64 rng(12);
    auto m = AlgebraContext::majorana(6);
    auto p = AlgebraContext::pauli(3);
    for (int i = 0; i < 100; i++) {
        auto s = random_string(m, rng);
        EXPECT_LT((oracle_dense(jordan_wigner(s, 6), p) - oracle_dense(s, m)).norm(), 1e-12);
    }
}

TEST(OperatorAlgebra, CustomContextMatchesBuiltIn) {
    auto m = AlgebraContext::majorana(4);
    auto c = AlgebraContext::custom(m.w_matrix());
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; i++) {
        auto a = random_string(m, rng), b = random_string(m, rng);
        EXPECT_EQ(multiply(a, b, m).phase, multiply(a, b, c).phase);
        EXPECT_EQ(commutes(a, b, m), commutes(a, b, c));
    }
    auto t = parse_term("1.5 c:0110", c);
    EXPECT_EQ(t.exps, BitVec(4, {1, 2}));
}

}  // namespace
}  // namespace twinscf
