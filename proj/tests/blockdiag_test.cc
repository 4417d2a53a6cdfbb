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

#include "twinscf/blockdiag.h"

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.h"
#include "twinscf/errors.h"
#include "twinscf/mod_decomp.h"

namespace twinscf {
namespace {

using testing::Mat;
using testing::oracle_dense;

PhasedString term(const std::string &text, const AlgebraContext &ctx) { return parse_term(text, ctx); }

Hamiltonian pauli_h(size_t q, std::initializer_list<const char *> terms) {
    AlgebraContext ctx = AlgebraContext::pauli(q);
    std::vector<PhasedString> ts;
    for (const char *t : terms) ts.push_back(term(t, ctx));
    return Hamiltonian(ctx, ts);
}

std::vector<double> eigenvalues(const Mat &m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

TEST(BlockDiag, DenseSingleQubit) {
    AlgebraContext ctx = AlgebraContext::pauli(1);
    Mat x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_EQ(dense(term("1 X", ctx), ctx), x);
    for (const char *t : {"1 X", "1 Y", "1 Z", "-0.5 Y"}) EXPECT_LT((dense(term(t, ctx), ctx) - oracle_dense(term(t, ctx), ctx)).norm(), 1e-15);
}

TEST(BlockDiag, DenseMatchesTensorOracle) {
    std::mt19937_64 rng(1);
    for (size_t q = 1; q <= 4; q++) {
        AlgebraContext ctx = AlgebraContext::pauli(q);
        for (int k = 0; k < 50; k++) {
            PhasedString s = testing::random_string(ctx, rng);
            s.scalar = 0.75;
            EXPECT_LT((dense(s, ctx) - oracle_dense(s, ctx)).norm(), 1e-14);
            Mat m = Mat::Random(1 << q, 1 << q);
            MonomialOp op(s, ctx);
            EXPECT_LT((op.left(m) - oracle_dense(s, ctx) * m).norm(), 1e-12);
            EXPECT_LT((op.right(m) - m * oracle_dense(s, ctx)).norm(), 1e-12);
        }
        Hamiltonian h = testing::random_hamiltonian(q, 6, 0.5, rng);
        Mat sum = Mat::Zero(1 << q, 1 << q);
        for (const auto &t : h.terms()) sum += oracle_dense(t, ctx);
        EXPECT_LT((dense(h) - sum).norm(), 1e-13);
    }
}

TEST(BlockDiag, DenseLimits) {
    AlgebraContext big = AlgebraContext::pauli(kMaxDenseQubits + 1);
    EXPECT_THROW(dense(PhasedString(0, 1.0, BitVec(big.n())), big), std::invalid_argument);
    AlgebraContext maj = AlgebraContext::majorana(2);
    EXPECT_THROW(dense(PhasedString(0, 1.0, BitVec(2)), maj), std::invalid_argument);
}

TEST(BlockDiag, ProjectorForXX) {
    AlgebraContext ctx = AlgebraContext::pauli(2);
    Mat p = dense_projector({term("1 XX", ctx)}, {1}, ctx);
    EXPECT_NEAR(p.trace().real(), 2.0, 1e-15);
    EXPECT_LT((p * p - p).norm(), 1e-15);
    EXPECT_LT((p - p.adjoint()).norm(), 1e-15);
    Mat m = dense_projector({term("1 XX", ctx)}, {-1}, ctx);
    EXPECT_LT((p + m - Mat::Identity(4, 4)).norm(), 1e-15);
    EXPECT_LT((p * m).norm(), 1e-15);
}

// U (a g + b h) U† = (a cos θ + b sin θ) g + (b cos θ - a sin θ) h for U = exp(θ g h / 2),
// with the exponential computed independently by Eigen.
TEST(BlockDiag, RotationLemma) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    int done = 0;
    while (done < 100) {
        size_t q = 1 + rng() % 4;
        AlgebraContext ctx = AlgebraContext::pauli(q);
        PhasedString g = testing::random_string(ctx, rng), h = testing::random_string(ctx, rng);
        if (g.is_identity() || h.is_identity() || commutes(g, h, ctx)) continue;
        g = PhasedString(canonical_phase(g.exps, ctx), 1.0, g.exps);
        h = PhasedString(canonical_phase(h.exps, ctx), 1.0, h.exps);
        double a = unif(rng), b = unif(rng), theta = unif(rng);
        Mat gd = oracle_dense(g, ctx), hd = oracle_dense(h, ctx);
        Mat gen = (theta / 2) * gd * hd;
        Mat u = gen.exp();
        EXPECT_LT((dense_rotation(g, h, theta, ctx) - u).cwiseAbs().maxCoeff(), 1e-10);
        Mat lhs = u * (a * gd + b * hd) * u.adjoint();
        Mat rhs = (a * std::cos(theta) + b * std::sin(theta)) * gd + (b * std::cos(theta) - a * std::sin(theta)) * hd;
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
        done++;
    }
    AlgebraContext ctx = AlgebraContext::pauli(1);
    EXPECT_THROW(dense_rotation(term("1 X", ctx), term("1 X", ctx), 0.3, ctx), std::invalid_argument);
}

TEST(BlockDiag, FalseTwinWeights) {
    const double a = 0.7, b = 1.9;
    Hamiltonian h = pauli_h(2, {"0.7 XI", "1.9 IX"});
    BlockDiagPlan plan = plan_block_diagonalization(h);
    ASSERT_EQ(plan.total_generators, 1u);
    auto blocks = consistent_blocks(plan);
    ASSERT_EQ(blocks.size(), 2u);
    BlockWeights plus = block_weights(plan, {1}), minus = block_weights(plan, {-1});
    ASSERT_EQ(plus.survivors, std::vector<size_t>{0});
    EXPECT_NEAR(plus.weight[0], a + b, 1e-15);
    EXPECT_NEAR(minus.weight[0], a - b, 1e-15);
    BlockDiagReport rep = verify_block_diagonalization(h);
    EXPECT_TRUE(rep.passed) << rep.failure;
    std::vector<double> spec;
    for (const auto &br : rep.block_reports) spec.insert(spec.end(), br.spectrum.begin(), br.spectrum.end());
    std::sort(spec.begin(), spec.end());
    std::vector<double> expect{-a - b, -(b - a), b - a, a + b};
    for (size_t i = 0; i < 4; i++) EXPECT_NEAR(spec[i], expect[i], 1e-12);
}

TEST(BlockDiag, TrueTwinWeights) {
    Hamiltonian h = pauli_h(1, {"3 X", "4 Z"});
    BlockDiagPlan plan = plan_block_diagonalization(h);
    EXPECT_EQ(plan.total_generators, 0u);
    BlockWeights w = block_weights(plan, {});
    ASSERT_EQ(w.survivors.size(), 1u);
    EXPECT_NEAR(w.weight[w.survivors[0]], 5.0, 1e-14);
    ASSERT_EQ(w.rotations.size(), 1u);
    BlockDiagReport rep = verify_block_diagonalization(h);
    EXPECT_TRUE(rep.passed) << rep.failure;
    ASSERT_EQ(rep.block_reports.size(), 1u);
    EXPECT_NEAR(rep.block_reports[0].spectrum[0], -5.0, 1e-12);
    EXPECT_NEAR(rep.block_reports[0].spectrum[1], 5.0, 1e-12);
}

TEST(BlockDiag, NoTwinsKeepsWeights) {
    Hamiltonian single = pauli_h(1, {"-1.25 X"});
    BlockDiagPlan plan = plan_block_diagonalization(single);
    EXPECT_EQ(block_weights(plan, {}).weight, std::vector<double>{-1.25});
    EXPECT_TRUE(verify_block_diagonalization(single).passed);
    // Frustration graph P4: X1 - Z1 - X1X2... chain Z1, X1, Z1Z2, X2.
    Hamiltonian p4 = pauli_h(2, {"1 ZI", "0.5 XI", "-0.8 ZZ", "1.2 IX"});
    BlockDiagPlan p4plan = plan_block_diagonalization(p4);
    EXPECT_TRUE(p4plan.collapse.trace.events.empty());
    BlockDiagReport rep = verify_block_diagonalization(p4);
    EXPECT_TRUE(rep.passed) << rep.failure;
    EXPECT_EQ(rep.blocks, 1u);
}

TEST(BlockDiag, IdentityTermShiftsSpectrum) {
    Hamiltonian h = pauli_h(2, {"0.5 II", "1 XI", "1 IX", "0.3 ZZ"});
    BlockDiagReport rep = verify_block_diagonalization(h);
    EXPECT_TRUE(rep.passed) << rep.failure;
}

TEST(BlockDiag, NonGenericCancellation) {
    Hamiltonian h = pauli_h(2, {"1 XI", "1 IX"});
    BlockDiagPlan plan = plan_block_diagonalization(h);
    EXPECT_TRUE(block_weights(plan, {-1}).non_generic);
    EXPECT_FALSE(block_weights(plan, {1}).non_generic);
    BlockDiagReport rep = verify_block_diagonalization(h);
    EXPECT_TRUE(rep.passed) << rep.failure;
    EXPECT_TRUE(rep.non_generic);
}

TEST(BlockDiag, SymmetryBasisDecomposition) {
    AlgebraContext ctx = AlgebraContext::pauli(3);
    std::vector<PhasedString> ops{term("1 XII", ctx), term("1 IXI", ctx), term("1 IIX", ctx), term("1 XXX", ctx)};
    CollapseEvent e{EventKind::FalseMerge, 1, 0, {1, 2, 3}};
    SymmetryBasis b = false_twin_generators(ops, {e}, 1, ctx);
    // X1X2, X1X3 independent; X1·X1X2X3 = X2X3 is their product.
    EXPECT_EQ(b.generators.size(), 2u);
    auto dec = b.decompose(multiply(ops[0], ops[3], ctx), ctx);
    ASSERT_TRUE(dec.has_value());
    EXPECT_EQ(dec->first.count(), 2u);
    EXPECT_EQ(dec->second, 1);
    EXPECT_EQ(beta_sign(multiply(ops[0], ops[3], ctx), b, {-1, -1}, ctx), 1);
    EXPECT_EQ(beta_sign(multiply(ops[0], ops[3], ctx), b, {1, -1}, ctx), -1);
    EXPECT_FALSE(b.decompose(term("1 ZII", ctx), ctx).has_value());
    EXPECT_THROW(beta_sign(term("1 ZII", ctx), b, {1, 1}, ctx), VerificationError);
}

TEST(BlockDiag, CographHamiltoniansCollapseToOneTerm) {
    std::mt19937_64 rng(4);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 40; t++) {
        Hamiltonian h = testing::random_hamiltonian(1 + rng() % 4, 2 + rng() % 6, 0.5, rng);
        FrustrationGraph fg = build_frustration_graph(h);
        if (!is_cograph(decompose(fg.graph))) continue;
        checked++;
        BlockDiagPlan plan = plan_block_diagonalization(h);
        EXPECT_EQ(plan.collapse.vertex_map.size(), 1u);
        BlockDiagReport rep = verify_block_diagonalization(h);
        ASSERT_TRUE(rep.passed) << rep.failure;
        for (const auto &br : rep.block_reports) {
            ASSERT_EQ(br.survivor_weights.size(), 1u);
            double w = std::abs(br.survivor_weights[0]);
            for (double e : br.spectrum) EXPECT_NEAR(std::abs(e), w, 1e-9);
        }
    }
    EXPECT_GE(checked, 20);
}

TEST(BlockDiag, RandomHamiltoniansPreserveSpectrum) {
    std::mt19937_64 rng(5);
    size_t with_generators = 0, with_rotations = 0;
    for (int t = 0; t < 200; t++) {
        size_t q = 1 + rng() % 6;
        Hamiltonian h = testing::random_hamiltonian(q, 1 + rng() % 12, 0.3 + 0.3 * (rng() % 2), rng);
        BlockDiagReport rep = verify_block_diagonalization(h);
        ASSERT_TRUE(rep.passed) << "case " << t << ": " << rep.failure << "\n" << write_hamiltonian(h);
        EXPECT_LE(rep.completeness, 1e-12);
        EXPECT_LE(rep.orthogonality, 1e-12);
        EXPECT_LE(rep.commutation, 1e-12);
        EXPECT_LE(rep.spectrum, 1e-8);
        with_generators += rep.generators > 0;
        BlockDiagPlan plan = plan_block_diagonalization(h);
        for (const auto &e : plan.collapse.trace.events) with_rotations += e.kind == EventKind::TrueMerge;
    }
    EXPECT_GT(with_generators, 50u);
    EXPECT_GT(with_rotations, 50u);
}

TEST(BlockDiag, MultiRoundCollapse) {
    // Find random cases whose collapse needs several false rounds, and verify them.
    std::mt19937_64 rng(6);
    int found = 0;
    for (int t = 0; t < 3000 && found < 15; t++) {
        Hamiltonian h = testing::random_hamiltonian(2 + rng() % 4, 4 + rng() % 8, 0.4, rng);
        BlockDiagPlan plan = plan_block_diagonalization(h);
        if (plan.bases.size() < 2) continue;
        found++;
        BlockDiagReport rep = verify_block_diagonalization(h);
        ASSERT_TRUE(rep.passed) << rep.failure << "\n" << write_hamiltonian(h);
    }
    EXPECT_GT(found, 0);
}

TEST(BlockDiag, MajoranaViaPauliPicture) {
    std::mt19937_64 rng(7);
    for (size_t modes : {4u, 6u}) {
        AlgebraContext ctx = AlgebraContext::majorana(modes);
        for (int t = 0; t < 20; t++) {
            std::vector<PhasedString> terms;
            std::set<std::vector<size_t>> seen;
            std::uniform_real_distribution<double> w(0.1, 2.0);
            for (int k = 0; k < 6; k++) {
                BitVec e(modes);
                size_t order = rng() % 2 ? 2 : 4;
                while (e.count() < order) e.set(rng() % modes);
                if (!seen.insert(e.to_vector()).second) continue;
                terms.emplace_back(canonical_phase(e, ctx), w(rng) * (rng() & 1 ? 1 : -1), e);
            }
            Hamiltonian h(ctx, terms);
            BlockDiagReport rep = verify_block_diagonalization(h);
            ASSERT_TRUE(rep.passed) << rep.failure;
            // Independent spectrum: Jordan-Wigner dense matrix of the Majorana Hamiltonian.
            Mat jw = Mat::Zero(1 << (modes / 2), 1 << (modes / 2));
            for (const auto &s : h.terms()) jw += oracle_dense(s, ctx);
            std::vector<double> expect = eigenvalues(jw), got;
            for (const auto &br : rep.block_reports) got.insert(got.end(), br.spectrum.begin(), br.spectrum.end());
            std::sort(got.begin(), got.end());
            ASSERT_EQ(got.size(), expect.size());
            for (size_t i = 0; i < got.size(); i++) EXPECT_NEAR(got[i], expect[i], 1e-8);
        }
    }
}

TEST(BlockDiag, CustomContextRejected) {
    Hamiltonian h(AlgebraContext::custom({BitVec(1)}), {PhasedString(0, 1.0, BitVec(1, {0}))});
    EXPECT_THROW(plan_block_diagonalization(h), std::invalid_argument);
}

}  // namespace
}  // namespace twinscf
