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

#ifndef TWINSCF_BLOCKDIAG_H
#define TWINSCF_BLOCKDIAG_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twinscf/collapse.h"
#include "twinscf/operator_algebra.h"

namespace twinscf {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr size_t kMaxDenseQubits = 12;

/// A Pauli string as a signed permutation matrix: |s> -> coef * (-1)^{z.(s^x)} |s^x>.
/// Qubit 0 is the most significant bit of the basis index.
class MonomialOp {
   public:
    MonomialOp(const PhasedString &s, const AlgebraContext &ctx);

    size_t qubits() const { return q_; }
    size_t dim() const { return size_t{1} << q_; }
    /// Target index and amplitude of the image of basis vector s.
    size_t target(size_t s) const { return s ^ x_; }
    cplx amplitude(size_t s) const;

    CMatrix dense() const;
    /// this * m
    CMatrix left(const CMatrix &m) const;
    /// m * this
    CMatrix right(const CMatrix &m) const;

   private:
    size_t q_ = 0;
    uint32_t x_ = 0, z_ = 0;
    cplx coef_ = 1.0;
};

/// Dense matrix of a Pauli-context string (scalar and phase included). Throws
/// std::invalid_argument above kMaxDenseQubits or for non-Pauli contexts.
CMatrix dense(const PhasedString &s, const AlgebraContext &ctx);
CMatrix dense(const Hamiltonian &h);
/// Π_j (1 + x_j g_j) / 2 with x_j in {-1, +1}.
CMatrix dense_projector(const std::vector<PhasedString> &generators, const std::vector<int> &x, const AlgebraContext &ctx);
/// e^{θ g h / 2} = cos(θ/2) + sin(θ/2) g h for anticommuting Hermitian g, h.
CMatrix dense_rotation(const PhasedString &g, const PhasedString &h, double theta, const AlgebraContext &ctx);

/// Independent symmetry generators of one false-twin round.
struct SymmetryBasis {
    int round = 0;
    /// Products g_T·h, Hermitian with unit scalar, independent over Z_2.
    std::vector<PhasedString> generators;
    /// Echelon form of the generator exps; row r has pivot column pivots[r] and equals the
    /// Z_2 sum of generators listed in combos[r].
    std::vector<BitVec> rows;
    std::vector<size_t> pivots;
    std::vector<BitVec> combos;
    /// Some false-twin product equals minus a product of generators, i.e. -1 lies in the
    /// group generated by all pair products.
    bool minus_one = false;

    /// Writes s = sign · Π_{j in c} g_j. Returns (c, sign) or nothing if s is outside the span
    /// or the phase is not real.
    std::optional<std::pair<BitVec, int>> decompose(const PhasedString &s, const AlgebraContext &ctx) const;
};

/// Generators from the false-merge events of one round. `ops[v]` is the operator of
/// frustration vertex v (unit scalar).
SymmetryBasis false_twin_generators(const std::vector<PhasedString> &ops, const std::vector<CollapseEvent> &round_events,
                                    int round, const AlgebraContext &ctx);

/// β = sign · Π_j x_j^{c_j} for the decomposition of pair_product; x holds one ±1 per generator.
/// Throws VerificationError if the product is not in the generated group.
int beta_sign(const PhasedString &pair_product, const SymmetryBasis &basis, const std::vector<int> &x, const AlgebraContext &ctx);

/// Everything about a Hamiltonian's twin collapse that does not depend on the block.
struct BlockDiagPlan {
    /// Hamiltonian in the Pauli picture (Majorana inputs are mapped through the Pauli/Majorana
    /// group isomorphism).
    Hamiltonian h;
    FrustrationGraph fg;
    CollapseResult collapse;
    /// Operator of each frustration vertex with unit scalar.
    std::vector<PhasedString> ops;
    /// Original weight of each frustration vertex.
    std::vector<double> weights;
    /// Sum of identity-term weights.
    double constant = 0.0;
    /// One basis per false round that merged something, in round order.
    std::vector<SymmetryBasis> bases;
    /// Offset of each basis in the concatenated parameter vector.
    std::vector<size_t> offsets;
    /// Total number of generators over all rounds.
    size_t total_generators = 0;
    /// Concatenated generators; dependent[k] holds (combination over earlier generators, sign)
    /// when generator k is a product of earlier ones, which fixes its sign in every non-empty block.
    std::vector<PhasedString> stacked;
    std::vector<std::optional<std::pair<BitVec, int>>> dependent;
};

/// Throws std::invalid_argument for custom contexts.
BlockDiagPlan plan_block_diagonalization(const Hamiltonian &h);

/// Enumerates the parameter vectors of all non-empty blocks (2^rank of the stacked generators).
std::vector<std::vector<int>> consistent_blocks(const BlockDiagPlan &plan);

struct Rotation {
    size_t kept = 0, removed = 0;
    double theta = 0.0;
};

struct BlockWeights {
    /// Weight per frustration vertex; only entries of surviving vertices are meaningful.
    std::vector<double> weight;
    std::vector<size_t> survivors;
    /// True-merge rotations in application order.
    std::vector<Rotation> rotations;
    /// Some block weight cancelled to zero.
    bool non_generic = false;
};

/// Collapsed weights for block x (one ±1 per stacked generator).
BlockWeights block_weights(const BlockDiagPlan &plan, const std::vector<int> &x);

struct BlockReport {
    std::vector<int> x;
    size_t dim = 0;
    std::vector<double> survivor_weights;
    std::vector<double> spectrum;
};

struct BlockDiagReport {
    bool passed = false;
    std::string failure;
    size_t qubits = 0;
    size_t terms = 0;
    size_t generators = 0;
    size_t blocks = 0;
    bool non_generic = false;
    double completeness = 0, orthogonality = 0, idempotence = 0, commutation = 0, rotated_commutation = 0;
    double reconstruction = 0, beta = 0, spectrum = 0;
    std::vector<BlockReport> block_reports;
};

struct BlockDiagTolerances {
    double projector = 1e-12;
    double spectrum = 1e-8;
};

/// Dense check of the block decomposition built from collapse_twins on h's frustration graph:
/// projector algebra, commutation with H, per-round rotated projectors commuting, the collapsed
/// Hamiltonian reproducing the rotated block, symbolic β against the dense restriction, and
/// the spectrum union.
BlockDiagReport verify_block_diagonalization(const Hamiltonian &h, const BlockDiagTolerances &tol = {});

}  // namespace twinscf

#endif
