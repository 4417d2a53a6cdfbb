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

#ifndef TWINSCF_OPERATOR_ALGEBRA_H
#define TWINSCF_OPERATOR_ALGEBRA_H

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "twinscf/bitvec.h"
#include "twinscf/graph.h"

namespace twinscf {

enum class AlgebraKind { PauliQubits, MajoranaModes, Custom };

/// Describes how generator strings multiply: τ(x)τ(y) = (-1)^{xᵀWy} τ(x+y) over Z_2.
///
/// Pauli strings use exps = (z | x) with τ(z,x) = Π_j Z_j^{z_j} X_j^{x_j}; W has the identity
/// in its lower-left block. Majorana strings use occupation vectors with τ(x) = γ_1^{x_1}⋯γ_n^{x_n};
/// W is the strictly lower-triangular all-ones matrix.
class AlgebraContext {
   public:
    AlgebraContext() = default;
    static AlgebraContext pauli(size_t qubits);
    static AlgebraContext majorana(size_t modes);
    /// Arbitrary W over Z_2, given as rows.
    static AlgebraContext custom(std::vector<BitVec> w_rows);

    AlgebraKind kind() const { return kind_; }
    /// Length of exponent vectors.
    size_t n() const { return n_; }
    /// Qubit count for Pauli contexts, mode count for Majorana contexts.
    size_t width() const { return kind_ == AlgebraKind::PauliQubits ? n_ / 2 : n_; }

    /// xᵀWy mod 2.
    bool w_form(const BitVec &x, const BitVec &y) const;
    /// xᵀΩy mod 2 with Ω = W + Wᵀ. True means anticommuting.
    bool omega_form(const BitVec &x, const BitVec &y) const;
    /// Dense W, row-major.
    std::vector<BitVec> w_matrix() const;

    bool operator==(const AlgebraContext &o) const;
    bool operator!=(const AlgebraContext &o) const { return !(*this == o); }

   private:
    AlgebraKind kind_ = AlgebraKind::PauliQubits;
    size_t n_ = 0;
    std::vector<BitVec> w_;  // Custom only
};

/// i^phase · scalar · τ(exps).
struct PhasedString {
    int phase = 0;
    double scalar = 1.0;
    BitVec exps;

    PhasedString() = default;
    PhasedString(int phase_exponent, double weight, BitVec e) : phase(((phase_exponent % 4) + 4) % 4), scalar(weight), exps(std::move(e)) {}

    bool is_identity() const { return exps.none(); }
};

/// Splits a Pauli exps vector into its (z, x) halves.
std::pair<BitVec, BitVec> split_pauli(const BitVec &exps, size_t qubits);

/// Product a·b; scalars multiply. Throws std::invalid_argument on dimension mismatch.
PhasedString multiply(const PhasedString &a, const PhasedString &b, const AlgebraContext &ctx);
bool commutes(const PhasedString &a, const PhasedString &b, const AlgebraContext &ctx);
/// True iff (i^phase τ)² = +1, ignoring the scalar.
bool is_hermitian(const PhasedString &a, const AlgebraContext &ctx);
/// The phase exponent k making i^k τ(exps) Hermitian with the conventional sign
/// (Y = i^3 ZX per qubit for Pauli; i^{k(k-1)/2} γ_{a1}⋯γ_{ak} for Majorana).
int canonical_phase(const BitVec &exps, const AlgebraContext &ctx);
/// Rewrites a Hermitian string so phase == canonical_phase, folding a -1 into the scalar.
PhasedString normalize_sign(const PhasedString &a, const AlgebraContext &ctx);

/// Parses "<weight> <label>". Labels: Pauli letters over {I,X,Y,Z}, `m:1,2,5` (1-based modes),
/// or `c:0110` (raw bits, Custom contexts). An optional prefix `-`, `i` or `-i` multiplies the
/// label. Throws ParseError.
PhasedString parse_term(const std::string &text, const AlgebraContext &ctx);
/// Label text for the operator i^canonical · τ(exps).
std::string format_label(const BitVec &exps, const AlgebraContext &ctx);
/// "<weight> <label>" for a Hermitian term; inverse of parse_term.
std::string format_term(const PhasedString &t, const AlgebraContext &ctx);

class Hamiltonian {
   public:
    Hamiltonian() = default;
    /// Validates: matching dimensions, Hermitian terms, nonzero weights, no two proportional terms.
    Hamiltonian(AlgebraContext ctx, std::vector<PhasedString> terms);

    const AlgebraContext &ctx() const { return ctx_; }
    const std::vector<PhasedString> &terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    size_t identity_count() const;

   private:
    AlgebraContext ctx_;
    std::vector<PhasedString> terms_;
};

/// Reads a Hamiltonian file. Context is inferred from the labels unless a `qubits <n>` or
/// `modes <n>` directive precedes the terms. Throws ParseError with line numbers.
Hamiltonian read_hamiltonian(std::istream &in);
std::string write_hamiltonian(const Hamiltonian &h);

struct FrustrationGraph {
    Graph graph;
    /// Vertex v stands for term term_of_vertex[v] of the source Hamiltonian.
    std::vector<size_t> term_of_vertex;
};

/// One vertex per non-identity term, edges between anticommuting terms.
FrustrationGraph build_frustration_graph(const Hamiltonian &h);

/// Jordan-Wigner image of a Majorana string (γ_{2j} -> Z..Z X_j, γ_{2j+1} -> Z..Z Y_j, 0-based).
/// `modes` must be even; the result lives on modes/2 qubits.
PhasedString jordan_wigner(const PhasedString &m, size_t modes);

}  // namespace twinscf

#endif
