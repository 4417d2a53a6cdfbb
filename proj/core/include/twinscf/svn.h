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

#ifndef TWINSCF_SVN_H
#define TWINSCF_SVN_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twinscf/operator_algebra.h"

namespace twinscf {

/// Exact unit-modulus scalar e^{2πi·num/den}, num in [0, den).
struct Phase {
    int64_t num = 0;
    int64_t den = 1;

    Phase() = default;
    Phase(int64_t n, int64_t d);

    Phase operator+(const Phase &o) const;
    Phase operator-() const;
    bool operator==(const Phase &o) const { return num == o.num && den == o.den; }
    std::complex<double> value() const;
};

/// Dense matrix over Z_d, row-major, entries in [0, d).
class ModMatrix {
   public:
    ModMatrix() = default;
    ModMatrix(size_t rows, size_t cols, int64_t d);
    static ModMatrix identity(size_t n, int64_t d);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    int64_t modulus() const { return d_; }
    int64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, int64_t v);

    ModMatrix operator*(const ModMatrix &o) const;
    ModMatrix operator+(const ModMatrix &o) const;
    ModMatrix operator-(const ModMatrix &o) const;
    ModMatrix scaled(int64_t k) const;
    ModMatrix transpose() const;
    std::vector<int64_t> apply(const std::vector<int64_t> &x) const;
    /// Gauss-Jordan inverse; requires a prime modulus. Throws std::invalid_argument if singular.
    ModMatrix inverse() const;
    size_t rank() const;
    bool operator==(const ModMatrix &o) const { return d_ == o.d_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    std::string to_string() const;

   private:
    size_t rows_ = 0, cols_ = 0;
    int64_t d_ = 2;
    std::vector<int64_t> a_;
};

int64_t mod_inverse(int64_t a, int64_t p);

/// Polar commutator group parameters: prime d, vector length n, commutation matrix W.
struct GroupSpec {
    int64_t d = 2;
    size_t n = 0;
    ModMatrix w;

    /// Ω = W - Wᵀ.
    ModMatrix omega() const;
    bool symplectic() const;
    /// xᵀWy mod d.
    int64_t w_form(const std::vector<int64_t> &x, const std::vector<int64_t> &y) const;

    /// Weyl/Pauli ordering (z | x): W has -I in its lower-left block.
    static GroupSpec weyl(int64_t d, size_t m);
    static GroupSpec pauli(size_t m) { return weyl(2, m); }
    /// W_ij = 1 for i > j.
    static GroupSpec majorana(size_t modes);
};

/// (a, p, x) with a in F = {e^{iφ}: φ in [0, 2π/d)}.
struct PolarGroupElement {
    Phase a;
    int64_t p = 0;
    std::vector<int64_t> x;

    bool operator==(const PolarGroupElement &o) const { return a == o.a && p == o.p && x == o.x; }
};

PolarGroupElement group_identity(const GroupSpec &s);
/// Throws std::invalid_argument on dimension mismatch.
PolarGroupElement group_multiply(const PolarGroupElement &g, const PolarGroupElement &h, const GroupSpec &s);
PolarGroupElement group_inverse(const PolarGroupElement &g, const GroupSpec &s);
/// Exponent c with g h g⁻¹ h⁻¹ = (1, c, 0).
int64_t commutator_exponent(const PolarGroupElement &g, const PolarGroupElement &h, const GroupSpec &s);
PolarGroupElement random_element(const GroupSpec &s, std::mt19937_64 &rng);

/// The standard form [[0, I], [-I, 0]] in (z | x) ordering.
ModMatrix standard_symplectic(size_t n, int64_t d);
/// M with Mᵀ Ω_std M = Ω, by symplectic Gram-Schmidt. Throws std::invalid_argument if Ω is
/// not alternating or is degenerate.
ModMatrix symplectic_transform(const ModMatrix &omega);

struct IsoMap {
    GroupSpec from, to;
    /// Mᵀ Ω_to M = Ω_from.
    ModMatrix m;
    /// Odd d: symmetric C with 2C = Mᵀ W_to M - W_from. d = 2: symmetric 0/1 lift of
    /// Mᵀ W_to M - W_from; the phase correction is i^{xᵀCx}.
    ModMatrix c;
    bool even = false;

    PolarGroupElement operator()(const PolarGroupElement &g) const;
};

/// Isomorphism G(from) -> G(to) built from the symplectic forms. Throws std::invalid_argument
/// for mismatched or non-symplectic specs.
IsoMap build_isomorphism(const GroupSpec &from, const GroupSpec &to);
/// Same with a prescribed M (must satisfy Mᵀ Ω_to M = Ω_from).
IsoMap build_isomorphism(const GroupSpec &from, const GroupSpec &to, const ModMatrix &m);

/// Z_2 matrix taking Majorana coordinates (2m modes) to Pauli (z | x) coordinates on m qubits:
/// mode m+i -> x_i + Σ_{j<i} z_j and mode i -> z_i + (image of mode m+i).
ModMatrix pauli_majorana_m(size_t m);
/// Majorana -> Pauli isomorphism using pauli_majorana_m.
IsoMap majorana_to_pauli_map(size_t m);

/// Maps a Majorana string to the Pauli string it corresponds to under majorana_to_pauli_map
/// (odd mode counts are padded by one mode). Scalars are carried over.
PhasedString majorana_to_pauli(const PhasedString &s, size_t modes);
/// Applies majorana_to_pauli to every term. Pauli Hamiltonians are returned unchanged.
Hamiltonian to_pauli_picture(const Hamiltonian &h);

using CMat = Eigen::MatrixXcd;

/// μ(a, p, x) = a ω^p τ(z, x) with τ(z, x) e_s = ω^{<z, s + x>} e_{s + x}; basis index is
/// little-endian base d. Requires d^m <= 4096.
class WeylRep {
   public:
    WeylRep(int64_t d, size_t m);
    const GroupSpec &spec() const { return spec_; }
    size_t dim() const { return dim_; }
    CMat operator()(const PolarGroupElement &g) const;
    /// Coset representatives (1, 0, x) for all x.
    std::vector<PolarGroupElement> coset_representatives() const;

   private:
    GroupSpec spec_;
    size_t m_;
    size_t dim_;
};

struct WeylReport {
    bool passed = false;
    std::string failure;
    double unitarity = 0, traceless = 0, identity_trace = 0, hs_orthogonality = 0, character_sum = 0, homomorphism = 0;
};

/// Unitarity, tracelessness off the center, trace of central elements, Hilbert-Schmidt
/// orthogonality of coset representatives, normalized character sum and the homomorphism
/// property on sampled pairs.
WeylReport verify_weyl_properties(int64_t d, size_t m, double tol = 1e-12, uint64_t seed = 1);

struct Intertwiner {
    CMat s;
    double conjugation_residual = 0;
    double unitarity_residual = 0;
    size_t attempts = 0;
};

/// Unitary S with rep2(φ(g)) = S rep1(g) S⁻¹ on all coset representatives of the domain,
/// by group averaging. rep1 acts on G(phi.from) and rep2 on G(phi.to). Throws
/// VerificationError when characters differ or every attempt is singular.
Intertwiner find_intertwiner(const std::function<CMat(const PolarGroupElement &)> &rep1,
                             const std::function<CMat(const PolarGroupElement &)> &rep2, const IsoMap &phi, size_t dim,
                             uint64_t seed = 1, size_t attempts = 5);

/// Jordan-Wigner representation of the Majorana group on modes/2 qubits: γ_{2j} = Z..Z X_j,
/// γ_{2j+1} = Z..Z Y_j, and (a, p, x) -> a (-1)^p Π_{j ascending, x_j = 1} γ_j. modes must be even
/// and at most 24.
std::function<CMat(const PolarGroupElement &)> majorana_representation(size_t modes);

struct PauliMajoranaCheck {
    IsoMap phi;
    /// Mᵀ Ω_majorana M == Ω_pauli exactly.
    bool symplectic = false;
    Intertwiner s;
    /// max |ρ(φ(g)) S - S μ(g)| over random group elements outside the coset representatives.
    double spot_residual = 0;
    bool passed = false;
};

/// Builds φ from pauli_majorana_m(m) and the intertwiner between the Weyl representation and
/// majorana_representation(2m).
PauliMajoranaCheck verify_pauli_majorana(size_t m, uint64_t seed = 1, double tol = 1e-8, size_t spot_checks = 50);

/// Conversion between operator strings and group elements for d = 2 (i^k = a (-1)^p).
PolarGroupElement to_group_element(const PhasedString &s);
PhasedString from_group_element(const PolarGroupElement &g, double scalar = 1.0);

}  // namespace twinscf

#endif
