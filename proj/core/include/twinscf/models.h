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

#ifndef TWINSCF_MODELS_H
#define TWINSCF_MODELS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "twinscf/graph.h"
#include "twinscf/operator_algebra.h"
#include "twinscf/scf.h"

namespace twinscf {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
uint64_t mix64(uint64_t x);
/// Seed of substream `index` of `master`: mix64(master ^ mix64(index + 1)). Samples drawn from
/// their own substream do not depend on the order in which they are evaluated.
uint64_t substream_seed(uint64_t master, uint64_t index);

/// Erdős–Rényi G(n, p).
Graph sample_gnp(size_t n, double p, Rng &rng);

// ---------------------------------------------------------------------------------------------
// Periodic lattices

/// Two-local Pauli products P_a ⊗ P_b with a, b in {X, Y, Z} are indexed 3a + b.
std::string pauli_pair_label(int k);
/// Parses "XX,YZ,..." or "all". Throws std::invalid_argument.
std::vector<int> parse_alphabet(const std::string &text);
std::string format_alphabet(const std::vector<int> &alphabet);
std::vector<int> full_alphabet();

struct Tiling {
    size_t a = 4, b = 4;
    size_t cells() const { return a * b; }
    bool operator==(const Tiling &o) const { return a == o.a && b == o.b; }
};
/// Parses "AxB".
Tiling parse_tiling(const std::string &text);

/// Unit cell of a periodic lattice. Edge e joins site `u_site` of the cell with site `v_site` of
/// the cell shifted by (v_da, v_db); the first Pauli acts on the u end.
struct LatticeGeometry {
    struct Edge {
        size_t u_site = 0;
        size_t v_site = 0;
        int v_da = 0, v_db = 0;
        int u_da = 0, u_db = 0;
        bool mandatory = true;
    };
    std::string name;
    size_t sites_per_cell = 0;
    std::vector<Edge> edges;

    size_t qubits(const Tiling &t) const { return sites_per_cell * t.cells(); }
    /// Physical endpoints (qubit indices) of edge e in cell (ca, cb).
    std::pair<size_t, size_t> endpoints(size_t e, size_t ca, size_t cb, const Tiling &t) const;
};

/// Brick wall with four sites per cell: edges e0..e3 run along a row (e3 into the next cell)
/// and e4 is the rung from site 0 of the right neighbor to site 1 of the cell above, so the five
/// edges form the path 0-1-2-3-0'-1''. Sites 0 and 1 have degree 3, sites 2 and 3 degree 2.
const LatticeGeometry &brick_geometry();
/// Square lattice with a local spin per site: horizontal and vertical edges are mandatory, the
/// edge to the local spin may be empty.
const LatticeGeometry &square_nuclei_geometry();

/// A unit cell: bit e * |alphabet| + j set when alphabet[j] acts on edge e.
using CellMask = uint64_t;

/// Draws every alphabet term on every edge with probability p, redrawing an edge while a
/// mandatory edge is empty. Throws std::invalid_argument for p outside (0, 1].
CellMask sample_cell(const LatticeGeometry &geo, const std::vector<int> &alphabet, double p, Rng &rng);
/// Replicates the cell over the torus. Weights are drawn uniformly from [-1,-0.1] U [0.1,1] when
/// rng is given, otherwise all weights are 1.
Hamiltonian lattice_hamiltonian(const LatticeGeometry &geo, const std::vector<int> &alphabet, CellMask cell, const Tiling &t,
                                Rng *rng = nullptr);
/// Frustration graph of the tiled cell (weights do not matter).
Graph lattice_graph(const LatticeGeometry &geo, const std::vector<int> &alphabet, CellMask cell, const Tiling &t);

Hamiltonian sample_brick(double p, const Tiling &t, Rng &rng, const std::vector<int> &alphabet = full_alphabet());
Hamiltonian sample_square_nuclei(double p, const Tiling &t, Rng &rng, const std::vector<int> &alphabet = full_alphabet());

/// True when, for every lattice edge, the ball of the given radius in the lattice's line graph
/// has the same size on this torus as on a torus twice as large in both directions, i.e. no
/// neighborhood wraps around and meets itself.
bool tiling_is_wrap_free(const LatticeGeometry &geo, const Tiling &t, size_t radius = 2);

// ---------------------------------------------------------------------------------------------
// Majorana and uniform Pauli models

/// Quadratic pairs and quartic quadruples over 2n modes, each kept with probability p; weights
/// uniform in [-1,-0.1] U [0.1,1].
Hamiltonian sample_majorana(size_t orbitals, double p, Rng &rng);

/// k = 0 draws from all non-identity strings, otherwise from weight-k strings. With count > 0
/// exactly `count` distinct strings are drawn; otherwise every candidate is kept independently
/// with probability p. Throws std::invalid_argument if count exceeds the number of candidates.
Hamiltonian sample_uniform_pauli(size_t qubits, size_t k, double p, size_t count, Rng &rng);
/// Probability that two independent uniform weight-k strings on n qubits anticommute.
double klocal_anticommute_probability(size_t n, size_t k);
/// m_max = 3^{3/4} / √2 · ε^{1/4} · (n / k²)^{3/4}.
double klocal_threshold(size_t n, size_t k, double eps);

// ---------------------------------------------------------------------------------------------
// G(n, p) bounds

double binomial(size_t n, size_t k);
/// E[#claws] = C(n,4) · 4p³(1-p)³.
double expected_claws(size_t n, double p);
struct GnpBounds {
    double lower = 0, upper = 1;
};
/// lower = (1 - E[#claws]) (1-p)^{2n}; upper = 1 - C(n,4) / D with the second-moment
/// denominator D = C(n-4,4) + 4C(n-4,3) + (3/2)C(n-4,2)/(p(1-p)) + ((n-4)/4)(3/(p²(1-p)) + 1/(1-p)³)
/// + 1/(4p³(1-p)³). Both clamped to [0, 1].
GnpBounds gnp_bounds(size_t n, double p);

// ---------------------------------------------------------------------------------------------
// Per-instance evaluation

enum class CollapseMode { Twins, Full };
CollapseMode parse_collapse_mode(const std::string &text);
const char *collapse_mode_name(CollapseMode m);

struct InstanceOutcome {
    bool scf_before = false;
    bool scf_after = false;
    double delta_xi = 0.0;
    /// A simplicial search ran out of budget; the affected verdict counts as not SCF.
    bool flagged = false;
};

InstanceOutcome evaluate_instance(const Graph &g, CollapseMode mode, uint64_t budget = kDefaultSimplicialBudget);

// ---------------------------------------------------------------------------------------------
// Exact lattice enumeration

struct ExactLatticeCounts {
    size_t edges = 0;
    size_t alphabet_size = 0;
    /// m = edges · |alphabet|.
    size_t m = 0;
    /// Index k = number of drawn terms.
    std::vector<uint64_t> cells, scf_before, scf_after, flagged;
    std::vector<double> delta_xi_sum;
};

/// |H₂(k)|: cells with k terms and every mandatory edge non-empty, by inclusion-exclusion.
double admissible_cells(const LatticeGeometry &geo, size_t alphabet_size, size_t k);
/// Pr(every mandatory edge non-empty | p) = Σ_k |H₂(k)| p^k (1-p)^{m-k}.
double admissible_probability(const LatticeGeometry &geo, size_t alphabet_size, double p);

/// Visits every admissible cell. Results do not depend on `jobs`. Throws std::invalid_argument if
/// m exceeds 48.
ExactLatticeCounts enumerate_lattice(const LatticeGeometry &geo, const std::vector<int> &alphabet, const Tiling &t,
                                     CollapseMode mode, uint64_t budget = kDefaultSimplicialBudget, size_t jobs = 1);

struct ExactPoint {
    double p = 0;
    double p_scf_before = 0, p_scf_after = 0, delta_p_scf = 0, delta_xi_mean = 0;
};
ExactPoint exact_point(const ExactLatticeCounts &c, double p);

}  // namespace twinscf

#endif
