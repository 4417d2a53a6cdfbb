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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "twinscf/errors.h"
#include "twinscf/svn.h"

namespace twinscf {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_pauli(const AlgebraContext &ctx) {
    if (ctx.kind() != AlgebraKind::PauliQubits) throw std::invalid_argument("dense matrices need a Pauli context");
}

void require_dense_size(size_t q) {
    if (q > kMaxDenseQubits) throw std::invalid_argument("dense matrices are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
}

double max_abs(const CMatrix &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

MonomialOp::MonomialOp(const PhasedString &s, const AlgebraContext &ctx) : q_(ctx.width()) {
    require_pauli(ctx);
    if (q_ > 30) throw std::invalid_argument("MonomialOp: too many qubits");
    if (s.exps.size() != ctx.n()) throw std::invalid_argument("MonomialOp: dimension mismatch");
    auto [z, x] = split_pauli(s.exps, q_);
    z.for_each([&](size_t j) { z_ |= uint32_t{1} << (q_ - 1 - j); });
    x.for_each([&](size_t j) { x_ |= uint32_t{1} << (q_ - 1 - j); });
    coef_ = kIPow[s.phase & 3] * s.scalar;
}

cplx MonomialOp::amplitude(size_t s) const {
    return std::popcount(static_cast<uint32_t>(z_ & (s ^ x_))) & 1 ? -coef_ : coef_;
}

CMatrix MonomialOp::dense() const {
    CMatrix m = CMatrix::Zero(dim(), dim());
    for (size_t s = 0; s < dim(); s++) m(target(s), s) = amplitude(s);
    return m;
}

CMatrix MonomialOp::left(const CMatrix &m) const {
    CMatrix out(m.rows(), m.cols());
    for (size_t s = 0; s < dim(); s++) out.row(target(s)) = amplitude(s) * m.row(s);
    return out;
}

CMatrix MonomialOp::right(const CMatrix &m) const {
    CMatrix out(m.rows(), m.cols());
    for (size_t s = 0; s < dim(); s++) out.col(s) = m.col(target(s)) * amplitude(s);
    return out;
}

CMatrix dense(const PhasedString &s, const AlgebraContext &ctx) {
    require_pauli(ctx);
    require_dense_size(ctx.width());
    return MonomialOp(s, ctx).dense();
}

CMatrix dense(const Hamiltonian &h) {
    require_pauli(h.ctx());
    require_dense_size(h.ctx().width());
    size_t dim = size_t{1} << h.ctx().width();
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        MonomialOp op(t, h.ctx());
        for (size_t s = 0; s < dim; s++) m(op.target(s), s) += op.amplitude(s);
    }
    return m;
}

CMatrix dense_projector(const std::vector<PhasedString> &generators, const std::vector<int> &x, const AlgebraContext &ctx) {
    require_pauli(ctx);
    require_dense_size(ctx.width());
    if (generators.size() != x.size()) throw std::invalid_argument("dense_projector: one sign per generator");
    size_t dim = size_t{1} << ctx.width();
    CMatrix p = CMatrix::Identity(dim, dim);
    for (size_t j = 0; j < generators.size(); j++) {
        PhasedString g = generators[j];
        g.scalar *= x[j];
        p = 0.5 * (p + MonomialOp(g, ctx).left(p));
    }
    return p;
}

CMatrix dense_rotation(const PhasedString &g, const PhasedString &h, double theta, const AlgebraContext &ctx) {
    require_pauli(ctx);
    require_dense_size(ctx.width());
    if (commutes(g, h, ctx)) throw std::invalid_argument("dense_rotation: g and h must anticommute");
    PhasedString gh = multiply(g, h, ctx);
    gh.scalar *= std::sin(theta / 2);
    size_t dim = size_t{1} << ctx.width();
    return std::cos(theta / 2) * CMatrix::Identity(dim, dim) + MonomialOp(gh, ctx).dense();
}

namespace {

PhasedString unit_identity(const AlgebraContext &ctx) { return PhasedString(0, 1.0, BitVec(ctx.n())); }

// Reduces exps against echelon rows. Returns the residual and accumulates the combination.
BitVec reduce(BitVec v, const std::vector<BitVec> &rows, const std::vector<size_t> &pivots, const std::vector<BitVec> &combos,
              BitVec &c) {
    for (size_t r = 0; r < rows.size(); r++)
        if (v.test(pivots[r])) {
            v ^= rows[r];
            c ^= combos[r];
        }
    return v;
}

// Phase difference s vs. the ascending product of generators in c: +1, -1 or 0 (not real).
int relative_sign(const PhasedString &s, const std::vector<PhasedString> &gens, const BitVec &c, const AlgebraContext &ctx) {
    PhasedString prod = unit_identity(ctx);
    c.for_each([&](size_t j) { prod = multiply(prod, gens[j], ctx); });
    int diff = ((s.phase - prod.phase) % 4 + 4) % 4;
    return diff == 0 ? 1 : diff == 2 ? -1 : 0;
}

// Echelon bookkeeping shared by per-round bases and the stacked generator list.
struct Echelon {
    std::vector<PhasedString> gens;
    std::vector<BitVec> rows;
    std::vector<size_t> pivots;
    std::vector<BitVec> combos;
    size_t capacity;

    explicit Echelon(size_t cap) : capacity(cap) {}

    // Adds s if independent; otherwise returns (combination, sign).
    std::optional<std::pair<BitVec, int>> add(const PhasedString &s, const AlgebraContext &ctx) {
        BitVec c(capacity);
        BitVec v = reduce(s.exps, rows, pivots, combos, c);
        if (v.none()) {
            int sign = relative_sign(s, gens, c, ctx);
            if (sign == 0) throw VerificationError("symmetry product with a non-real relative phase");
            return std::make_pair(c, sign);
        }
        c.set(gens.size());
        gens.push_back(s);
        pivots.push_back(v.first());
        rows.push_back(std::move(v));
        combos.push_back(std::move(c));
        return std::nullopt;
    }
};

}  // namespace

std::optional<std::pair<BitVec, int>> SymmetryBasis::decompose(const PhasedString &s, const AlgebraContext &ctx) const {
    size_t cap = combos.empty() ? generators.size() : combos.front().size();
    BitVec c(cap);
    if (reduce(s.exps, rows, pivots, combos, c).any()) return std::nullopt;
    int sign = relative_sign(s, generators, c, ctx);
    if (sign == 0) return std::nullopt;
    return std::make_pair(c, sign);
}

SymmetryBasis false_twin_generators(const std::vector<PhasedString> &ops, const std::vector<CollapseEvent> &round_events,
                                    int round, const AlgebraContext &ctx) {
    size_t cap = 0;
    for (const auto &e : round_events) cap += e.others.size();
    Echelon ech(cap);
    SymmetryBasis b;
    b.round = round;
    for (const auto &e : round_events) {
        if (e.kind != EventKind::FalseMerge) throw std::invalid_argument("false_twin_generators: expected false merges only");
        for (size_t h : e.others) {
            auto dep = ech.add(multiply(ops[e.kept], ops[h], ctx), ctx);
            if (dep && dep->second < 0) b.minus_one = true;
        }
    }
    b.generators = std::move(ech.gens);
    b.rows = std::move(ech.rows);
    b.pivots = std::move(ech.pivots);
    b.combos = std::move(ech.combos);
    return b;
}

int beta_sign(const PhasedString &pair_product, const SymmetryBasis &basis, const std::vector<int> &x, const AlgebraContext &ctx) {
    auto dec = basis.decompose(pair_product, ctx);
    if (!dec) throw VerificationError("pair product outside the symmetry group of round " + std::to_string(basis.round));
    int beta = dec->second;
    dec->first.for_each([&](size_t j) { beta *= x.at(j); });
    return beta;
}

BlockDiagPlan plan_block_diagonalization(const Hamiltonian &h) {
    if (h.ctx().kind() == AlgebraKind::Custom) throw std::invalid_argument("block diagonalization needs a Pauli or Majorana Hamiltonian");
    BlockDiagPlan plan;
    plan.h = to_pauli_picture(h);
    const AlgebraContext &ctx = plan.h.ctx();
    plan.fg = build_frustration_graph(plan.h);
    plan.collapse = collapse_twins(plan.fg.graph);
    for (const auto &t : plan.h.terms()) {
        if (t.is_identity()) plan.constant += t.phase == 2 ? -t.scalar : t.scalar;
    }
    for (size_t term : plan.fg.term_of_vertex) {
        const PhasedString &t = plan.h.terms()[term];
        plan.ops.emplace_back(t.phase, 1.0, t.exps);
        plan.weights.push_back(t.scalar);
    }
    std::map<int, std::vector<CollapseEvent>> by_round;
    for (const auto &e : plan.collapse.trace.events)
        if (e.kind == EventKind::FalseMerge) by_round[e.round].push_back(e);
    for (const auto &[round, events] : by_round) {
        plan.offsets.push_back(plan.total_generators);
        plan.bases.push_back(false_twin_generators(plan.ops, events, round, ctx));
        plan.total_generators += plan.bases.back().generators.size();
    }
    Echelon ech(plan.total_generators);
    for (const auto &b : plan.bases)
        for (const auto &g : b.generators) {
            plan.stacked.push_back(g);
            plan.dependent.push_back(ech.add(g, ctx));
        }
    // ech.gens holds only independent generators; map their indices to stacked positions.
    std::vector<size_t> position;
    for (size_t k = 0; k < plan.stacked.size(); k++)
        if (!plan.dependent[k]) position.push_back(k);
    for (auto &dep : plan.dependent) {
        if (!dep) continue;
        BitVec c(plan.total_generators);
        dep->first.for_each([&](size_t j) { c.set(position[j]); });
        dep->first = std::move(c);
    }
    return plan;
}

std::vector<std::vector<int>> consistent_blocks(const BlockDiagPlan &plan) {
    std::vector<size_t> free;
    for (size_t k = 0; k < plan.stacked.size(); k++)
        if (!plan.dependent[k]) free.push_back(k);
    if (free.size() > 20) throw std::invalid_argument("consistent_blocks: too many independent generators");
    std::vector<std::vector<int>> out;
    size_t r = free.size();
    for (size_t mask = 0; mask < (size_t{1} << r); mask++) {
        std::vector<int> x(plan.stacked.size(), 1);
        for (size_t i = 0; i < r; i++)
            if ((mask >> (r - 1 - i)) & 1) x[free[i]] = -1;
        for (size_t k = 0; k < plan.stacked.size(); k++) {
            if (!plan.dependent[k]) continue;
            int v = plan.dependent[k]->second;
            plan.dependent[k]->first.for_each([&](size_t j) { v *= x[j]; });
            x[k] = v;
        }
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

std::vector<int> slice(const BlockDiagPlan &plan, size_t basis, const std::vector<int> &x) {
    auto first = x.begin() + static_cast<std::ptrdiff_t>(plan.offsets[basis]);
    return std::vector<int>(first, first + static_cast<std::ptrdiff_t>(plan.bases[basis].generators.size()));
}

size_t basis_of_round(const BlockDiagPlan &plan, int round) {
    for (size_t b = 0; b < plan.bases.size(); b++)
        if (plan.bases[b].round == round) return b;
    throw std::logic_error("no symmetry basis for round " + std::to_string(round));
}

}  // namespace

BlockWeights block_weights(const BlockDiagPlan &plan, const std::vector<int> &x) {
    if (x.size() != plan.total_generators) throw std::invalid_argument("block_weights: one sign per stacked generator");
    const AlgebraContext &ctx = plan.h.ctx();
    BlockWeights bw;
    bw.weight = plan.weights;
    for (const auto &e : plan.collapse.trace.events) {
        if (e.kind == EventKind::FalseMerge) {
            size_t b = basis_of_round(plan, e.round);
            std::vector<int> xs = slice(plan, b, x);
            for (size_t h : e.others) {
                int beta = beta_sign(multiply(plan.ops[e.kept], plan.ops[h], ctx), plan.bases[b], xs, ctx);
                bw.weight[e.kept] += beta * bw.weight[h];
                bw.weight[h] = 0.0;
            }
        } else if (e.kind == EventKind::TrueMerge) {
            for (size_t h : e.others) {
                double a = bw.weight[e.kept], b = bw.weight[h];
                bw.rotations.push_back({e.kept, h, std::atan2(b, a)});
                bw.weight[e.kept] = std::hypot(a, b);
                bw.weight[h] = 0.0;
            }
        } else {
            throw std::invalid_argument("block_weights: line-module events are not supported");
        }
    }
    bw.survivors = plan.collapse.vertex_map;
    double scale = 0.0;
    for (double w : plan.weights) scale = std::max(scale, std::abs(w));
    for (size_t v : bw.survivors)
        if (std::abs(bw.weight[v]) <= 1e-12 * scale) {
            bw.weight[v] = 0.0;
            bw.non_generic = true;
        }
    return bw;
}

namespace {

// U · m for U = cos(θ/2) + sin(θ/2) g h.
CMatrix rotate_left(const BlockDiagPlan &plan, const Rotation &r, const CMatrix &m) {
    const AlgebraContext &ctx = plan.h.ctx();
    PhasedString gh = multiply(plan.ops[r.kept], plan.ops[r.removed], ctx);
    gh.scalar = std::sin(r.theta / 2);
    return std::cos(r.theta / 2) * m + MonomialOp(gh, ctx).left(m);
}

CMatrix collapsed_hamiltonian(const BlockDiagPlan &plan, const BlockWeights &bw, size_t dim) {
    const AlgebraContext &ctx = plan.h.ctx();
    CMatrix hc = plan.constant * CMatrix::Identity(dim, dim);
    for (size_t v : bw.survivors) {
        if (bw.weight[v] == 0.0) continue;
        PhasedString t = plan.ops[v];
        t.scalar = bw.weight[v];
        MonomialOp op(t, ctx);
        for (size_t s = 0; s < dim; s++) hc(op.target(s), s) += op.amplitude(s);
    }
    return hc;
}

std::string block_name(const std::vector<int> &x) {
    std::string s = "x=(";
    for (size_t i = 0; i < x.size(); i++) s += (i ? "," : "") + std::string(x[i] > 0 ? "+" : "-");
    return s + ")";
}

struct Worst {
    double value = 0.0;
    std::string where;
    void update(double v, const std::string &w) {
        if (v > value || std::isnan(v)) {
            value = v;
            where = w;
        }
    }
};

}  // namespace

BlockDiagReport verify_block_diagonalization(const Hamiltonian &h, const BlockDiagTolerances &tol) {
    BlockDiagPlan plan = plan_block_diagonalization(h);
    const AlgebraContext &ctx = plan.h.ctx();
    BlockDiagReport rep;
    rep.qubits = ctx.width();
    rep.terms = plan.h.size();
    rep.generators = plan.total_generators;
    require_dense_size(rep.qubits);
    if (plan.total_generators > 12) throw std::invalid_argument("verification is limited to 12 symmetry generators");
    size_t dim = size_t{1} << rep.qubits;
    CMatrix hd = dense(plan.h);
    CMatrix eye = CMatrix::Identity(dim, dim);

    // Rotations applied before each basis's round, for the rotated per-round projectors.
    std::vector<size_t> rotations_before(plan.bases.size(), 0);
    for (size_t b = 0; b < plan.bases.size(); b++)
        for (const auto &e : plan.collapse.trace.events)
            if (e.kind == EventKind::TrueMerge && e.round < plan.bases[b].round) rotations_before[b] += e.others.size();

    Worst idem, comm, rcomm, recon, beta;
    CMatrix sum = CMatrix::Zero(dim, dim);
    std::vector<CMatrix> frames;
    std::vector<double> union_spectrum;
    std::vector<std::vector<int>> blocks = consistent_blocks(plan);
    rep.blocks = blocks.size();
    for (const auto &x : blocks) {
        std::string name = block_name(x);
        BlockWeights bw = block_weights(plan, x);
        rep.non_generic |= bw.non_generic;
        // Prefix products U_{<k}: prefix[k] is the product of the first k rotations.
        std::vector<CMatrix> prefix{eye};
        for (const auto &r : bw.rotations) prefix.push_back(rotate_left(plan, r, prefix.back()));
        const CMatrix &u = prefix.back();
        CMatrix q = dense_projector(plan.stacked, x, ctx);
        CMatrix r = u.adjoint() * q * u;
        sum += r;
        idem.update(std::max(max_abs(r * r - r), max_abs(r - r.adjoint())), name);
        comm.update(max_abs(r * hd - hd * r), name);

        std::vector<CMatrix> rotated;
        for (size_t b = 0; b < plan.bases.size(); b++) {
            std::vector<int> xs = slice(plan, b, x);
            CMatrix p = dense_projector(plan.bases[b].generators, xs, ctx);
            for (const auto &e : plan.collapse.trace.events) {
                if (e.kind != EventKind::FalseMerge || e.round != plan.bases[b].round) continue;
                for (size_t hv : e.others) {
                    PhasedString pp = multiply(plan.ops[e.kept], plan.ops[hv], ctx);
                    int bsign = beta_sign(pp, plan.bases[b], xs, ctx);
                    beta.update(max_abs(MonomialOp(pp, ctx).right(p) - double(bsign) * p), name);
                }
            }
            const CMatrix &ub = prefix[rotations_before[b]];
            rotated.push_back(ub.adjoint() * p * ub);
        }
        for (size_t i = 0; i < rotated.size(); i++)
            for (size_t j = i + 1; j < rotated.size(); j++)
                rcomm.update(max_abs(rotated[i] * rotated[j] - rotated[j] * rotated[i]), name);

        CMatrix hc = collapsed_hamiltonian(plan, bw, dim);
        recon.update(max_abs(q * u * hd * u.adjoint() * q - q * hc * q), name);

        Eigen::SelfAdjointEigenSolver<CMatrix> qs(q);
        std::vector<Eigen::Index> cols;
        for (Eigen::Index k = 0; k < qs.eigenvalues().size(); k++)
            if (qs.eigenvalues()(k) > 0.5) cols.push_back(k);
        CMatrix eq(dim, cols.size());
        for (size_t k = 0; k < cols.size(); k++) eq.col(static_cast<Eigen::Index>(k)) = qs.eigenvectors().col(cols[k]);
        frames.push_back(u.adjoint() * eq);

        BlockReport br;
        br.x = x;
        br.dim = cols.size();
        for (size_t v : bw.survivors) br.survivor_weights.push_back(bw.weight[v]);
        if (br.dim) {
            CMatrix hb = eq.adjoint() * hc * eq;
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (hb + hb.adjoint()), Eigen::EigenvaluesOnly);
            for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) br.spectrum.push_back(es.eigenvalues()(k));
        }
        union_spectrum.insert(union_spectrum.end(), br.spectrum.begin(), br.spectrum.end());
        rep.block_reports.push_back(std::move(br));
    }
    rep.completeness = max_abs(sum - eye);
    rep.idempotence = idem.value;
    rep.commutation = comm.value;
    rep.rotated_commutation = rcomm.value;
    rep.reconstruction = recon.value;
    rep.beta = beta.value;

    size_t total_cols = 0;
    for (const auto &f : frames) total_cols += static_cast<size_t>(f.cols());
    CMatrix all(dim, total_cols);
    Eigen::Index at = 0;
    for (const auto &f : frames) {
        all.middleCols(at, f.cols()) = f;
        at += f.cols();
    }
    rep.orthogonality = total_cols == dim ? std::max(max_abs(all.adjoint() * all - eye), max_abs(all * all.adjoint() - eye))
                                          : std::numeric_limits<double>::infinity();

    Eigen::SelfAdjointEigenSolver<CMatrix> full(hd, Eigen::EigenvaluesOnly);
    std::sort(union_spectrum.begin(), union_spectrum.end());
    if (union_spectrum.size() != dim) {
        rep.spectrum = std::numeric_limits<double>::infinity();
    } else {
        for (size_t k = 0; k < dim; k++)
            rep.spectrum = std::max(rep.spectrum, std::abs(union_spectrum[k] - full.eigenvalues()(static_cast<Eigen::Index>(k))));
    }

    struct Check {
        const char *name;
        double value, limit;
        std::string where;
    };
    const Check checks[] = {
        {"completeness", rep.completeness, tol.projector, ""},
        {"orthogonality", rep.orthogonality, tol.projector, ""},
        {"idempotence", rep.idempotence, tol.projector, idem.where},
        {"commutation with H", rep.commutation, tol.projector, comm.where},
        {"rotated projector commutation", rep.rotated_commutation, tol.projector, rcomm.where},
        {"reconstruction", rep.reconstruction, tol.spectrum, recon.where},
        {"beta sign", rep.beta, tol.projector, beta.where},
        {"spectrum", rep.spectrum, tol.spectrum, ""},
    };
    for (const auto &c : checks) {
        if (!(c.value <= c.limit)) {
            rep.failure = std::string(c.name) + " residual " + std::to_string(c.value) + (c.where.empty() ? "" : " at " + c.where);
            return rep;
        }
    }
    rep.passed = true;
    return rep;
}

}  // namespace twinscf
