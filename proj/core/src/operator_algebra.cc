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

#include "twinscf/operator_algebra.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "twinscf/errors.h"

namespace twinscf {

namespace {

bool parity_and(const BitVec &a, const BitVec &b) { return a.and_count(b) & 1; }

// Σ_{i>j} x_i y_j mod 2.
bool strict_lower_form(const BitVec &x, const BitVec &y) {
    const uint64_t *xw = x.words();
    const uint64_t *yw = y.words();
    size_t below = 0;  // popcount of y in earlier words
    size_t acc = 0;
    for (size_t k = 0; k < x.num_words(); k++) {
        uint64_t xs = xw[k];
        while (xs) {
            int b = std::countr_zero(xs);
            uint64_t mask = b ? (~uint64_t{0} >> (64 - b)) : 0;
            acc += below + std::popcount(yw[k] & mask);
            xs &= xs - 1;
        }
        below += std::popcount(yw[k]);
    }
    return acc & 1;
}

void check_dims(const PhasedString &a, const PhasedString &b, const AlgebraContext &ctx) {
    if (a.exps.size() != ctx.n() || b.exps.size() != ctx.n())
        throw std::invalid_argument("operator dimension mismatch");
}

}  // namespace

AlgebraContext AlgebraContext::pauli(size_t qubits) {
    AlgebraContext c;
    c.kind_ = AlgebraKind::PauliQubits;
    c.n_ = 2 * qubits;
    return c;
}

AlgebraContext AlgebraContext::majorana(size_t modes) {
    AlgebraContext c;
    c.kind_ = AlgebraKind::MajoranaModes;
    c.n_ = modes;
    return c;
}

AlgebraContext AlgebraContext::custom(std::vector<BitVec> w_rows) {
    AlgebraContext c;
    c.kind_ = AlgebraKind::Custom;
    c.n_ = w_rows.size();
    for (const auto &r : w_rows)
        if (r.size() != c.n_) throw std::invalid_argument("W must be square");
    c.w_ = std::move(w_rows);
    return c;
}

bool AlgebraContext::w_form(const BitVec &x, const BitVec &y) const {
    switch (kind_) {
        case AlgebraKind::PauliQubits: {
            size_t m = n_ / 2;
            return parity_and(slice(x, m, m), slice(y, 0, m));
        }
        case AlgebraKind::MajoranaModes:
            return strict_lower_form(x, y);
        case AlgebraKind::Custom: {
            size_t acc = 0;
            x.for_each([&](size_t i) { acc += w_[i].and_count(y); });
            return acc & 1;
        }
    }
    return false;
}

bool AlgebraContext::omega_form(const BitVec &x, const BitVec &y) const {
    switch (kind_) {
        case AlgebraKind::PauliQubits: {
            size_t m = n_ / 2;
            auto [xz, xx] = split_pauli(x, m);
            auto [yz, yx] = split_pauli(y, m);
            return parity_and(xz, yx) ^ parity_and(xx, yz);
        }
        case AlgebraKind::MajoranaModes:
            return ((x.count() * y.count()) ^ x.and_count(y)) & 1;
        case AlgebraKind::Custom:
            return w_form(x, y) ^ w_form(y, x);
    }
    return false;
}

std::vector<BitVec> AlgebraContext::w_matrix() const {
    if (kind_ == AlgebraKind::Custom) return w_;
    std::vector<BitVec> w(n_, BitVec(n_));
    if (kind_ == AlgebraKind::PauliQubits) {
        size_t m = n_ / 2;
        for (size_t i = 0; i < m; i++) w[m + i].set(i);
    } else {
        for (size_t i = 0; i < n_; i++)
            for (size_t j = 0; j < i; j++) w[i].set(j);
    }
    return w;
}

bool AlgebraContext::operator==(const AlgebraContext &o) const {
    return kind_ == o.kind_ && n_ == o.n_ && w_ == o.w_;
}

std::pair<BitVec, BitVec> split_pauli(const BitVec &exps, size_t qubits) {
    return {slice(exps, 0, qubits), slice(exps, qubits, qubits)};
}

PhasedString multiply(const PhasedString &a, const PhasedString &b, const AlgebraContext &ctx) {
    check_dims(a, b, ctx);
    int phase = a.phase + b.phase + (ctx.w_form(a.exps, b.exps) ? 2 : 0);
    return PhasedString(phase, a.scalar * b.scalar, a.exps ^ b.exps);
}

bool commutes(const PhasedString &a, const PhasedString &b, const AlgebraContext &ctx) {
    check_dims(a, b, ctx);
    return !ctx.omega_form(a.exps, b.exps);
}

bool is_hermitian(const PhasedString &a, const AlgebraContext &ctx) {
    if (a.exps.size() != ctx.n()) throw std::invalid_argument("operator dimension mismatch");
    return ((a.phase + (ctx.w_form(a.exps, a.exps) ? 1 : 0)) & 1) == 0;
}

int canonical_phase(const BitVec &exps, const AlgebraContext &ctx) {
    switch (ctx.kind()) {
        case AlgebraKind::PauliQubits: {
            auto [z, x] = split_pauli(exps, ctx.n() / 2);
            return static_cast<int>((3 * z.and_count(x)) % 4);
        }
        case AlgebraKind::MajoranaModes: {
            size_t k = exps.count();
            return static_cast<int>((k * (k - (k ? 1 : 0)) / 2) % 4);
        }
        case AlgebraKind::Custom:
            return ctx.w_form(exps, exps) ? 1 : 0;
    }
    return 0;
}

PhasedString normalize_sign(const PhasedString &a, const AlgebraContext &ctx) {
    if (!is_hermitian(a, ctx)) throw std::invalid_argument("normalize_sign: non-Hermitian string");
    int k0 = canonical_phase(a.exps, ctx);
    PhasedString r = a;
    if (((a.phase - k0) % 4 + 4) % 4 == 2) r.scalar = -r.scalar;
    r.phase = k0;
    return r;
}

namespace {

double parse_weight(const std::string &tok) {
    double w = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), w);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(w))
        throw ParseError("malformed weight '" + tok + "'");
    return w;
}

// Label without weight or phase prefix. Returns exps and the phase of the operator it denotes.
std::pair<BitVec, int> parse_label_body(const std::string &body, const AlgebraContext &ctx) {
    if (body.rfind("m:", 0) == 0) {
        if (ctx.kind() != AlgebraKind::MajoranaModes) throw ParseError("Majorana label in non-Majorana context");
        std::vector<long long> idx;
        std::string list = body.substr(2);
        if (!list.empty()) {
            std::stringstream ss(list);
            std::string item;
            while (std::getline(ss, item, ',')) {
                long long v = 0;
                auto res = std::from_chars(item.data(), item.data() + item.size(), v);
                if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
                    throw ParseError("malformed mode index '" + item + "'");
                idx.push_back(v);
            }
            if (list.back() == ',') throw ParseError("malformed mode list");
        }
        BitVec e(ctx.n());
        size_t inversions = 0;
        for (size_t i = 0; i < idx.size(); i++) {
            if (idx[i] < 1 || static_cast<size_t>(idx[i]) > ctx.n())
                throw ParseError("mode index " + std::to_string(idx[i]) + " out of range");
            if (e.test(idx[i] - 1)) throw ParseError("repeated mode index " + std::to_string(idx[i]));
            e.set(idx[i] - 1);
            for (size_t j = 0; j < i; j++)
                if (idx[j] > idx[i]) inversions++;
        }
        size_t k = idx.size();
        int phase = static_cast<int>((k * (k ? k - 1 : 0) / 2 + 2 * inversions) % 4);
        return {e, phase};
    }
    if (body.rfind("c:", 0) == 0) {
        if (ctx.kind() != AlgebraKind::Custom) throw ParseError("raw label in non-custom context");
        std::string bits = body.substr(2);
        if (bits.size() != ctx.n()) throw ParseError("wrong arity: expected " + std::to_string(ctx.n()) + " bits");
        BitVec e(ctx.n());
        for (size_t i = 0; i < bits.size(); i++) {
            if (bits[i] == '1') {
                e.set(i);
            } else if (bits[i] != '0') {
                throw ParseError("malformed raw label");
            }
        }
        return {e, canonical_phase(e, ctx)};
    }
    if (ctx.kind() != AlgebraKind::PauliQubits) throw ParseError("Pauli label in non-Pauli context");
    size_t m = ctx.n() / 2;
    if (body.size() != m) throw ParseError("wrong arity: expected " + std::to_string(m) + " qubits, got " + std::to_string(body.size()));
    BitVec e(ctx.n());
    for (size_t j = 0; j < m; j++) {
        switch (body[j]) {
            case 'I':
                break;
            case 'X':
                e.set(m + j);
                break;
            case 'Z':
                e.set(j);
                break;
            case 'Y':
                e.set(j);
                e.set(m + j);
                break;
            default:
                throw ParseError(std::string("malformed Pauli letter '") + body[j] + "'");
        }
    }
    return {e, canonical_phase(e, ctx)};
}

}  // namespace

PhasedString parse_term(const std::string &text, const AlgebraContext &ctx) {
    std::istringstream ss(text);
    std::string wtok, label, extra;
    if (!(ss >> wtok >> label)) throw ParseError("expected '<weight> <label>'");
    if (ss >> extra) throw ParseError("trailing text after label");
    double w = parse_weight(wtok);
    if (w == 0.0) throw ParseError("zero weight");
    int prefix = 0;
    if (label.rfind("-i", 0) == 0) {
        prefix = 3;
        label = label.substr(2);
    } else if (label.rfind("i", 0) == 0) {
        prefix = 1;
        label = label.substr(1);
    } else if (label.rfind("-", 0) == 0) {
        prefix = 2;
        label = label.substr(1);
    }
    auto [e, phase] = parse_label_body(label, ctx);
    PhasedString t(phase + prefix, w, e);
    if (!is_hermitian(t, ctx)) throw ParseError("non-Hermitian phase");
    return normalize_sign(t, ctx);
}

std::string format_label(const BitVec &exps, const AlgebraContext &ctx) {
    std::string out;
    switch (ctx.kind()) {
        case AlgebraKind::PauliQubits: {
            size_t m = ctx.n() / 2;
            for (size_t j = 0; j < m; j++) {
                bool z = exps.test(j), x = exps.test(m + j);
                out += z ? (x ? 'Y' : 'Z') : (x ? 'X' : 'I');
            }
            break;
        }
        case AlgebraKind::MajoranaModes: {
            out = "m:";
            bool first = true;
            exps.for_each([&](size_t i) {
                if (!first) out += ',';
                out += std::to_string(i + 1);
                first = false;
            });
            break;
        }
        case AlgebraKind::Custom:
            out = "c:";
            for (size_t i = 0; i < exps.size(); i++) out += exps.test(i) ? '1' : '0';
            break;
    }
    return out;
}

std::string format_term(const PhasedString &t, const AlgebraContext &ctx) {
    PhasedString n = normalize_sign(t, ctx);
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), n.scalar);
    return std::string(buf, res.ptr) + " " + format_label(n.exps, ctx);
}

Hamiltonian::Hamiltonian(AlgebraContext ctx, std::vector<PhasedString> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    std::unordered_set<BitVec, BitVecHash> seen;
    for (size_t i = 0; i < terms_.size(); i++) {
        const auto &t = terms_[i];
        std::string where = "term " + std::to_string(i) + ": ";
        if (t.exps.size() != ctx_.n()) throw std::invalid_argument(where + "dimension mismatch");
        if (t.scalar == 0.0 || !std::isfinite(t.scalar)) throw std::invalid_argument(where + "weight must be finite and nonzero");
        if (!is_hermitian(t, ctx_)) throw std::invalid_argument(where + "not Hermitian");
        if (!seen.insert(t.exps).second) throw std::invalid_argument(where + "proportional to an earlier term");
    }
}

size_t Hamiltonian::identity_count() const {
    return static_cast<size_t>(std::count_if(terms_.begin(), terms_.end(), [](const PhasedString &t) { return t.is_identity(); }));
}

Hamiltonian read_hamiltonian(std::istream &in) {
    struct Raw {
        std::string text;
        std::string label;
        size_t line;
    };
    std::vector<Raw> raw;
    std::string line;
    size_t lineno = 0;
    long long declared_qubits = -1, declared_modes = -1;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string a, b, extra;
        if (!(ss >> a)) continue;
        if (a == "qubits" || a == "modes") {
            long long v = -1;
            if (!(ss >> v) || v <= 0 || (ss >> extra)) throw ParseError("malformed '" + a + "' directive", lineno);
            if (!raw.empty()) throw ParseError("directive must precede terms", lineno);
            (a == "qubits" ? declared_qubits : declared_modes) = v;
            continue;
        }
        if (!(ss >> b)) throw ParseError("expected '<weight> <label>'", lineno);
        std::string body = b;
        if (body.rfind("-i", 0) == 0) {
            body = body.substr(2);
        } else if (body.rfind("i", 0) == 0 || body.rfind("-", 0) == 0) {
            body = body.substr(1);
        }
        raw.push_back({line, body, lineno});
    }
    if (raw.empty()) throw ParseError("no terms in Hamiltonian file");
    if (declared_qubits > 0 && declared_modes > 0) throw ParseError("both 'qubits' and 'modes' declared");

    bool majorana = raw.front().label.rfind("m:", 0) == 0;
    AlgebraContext ctx;
    if (majorana || declared_modes > 0) {
        size_t modes = declared_modes > 0 ? static_cast<size_t>(declared_modes) : 0;
        if (declared_modes <= 0) {
            for (const auto &r : raw) {
                if (r.label.rfind("m:", 0) != 0) throw ParseError("mixed label kinds", r.line);
                std::stringstream ss(r.label.substr(2));
                std::string item;
                while (std::getline(ss, item, ',')) {
                    long long v = 0;
                    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
                    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
                        throw ParseError("malformed mode index '" + item + "'", r.line);
                    if (v > 0) modes = std::max(modes, static_cast<size_t>(v));
                }
            }
            modes += modes & 1;
            if (modes == 0) modes = 2;
        }
        ctx = AlgebraContext::majorana(modes);
    } else {
        size_t q = declared_qubits > 0 ? static_cast<size_t>(declared_qubits) : raw.front().label.size();
        ctx = AlgebraContext::pauli(q);
    }
    std::vector<PhasedString> terms;
    std::unordered_set<BitVec, BitVecHash> seen;
    for (const auto &r : raw) {
        try {
            terms.push_back(parse_term(r.text, ctx));
        } catch (const ParseError &e) {
            throw ParseError(e.what(), r.line);
        }
        if (!seen.insert(terms.back().exps).second) throw ParseError("term proportional to an earlier term", r.line);
    }
    return Hamiltonian(ctx, std::move(terms));
}

std::string write_hamiltonian(const Hamiltonian &h) {
    std::ostringstream out;
    if (h.ctx().kind() == AlgebraKind::MajoranaModes) out << "modes " << h.ctx().n() << "\n";
    for (const auto &t : h.terms()) out << format_term(t, h.ctx()) << "\n";
    return out.str();
}

FrustrationGraph build_frustration_graph(const Hamiltonian &h) {
    FrustrationGraph fg;
    for (size_t i = 0; i < h.size(); i++)
        if (!h.terms()[i].is_identity()) fg.term_of_vertex.push_back(i);
    size_t n = fg.term_of_vertex.size();
    fg.graph = Graph(n);
    const auto &ctx = h.ctx();
    if (ctx.kind() == AlgebraKind::PauliQubits) {
        size_t m = ctx.n() / 2;
        std::vector<BitVec> z(n), x(n);
        for (size_t v = 0; v < n; v++) std::tie(z[v], x[v]) = split_pauli(h.terms()[fg.term_of_vertex[v]].exps, m);
        for (size_t u = 0; u < n; u++)
            for (size_t v = u + 1; v < n; v++)
                if ((z[u].and_count(x[v]) + x[u].and_count(z[v])) & 1) fg.graph.add_edge(u, v);
    } else {
        for (size_t u = 0; u < n; u++)
            for (size_t v = u + 1; v < n; v++)
                if (ctx.omega_form(h.terms()[fg.term_of_vertex[u]].exps, h.terms()[fg.term_of_vertex[v]].exps))
                    fg.graph.add_edge(u, v);
    }
    return fg;
}

PhasedString jordan_wigner(const PhasedString &m, size_t modes) {
    if (modes % 2) throw std::invalid_argument("jordan_wigner: odd mode count");
    if (m.exps.size() != modes) throw std::invalid_argument("jordan_wigner: dimension mismatch");
    size_t q = modes / 2;
    AlgebraContext pc = AlgebraContext::pauli(q);
    PhasedString acc(m.phase, m.scalar, BitVec(2 * q));
    m.exps.for_each([&](size_t a) {
        size_t j = a / 2;
        BitVec e(2 * q);
        for (size_t k = 0; k < j; k++) e.set(k);
        e.set(q + j);
        if (a & 1) e.set(j);
        acc = multiply(acc, PhasedString(canonical_phase(e, pc), 1.0, e), pc);
    });
    return acc;
}

}  // namespace twinscf
