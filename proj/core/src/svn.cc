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

#include "twinscf/svn.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "twinscf/errors.h"

namespace twinscf {

namespace {

int64_t md(int64_t v, int64_t d) { return ((v % d) + d) % d; }

}  // namespace

Phase::Phase(int64_t n, int64_t d) {
    if (d <= 0) throw std::invalid_argument("Phase: denominator must be positive");
    n = md(n, d);
    int64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Phase Phase::operator+(const Phase &o) const {
    int64_t l = std::lcm(den, o.den);
    return Phase(num * (l / den) + o.num * (l / o.den), l);
}

Phase Phase::operator-() const { return Phase(-num, den); }

std::complex<double> Phase::value() const {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

ModMatrix::ModMatrix(size_t rows, size_t cols, int64_t d) : rows_(rows), cols_(cols), d_(d), a_(rows * cols, 0) {
    if (d < 2) throw std::invalid_argument("ModMatrix: modulus must be >= 2");
}

ModMatrix ModMatrix::identity(size_t n, int64_t d) {
    ModMatrix m(n, n, d);
    for (size_t i = 0; i < n; i++) m.set(i, i, 1);
    return m;
}

void ModMatrix::set(size_t r, size_t c, int64_t v) { a_[r * cols_ + c] = md(v, d_); }

ModMatrix ModMatrix::operator*(const ModMatrix &o) const {
    if (cols_ != o.rows_ || d_ != o.d_) throw std::invalid_argument("ModMatrix: shape mismatch");
    ModMatrix r(rows_, o.cols_, d_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < o.cols_; j++) {
            int64_t s = 0;
            for (size_t k = 0; k < cols_; k++) s += at(i, k) * o.at(k, j);
            r.set(i, j, s);
        }
    return r;
}

ModMatrix ModMatrix::operator+(const ModMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || d_ != o.d_) throw std::invalid_argument("ModMatrix: shape mismatch");
    ModMatrix r(rows_, cols_, d_);
    for (size_t i = 0; i < a_.size(); i++) r.a_[i] = md(a_[i] + o.a_[i], d_);
    return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix &o) const { return *this + o.scaled(-1); }

ModMatrix ModMatrix::scaled(int64_t k) const {
    ModMatrix r(rows_, cols_, d_);
    for (size_t i = 0; i < a_.size(); i++) r.a_[i] = md(a_[i] * k, d_);
    return r;
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix r(cols_, rows_, d_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < cols_; j++) r.set(j, i, at(i, j));
    return r;
}

std::vector<int64_t> ModMatrix::apply(const std::vector<int64_t> &x) const {
    if (x.size() != cols_) throw std::invalid_argument("ModMatrix: vector length mismatch");
    std::vector<int64_t> y(rows_, 0);
    for (size_t i = 0; i < rows_; i++) {
        int64_t s = 0;
        for (size_t k = 0; k < cols_; k++) s += at(i, k) * x[k];
        y[i] = md(s, d_);
    }
    return y;
}

int64_t mod_inverse(int64_t a, int64_t p) {
    a = md(a, p);
    if (a == 0) throw std::invalid_argument("mod_inverse: zero has no inverse");
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr) {
        int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return md(t, p);
}

ModMatrix ModMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("ModMatrix::inverse: not square");
    size_t n = rows_;
    ModMatrix a = *this, inv = identity(n, d_);
    for (size_t c = 0; c < n; c++) {
        size_t piv = c;
        while (piv < n && a.at(piv, c) == 0) piv++;
        if (piv == n) throw std::invalid_argument("ModMatrix::inverse: singular");
        if (piv != c)
            for (size_t k = 0; k < n; k++) {
                std::swap(a.a_[c * n + k], a.a_[piv * n + k]);
                std::swap(inv.a_[c * n + k], inv.a_[piv * n + k]);
            }
        int64_t s = mod_inverse(a.at(c, c), d_);
        for (size_t k = 0; k < n; k++) {
            a.set(c, k, a.at(c, k) * s);
            inv.set(c, k, inv.at(c, k) * s);
        }
        for (size_t r = 0; r < n; r++) {
            if (r == c || a.at(r, c) == 0) continue;
            int64_t f = a.at(r, c);
            for (size_t k = 0; k < n; k++) {
                a.set(r, k, a.at(r, k) - f * a.at(c, k));
                inv.set(r, k, inv.at(r, k) - f * inv.at(c, k));
            }
        }
    }
    return inv;
}

size_t ModMatrix::rank() const {
    ModMatrix a = *this;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; c++) {
        size_t piv = r;
        while (piv < rows_ && a.at(piv, c) == 0) piv++;
        if (piv == rows_) continue;
        for (size_t k = 0; k < cols_; k++) std::swap(a.a_[r * cols_ + k], a.a_[piv * cols_ + k]);
        int64_t s = mod_inverse(a.at(r, c), d_);
        for (size_t i = r + 1; i < rows_; i++) {
            int64_t f = a.at(i, c) * s;
            for (size_t k = 0; k < cols_; k++) a.set(i, k, a.at(i, k) - f * a.at(r, k));
        }
        r++;
    }
    return r;
}

std::string ModMatrix::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) out << (j ? " " : "") << at(i, j);
        out << "\n";
    }
    return out.str();
}

ModMatrix GroupSpec::omega() const { return w - w.transpose(); }

bool GroupSpec::symplectic() const { return n % 2 == 0 && omega().rank() == n; }

int64_t GroupSpec::w_form(const std::vector<int64_t> &x, const std::vector<int64_t> &y) const {
    int64_t s = 0;
    for (size_t i = 0; i < n; i++) {
        if (!x[i]) continue;
        for (size_t j = 0; j < n; j++) s += x[i] * w.at(i, j) * y[j];
    }
    return md(s, d);
}

GroupSpec GroupSpec::weyl(int64_t d, size_t m) {
    GroupSpec s;
    s.d = d;
    s.n = 2 * m;
    s.w = ModMatrix(2 * m, 2 * m, d);
    for (size_t i = 0; i < m; i++) s.w.set(m + i, i, -1);
    return s;
}

GroupSpec GroupSpec::majorana(size_t modes) {
    GroupSpec s;
    s.d = 2;
    s.n = modes;
    s.w = ModMatrix(modes, modes, 2);
    for (size_t i = 0; i < modes; i++)
        for (size_t j = 0; j < i; j++) s.w.set(i, j, 1);
    return s;
}

namespace {

// t = r · ω^u with r in F.
std::pair<Phase, int64_t> split_phase(const Phase &t, int64_t d) {
    int64_t u = (t.num * d) / t.den;
    return {t + Phase(-u, d), u};
}

void check_element(const PolarGroupElement &g, const GroupSpec &s) {
    if (g.x.size() != s.n) throw std::invalid_argument("group element dimension mismatch");
}

}  // namespace

PolarGroupElement group_identity(const GroupSpec &s) { return {Phase(), 0, std::vector<int64_t>(s.n, 0)}; }

PolarGroupElement group_multiply(const PolarGroupElement &g, const PolarGroupElement &h, const GroupSpec &s) {
    check_element(g, s);
    check_element(h, s);
    auto [r, u] = split_phase(g.a + h.a, s.d);
    PolarGroupElement out{r, md(u + g.p + h.p + s.w_form(g.x, h.x), s.d), std::vector<int64_t>(s.n)};
    for (size_t i = 0; i < s.n; i++) out.x[i] = md(g.x[i] + h.x[i], s.d);
    return out;
}

PolarGroupElement group_inverse(const PolarGroupElement &g, const GroupSpec &s) {
    check_element(g, s);
    auto [r, u] = split_phase(-g.a, s.d);
    PolarGroupElement out{r, md(u - g.p + s.w_form(g.x, g.x), s.d), std::vector<int64_t>(s.n)};
    for (size_t i = 0; i < s.n; i++) out.x[i] = md(-g.x[i], s.d);
    return out;
}

int64_t commutator_exponent(const PolarGroupElement &g, const PolarGroupElement &h, const GroupSpec &s) {
    return md(s.w_form(g.x, h.x) - s.w_form(h.x, g.x), s.d);
}

PolarGroupElement random_element(const GroupSpec &s, std::mt19937_64 &rng) {
    constexpr int64_t kSub = 7;
    PolarGroupElement g;
    g.a = Phase(static_cast<int64_t>(rng() % kSub), s.d * kSub);
    g.p = static_cast<int64_t>(rng() % static_cast<uint64_t>(s.d));
    g.x.resize(s.n);
    for (auto &v : g.x) v = static_cast<int64_t>(rng() % static_cast<uint64_t>(s.d));
    return g;
}

ModMatrix standard_symplectic(size_t n, int64_t d) {
    if (n % 2) throw std::invalid_argument("standard_symplectic: odd dimension");
    size_t m = n / 2;
    ModMatrix o(n, n, d);
    for (size_t i = 0; i < m; i++) {
        o.set(i, m + i, 1);
        o.set(m + i, i, -1);
    }
    return o;
}

ModMatrix symplectic_transform(const ModMatrix &omega) {
    size_t n = omega.rows();
    int64_t d = omega.modulus();
    if (omega.cols() != n) throw std::invalid_argument("symplectic_transform: not square");
    for (size_t i = 0; i < n; i++) {
        if (omega.at(i, i) != 0) throw std::invalid_argument("symplectic_transform: nonzero diagonal");
        for (size_t j = 0; j < n; j++)
            if (md(omega.at(i, j) + omega.at(j, i), d) != 0) throw std::invalid_argument("symplectic_transform: not skew-symmetric");
    }
    if (n % 2) throw std::invalid_argument("symplectic_transform: degenerate form");
    auto form = [&](const std::vector<int64_t> &u, const std::vector<int64_t> &v) {
        int64_t s = 0;
        for (size_t i = 0; i < n; i++)
            for (size_t j = 0; j < n; j++) s += u[i] * omega.at(i, j) * v[j];
        return md(s, d);
    };
    std::vector<std::vector<int64_t>> pool;
    for (size_t i = 0; i < n; i++) {
        std::vector<int64_t> e(n, 0);
        e[i] = 1;
        pool.push_back(e);
    }
    size_t m = n / 2;
    // Columns of S with Sᵀ Ω S = Ω_std; e-vectors fill the z slots, f-vectors the x slots.
    ModMatrix s(n, n, d);
    for (size_t k = 0; k < m; k++) {
        size_t ei = 0, fi = 0;
        bool found = false;
        for (ei = 0; ei < pool.size() && !found; ei++)
            for (fi = 0; fi < pool.size(); fi++)
                if (form(pool[ei], pool[fi]) != 0) {
                    found = true;
                    break;
                }
        if (!found) throw std::invalid_argument("symplectic_transform: degenerate form");
        ei--;
        std::vector<int64_t> e = pool[ei], f = pool[fi];
        int64_t scale = mod_inverse(form(e, f), d);
        for (auto &v : f) v = md(v * scale, d);
        std::vector<std::vector<int64_t>> rest;
        for (size_t i = 0; i < pool.size(); i++) {
            if (i == ei || i == fi) continue;
            std::vector<int64_t> v = pool[i];
            int64_t vf = form(v, f), ve = form(v, e);
            for (size_t j = 0; j < n; j++) v[j] = md(v[j] - vf * e[j] + ve * f[j], d);
            rest.push_back(v);
        }
        pool = std::move(rest);
        for (size_t j = 0; j < n; j++) {
            s.set(j, k, e[j]);
            s.set(j, m + k, f[j]);
        }
    }
    return s.inverse();
}

namespace {

void check_specs(const GroupSpec &from, const GroupSpec &to) {
    if (from.d != to.d || from.n != to.n) throw std::invalid_argument("build_isomorphism: specs differ in d or n");
    if (!from.symplectic() || !to.symplectic()) throw std::invalid_argument("build_isomorphism: form is not symplectic");
}

}  // namespace

IsoMap build_isomorphism(const GroupSpec &from, const GroupSpec &to) {
    check_specs(from, to);
    ModMatrix m1 = symplectic_transform(from.omega());
    ModMatrix m2 = symplectic_transform(to.omega());
    return build_isomorphism(from, to, m2.inverse() * m1);
}

IsoMap build_isomorphism(const GroupSpec &from, const GroupSpec &to, const ModMatrix &m) {
    check_specs(from, to);
    if (m.transpose() * to.omega() * m != from.omega()) throw std::invalid_argument("build_isomorphism: M does not preserve the forms");
    IsoMap iso;
    iso.from = from;
    iso.to = to;
    iso.m = m;
    ModMatrix diff = m.transpose() * to.w * m - from.w;
    if (from.d == 2) {
        iso.even = true;
        iso.c = diff;
    } else {
        iso.c = diff.scaled(mod_inverse(2, from.d));
    }
    return iso;
}

PolarGroupElement IsoMap::operator()(const PolarGroupElement &g) const {
    check_element(g, from);
    PolarGroupElement out;
    out.x = m.apply(g.x);
    int64_t q = 0;
    for (size_t i = 0; i < from.n; i++) {
        if (!g.x[i]) continue;
        for (size_t j = 0; j < from.n; j++) q += g.x[i] * c.at(i, j) * g.x[j];
    }
    if (!even) {
        out.a = g.a;
        out.p = md(g.p + q, from.d);
        return out;
    }
    auto [r, u] = split_phase(g.a + Phase(md(q, 4), 4), 2);
    out.a = r;
    out.p = md(g.p + u, 2);
    return out;
}

ModMatrix pauli_majorana_m(size_t m) {
    if (m == 0) throw std::invalid_argument("pauli_majorana_m: m must be positive");
    size_t n = 2 * m;
    ModMatrix mm(n, n, 2);
    for (size_t i = 0; i < m; i++) {
        // Column m+i: x_i + Σ_{j<i} z_j.
        mm.set(m + i, m + i, 1);
        for (size_t j = 0; j < i; j++) mm.set(j, m + i, 1);
        // Column i: z_i + column m+i.
        for (size_t r = 0; r < n; r++) mm.set(r, i, mm.at(r, m + i));
        mm.set(i, i, mm.at(i, i) + 1);
    }
    return mm;
}

IsoMap majorana_to_pauli_map(size_t m) {
    return build_isomorphism(GroupSpec::majorana(2 * m), GroupSpec::pauli(m), pauli_majorana_m(m));
}

PolarGroupElement to_group_element(const PhasedString &s) {
    PolarGroupElement g;
    g.a = Phase(s.phase % 2, 4);
    g.p = s.phase / 2;
    g.x.assign(s.exps.size(), 0);
    s.exps.for_each([&](size_t i) { g.x[i] = 1; });
    return g;
}

PhasedString from_group_element(const PolarGroupElement &g, double scalar) {
    if (4 % g.a.den != 0) throw std::invalid_argument("from_group_element: scalar is not a power of i");
    int k = static_cast<int>(g.a.num * (4 / g.a.den) + 2 * g.p);
    BitVec e(g.x.size());
    for (size_t i = 0; i < g.x.size(); i++)
        if (g.x[i] % 2) e.set(i);
    return PhasedString(k, scalar, e);
}

PhasedString majorana_to_pauli(const PhasedString &s, size_t modes) {
    size_t m = (modes + 1) / 2;
    thread_local std::vector<std::optional<IsoMap>> cache;
    if (cache.size() <= m) cache.resize(m + 1);
    if (!cache[m]) cache[m] = majorana_to_pauli_map(m);
    PolarGroupElement g = to_group_element(s);
    g.x.resize(2 * m, 0);
    return from_group_element((*cache[m])(g), s.scalar);
}

Hamiltonian to_pauli_picture(const Hamiltonian &h) {
    switch (h.ctx().kind()) {
        case AlgebraKind::PauliQubits:
            return h;
        case AlgebraKind::MajoranaModes: {
            size_t modes = h.ctx().n();
            std::vector<PhasedString> terms;
            for (const auto &t : h.terms()) terms.push_back(majorana_to_pauli(t, modes));
            return Hamiltonian(AlgebraContext::pauli((modes + 1) / 2), std::move(terms));
        }
        case AlgebraKind::Custom:
            break;
    }
    throw std::invalid_argument("to_pauli_picture: custom contexts have no Pauli picture");
}

WeylRep::WeylRep(int64_t d, size_t m) : spec_(GroupSpec::weyl(d, m)), m_(m), dim_(1) {
    for (size_t i = 0; i < m; i++) {
        dim_ *= static_cast<size_t>(d);
        if (dim_ > 4096) throw std::invalid_argument("WeylRep: dimension exceeds 4096");
    }
}

CMat WeylRep::operator()(const PolarGroupElement &g) const {
    check_element(g, spec_);
    int64_t d = spec_.d;
    const std::complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
    std::vector<std::complex<double>> powers(d);
    for (int64_t k = 0; k < d; k++) powers[k] = std::pow(omega, static_cast<double>(k));
    std::complex<double> scalar = g.a.value() * powers[md(g.p, d)];
    CMat out = CMat::Zero(dim_, dim_);
    std::vector<int64_t> digits(m_);
    for (size_t s = 0; s < dim_; s++) {
        size_t rest = s, t = 0, place = 1;
        int64_t expo = 0;
        for (size_t j = 0; j < m_; j++) {
            int64_t sj = static_cast<int64_t>(rest % d);
            rest /= d;
            int64_t tj = md(sj + g.x[m_ + j], d);
            expo += g.x[j] * tj;
            t += static_cast<size_t>(tj) * place;
            place *= static_cast<size_t>(d);
        }
        out(t, s) = scalar * powers[md(expo, d)];
    }
    return out;
}

std::vector<PolarGroupElement> WeylRep::coset_representatives() const {
    std::vector<PolarGroupElement> out;
    size_t total = dim_ * dim_;
    for (size_t k = 0; k < total; k++) {
        PolarGroupElement g = group_identity(spec_);
        size_t rest = k;
        for (size_t i = 0; i < spec_.n; i++) {
            g.x[i] = static_cast<int64_t>(rest % spec_.d);
            rest /= spec_.d;
        }
        out.push_back(g);
    }
    return out;
}

WeylReport verify_weyl_properties(int64_t d, size_t m, double tol, uint64_t seed) {
    WeylReport rep;
    WeylRep mu(d, m);
    const GroupSpec &s = mu.spec();
    double dm = static_cast<double>(mu.dim());
    CMat eye = CMat::Identity(mu.dim(), mu.dim());
    auto reps = mu.coset_representatives();
    std::vector<CMat> mats;
    for (const auto &g : reps) mats.push_back(mu(g));
    for (size_t i = 0; i < reps.size(); i++) {
        rep.unitarity = std::max(rep.unitarity, (mats[i] * mats[i].adjoint() - eye).cwiseAbs().maxCoeff());
        bool central = std::all_of(reps[i].x.begin(), reps[i].x.end(), [](int64_t v) { return v == 0; });
        if (!central) rep.traceless = std::max(rep.traceless, std::abs(mats[i].trace()));
        for (size_t j = 0; j < reps.size(); j++) {
            std::complex<double> ip = (mats[i].adjoint() * mats[j]).trace();
            double expect = i == j ? dm : 0.0;
            rep.hs_orthogonality = std::max(rep.hs_orthogonality, std::abs(ip - expect));
        }
    }
    // Central elements a ω^p: trace a ω^p d^m.
    for (int64_t p = 0; p < d; p++) {
        PolarGroupElement c = group_identity(s);
        c.p = p;
        c.a = Phase(1, 3 * d);
        std::complex<double> expect = c.a.value() * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(d)) * dm;
        rep.identity_trace = std::max(rep.identity_trace, std::abs(mu(c).trace() - expect));
    }
    // (1/|H|) Σ |tr|² over H = {ω^p τ(x)}.
    double sum = 0;
    for (int64_t p = 0; p < d; p++)
        for (const auto &m0 : mats) sum += std::norm(m0.trace());  // |ω^p|=1
    rep.character_sum = std::abs(sum / (static_cast<double>(d) * static_cast<double>(reps.size())) - 1.0);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 500; k++) {
        auto g = random_element(s, rng), h = random_element(s, rng);
        rep.homomorphism = std::max(rep.homomorphism, (mu(group_multiply(g, h, s)) - mu(g) * mu(h)).cwiseAbs().maxCoeff());
    }
    struct Check {
        const char *name;
        double value;
    };
    for (const Check &c : {Check{"unitarity", rep.unitarity}, Check{"tracelessness", rep.traceless},
                           Check{"central trace", rep.identity_trace}, Check{"Hilbert-Schmidt orthogonality", rep.hs_orthogonality},
                           Check{"character sum", rep.character_sum}, Check{"homomorphism", rep.homomorphism}}) {
        if (!(c.value <= tol)) {
            rep.failure = std::string(c.name) + " residual " + std::to_string(c.value);
            return rep;
        }
    }
    rep.passed = true;
    return rep;
}

Intertwiner find_intertwiner(const std::function<CMat(const PolarGroupElement &)> &rep1,
                             const std::function<CMat(const PolarGroupElement &)> &rep2, const IsoMap &phi, size_t dim,
                             uint64_t seed, size_t attempts) {
    if (dim > 256) throw std::invalid_argument("find_intertwiner: dimension exceeds 256");
    const GroupSpec &s = phi.from;
    // Coset representatives (1, 0, x) of the domain.
    std::vector<PolarGroupElement> reps;
    size_t total = 1;
    for (size_t i = 0; i < s.n; i++) total *= static_cast<size_t>(s.d);
    std::vector<CMat> m1, m2;
    for (size_t k = 0; k < total; k++) {
        PolarGroupElement g = group_identity(s);
        size_t rest = k;
        for (size_t i = 0; i < s.n; i++) {
            g.x[i] = static_cast<int64_t>(rest % s.d);
            rest /= s.d;
        }
        CMat a = rep1(g), b = rep2(phi(g));
        if (a.rows() != static_cast<Eigen::Index>(dim) || b.rows() != static_cast<Eigen::Index>(dim))
            throw std::invalid_argument("find_intertwiner: representation dimension mismatch");
        if (std::abs(a.trace() - b.trace()) > 1e-8)
            throw VerificationError("find_intertwiner: characters differ at a coset representative");
        reps.push_back(g);
        m1.push_back(std::move(a));
        m2.push_back(std::move(b));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (size_t attempt = 1; attempt <= attempts; attempt++) {
        CMat x(dim, dim);
        for (Eigen::Index i = 0; i < x.rows(); i++)
            for (Eigen::Index j = 0; j < x.cols(); j++) x(i, j) = {normal(rng), normal(rng)};
        CMat s0 = CMat::Zero(dim, dim);
        for (size_t k = 0; k < reps.size(); k++) s0 += m2[k] * x * m1[k].adjoint();
        // Schur: s0 s0† = λ I with λ >= 0.
        double lambda = (s0 * s0.adjoint()).trace().real() / static_cast<double>(dim);
        if (lambda < 1e-10) continue;
        Intertwiner out;
        out.s = s0 / std::sqrt(lambda);
        out.attempts = attempt;
        out.unitarity_residual = (out.s * out.s.adjoint() - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff();
        for (size_t k = 0; k < reps.size(); k++)
            out.conjugation_residual = std::max(out.conjugation_residual, (m2[k] * out.s - out.s * m1[k]).cwiseAbs().maxCoeff());
        if (out.unitarity_residual <= 1e-8 && out.conjugation_residual <= 1e-8) return out;
    }
    throw VerificationError("find_intertwiner: no invertible average found");
}

std::function<CMat(const PolarGroupElement &)> majorana_representation(size_t modes) {
    if (modes == 0 || modes % 2 || modes > 24) throw std::invalid_argument("majorana_representation: need an even mode count <= 24");
    size_t q = modes / 2;
    using C = std::complex<double>;
    CMat x(2, 2), y(2, 2), z(2, 2), id = CMat::Identity(2, 2);
    x << 0, 1, 1, 0;
    y << 0, C(0, -1), C(0, 1), 0;
    z << 1, 0, 0, -1;
    auto kron = [](const CMat &a, const CMat &b) {
        CMat r(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); i++)
            for (Eigen::Index j = 0; j < a.cols(); j++) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return r;
    };
    std::vector<CMat> gammas;
    for (size_t a = 0; a < modes; a++) {
        CMat r = CMat::Identity(1, 1);
        for (size_t j = 0; j < q; j++) r = kron(r, j < a / 2 ? z : j == a / 2 ? (a % 2 ? y : x) : id);
        gammas.push_back(r);
    }
    return [gammas = std::move(gammas), q](const PolarGroupElement &g) {
        size_t dim = size_t{1} << q;
        CMat r = g.a.value() * (g.p % 2 ? -1.0 : 1.0) * CMat::Identity(dim, dim);
        for (size_t a = 0; a < g.x.size(); a++)
            if (g.x[a]) r = r * gammas[a];
        return r;
    };
}

PauliMajoranaCheck verify_pauli_majorana(size_t m, uint64_t seed, double tol, size_t spot_checks) {
    PauliMajoranaCheck c;
    GroupSpec pauli = GroupSpec::pauli(m), maj = GroupSpec::majorana(2 * m);
    c.phi = build_isomorphism(pauli, maj, pauli_majorana_m(m).inverse());
    c.symplectic = c.phi.m.transpose() * maj.omega() * c.phi.m == pauli.omega();
    WeylRep mu(2, m);
    auto rho = majorana_representation(2 * m);
    c.s = find_intertwiner([&](const PolarGroupElement &g) { return mu(g); }, rho, c.phi, mu.dim(), seed);
    std::mt19937_64 rng(seed);
    for (size_t k = 0; k < spot_checks; k++) {
        PolarGroupElement g = random_element(pauli, rng);
        c.spot_residual = std::max(c.spot_residual, (rho(c.phi(g)) * c.s.s - c.s.s * mu(g)).cwiseAbs().maxCoeff());
    }
    c.passed = c.symplectic && c.s.unitarity_residual <= tol && c.s.conjugation_residual <= tol && c.spot_residual <= tol;
    return c;
}

}  // namespace twinscf
