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

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "twinscf/collapse.h"

namespace twinscf {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t substream_seed(uint64_t master, uint64_t index) { return mix64(master ^ mix64(index + 1)); }

Graph sample_gnp(size_t n, double p, Rng &rng) {
    if (n == 0) throw std::invalid_argument("sample_gnp: n must be positive");
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (size_t u = 0; u < n; u++)
        for (size_t v = u + 1; v < n; v++)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

namespace {

constexpr char kPauliLetters[3] = {'X', 'Y', 'Z'};

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
}

double draw_weight(Rng &rng) {
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    double w = mag(rng);
    return rng() & 1 ? w : -w;
}

// Sets Pauli `letter` (0 = X, 1 = Y, 2 = Z) on qubit q of a (z | x) vector.
void set_pauli(BitVec &e, size_t qubits, size_t q, int letter) {
    if (letter != 0) e.set(q);
    if (letter != 2) e.set(qubits + q);
}

}  // namespace

std::string pauli_pair_label(int k) {
    if (k < 0 || k > 8) throw std::invalid_argument("pauli_pair_label: index out of range");
    return {kPauliLetters[k / 3], kPauliLetters[k % 3]};
}

std::vector<int> full_alphabet() { return {0, 1, 2, 3, 4, 5, 6, 7, 8}; }

std::vector<int> parse_alphabet(const std::string &text) {
    if (text == "all") return full_alphabet();
    std::vector<int> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(start, end - start);
        int k = -1;
        for (int i = 0; i < 9; i++)
            if (pauli_pair_label(i) == tok) k = i;
        if (k < 0) throw std::invalid_argument("unknown two-local Pauli '" + tok + "'");
        if (std::find(out.begin(), out.end(), k) != out.end()) throw std::invalid_argument("repeated Pauli '" + tok + "'");
        out.push_back(k);
        start = end + 1;
    }
    return out;
}

std::string format_alphabet(const std::vector<int> &alphabet) {
    if (alphabet == full_alphabet()) return "all";
    std::string s;
    for (size_t i = 0; i < alphabet.size(); i++) s += (i ? "," : "") + pauli_pair_label(alphabet[i]);
    return s;
}

Tiling parse_tiling(const std::string &text) {
    size_t x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument("");
        size_t pos = 0;
        Tiling t{std::stoul(text.substr(0, x), &pos), 0};
        if (pos != x) throw std::invalid_argument("");
        std::string rest = text.substr(x + 1);
        t.b = std::stoul(rest, &pos);
        if (pos != rest.size() || t.a == 0 || t.b == 0) throw std::invalid_argument("");
        return t;
    } catch (const std::exception &) {
        throw std::invalid_argument("tiling must look like 4x4, got '" + text + "'");
    }
}

std::pair<size_t, size_t> LatticeGeometry::endpoints(size_t e, size_t ca, size_t cb, const Tiling &t) const {
    const Edge &ed = edges[e];
    auto cell = [&](int da, int db) {
        size_t a = (ca + t.a + static_cast<size_t>(da + static_cast<int>(t.a))) % t.a;
        size_t b = (cb + t.b + static_cast<size_t>(db + static_cast<int>(t.b))) % t.b;
        return a + t.a * b;
    };
    return {cell(ed.u_da, ed.u_db) * sites_per_cell + ed.u_site, cell(ed.v_da, ed.v_db) * sites_per_cell + ed.v_site};
}

const LatticeGeometry &brick_geometry() {
    static const LatticeGeometry g = [] {
        LatticeGeometry geo;
        geo.name = "brick";
        geo.sites_per_cell = 4;
        geo.edges = {
            {0, 1, 0, 0, 0, 0, true},
            {1, 2, 0, 0, 0, 0, true},
            {2, 3, 0, 0, 0, 0, true},
            {3, 0, 1, 0, 0, 0, true},
            {0, 1, 0, 1, 1, 0, true},
        };
        return geo;
    }();
    return g;
}

const LatticeGeometry &square_nuclei_geometry() {
    static const LatticeGeometry g = [] {
        LatticeGeometry geo;
        geo.name = "square";
        geo.sites_per_cell = 2;
        geo.edges = {
            {0, 0, 1, 0, 0, 0, true},
            {0, 0, 0, 1, 0, 0, true},
            {0, 1, 0, 0, 0, 0, false},
        };
        return geo;
    }();
    return g;
}

namespace {

void check_cell_width(const LatticeGeometry &geo, const std::vector<int> &alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("alphabet must not be empty");
    if (geo.edges.size() * alphabet.size() > 64) throw std::invalid_argument("unit cell does not fit into 64 bits");
}

void check_tiling(const LatticeGeometry &geo, const Tiling &t) {
    std::set<std::pair<size_t, size_t>> seen;
    for (size_t cb = 0; cb < t.b; cb++)
        for (size_t ca = 0; ca < t.a; ca++)
            for (size_t e = 0; e < geo.edges.size(); e++) {
                auto [u, v] = geo.endpoints(e, ca, cb, t);
                if (u == v || !seen.insert(std::minmax(u, v)).second)
                    throw std::invalid_argument("tiling " + std::to_string(t.a) + "x" + std::to_string(t.b) + " is too small for the " + geo.name +
                                                " lattice");
            }
}

}  // namespace

CellMask sample_cell(const LatticeGeometry &geo, const std::vector<int> &alphabet, double p, Rng &rng) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("lattice models need p in (0, 1]");
    check_cell_width(geo, alphabet);
    std::bernoulli_distribution coin(p);
    size_t na = alphabet.size();
    CellMask cell = 0;
    // Conditioned on a non-empty edge, the lowest drawn term is j with probability
    // p (1-p)^j / (1 - (1-p)^|A|); later terms stay independent.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double none = std::pow(1.0 - p, static_cast<double>(na));
    for (size_t e = 0; e < geo.edges.size(); e++) {
        size_t first = 0;
        if (geo.edges[e].mandatory) {
            double u = unif(rng) * (1.0 - none), acc = 0.0;
            for (first = 0; first + 1 < na; first++) {
                acc += p * std::pow(1.0 - p, static_cast<double>(first));
                if (u < acc) break;
            }
            cell |= CellMask{1} << (e * na + first);
            first++;
        }
        for (size_t j = first; j < na; j++)
            if (coin(rng)) cell |= CellMask{1} << (e * na + j);
    }
    return cell;
}

Hamiltonian lattice_hamiltonian(const LatticeGeometry &geo, const std::vector<int> &alphabet, CellMask cell, const Tiling &t, Rng *rng) {
    check_cell_width(geo, alphabet);
    check_tiling(geo, t);
    size_t q = geo.qubits(t);
    AlgebraContext ctx = AlgebraContext::pauli(q);
    size_t na = alphabet.size();
    // Weights are per cell term and replicated, like the operators.
    std::vector<double> weights(geo.edges.size() * na, 1.0);
    if (rng)
        for (auto &w : weights) w = draw_weight(*rng);
    std::vector<PhasedString> terms;
    for (size_t cb = 0; cb < t.b; cb++)
        for (size_t ca = 0; ca < t.a; ca++)
            for (size_t e = 0; e < geo.edges.size(); e++) {
                auto [u, v] = geo.endpoints(e, ca, cb, t);
                for (size_t j = 0; j < na; j++) {
                    size_t bit = e * na + j;
                    if (!((cell >> bit) & 1)) continue;
                    BitVec ex(ctx.n());
                    set_pauli(ex, q, u, alphabet[j] / 3);
                    set_pauli(ex, q, v, alphabet[j] % 3);
                    terms.emplace_back(canonical_phase(ex, ctx), weights[bit], std::move(ex));
                }
            }
    return Hamiltonian(ctx, std::move(terms));
}

Graph lattice_graph(const LatticeGeometry &geo, const std::vector<int> &alphabet, CellMask cell, const Tiling &t) {
    return build_frustration_graph(lattice_hamiltonian(geo, alphabet, cell, t)).graph;
}

Hamiltonian sample_brick(double p, const Tiling &t, Rng &rng, const std::vector<int> &alphabet) {
    CellMask cell = sample_cell(brick_geometry(), alphabet, p, rng);
    return lattice_hamiltonian(brick_geometry(), alphabet, cell, t, &rng);
}

Hamiltonian sample_square_nuclei(double p, const Tiling &t, Rng &rng, const std::vector<int> &alphabet) {
    CellMask cell = sample_cell(square_nuclei_geometry(), alphabet, p, rng);
    return lattice_hamiltonian(square_nuclei_geometry(), alphabet, cell, t, &rng);
}

namespace {

// Ball sizes in the line graph of the tiled lattice, for the edges of cell (0, 0).
std::vector<size_t> line_graph_balls(const LatticeGeometry &geo, const Tiling &t, size_t radius) {
    size_t ne = geo.edges.size() * t.cells();
    std::vector<std::pair<size_t, size_t>> ends(ne);
    std::vector<std::vector<size_t>> at_site(geo.qubits(t));
    for (size_t cb = 0; cb < t.b; cb++)
        for (size_t ca = 0; ca < t.a; ca++)
            for (size_t e = 0; e < geo.edges.size(); e++) {
                size_t id = (ca + t.a * cb) * geo.edges.size() + e;
                ends[id] = geo.endpoints(e, ca, cb, t);
                at_site[ends[id].first].push_back(id);
                at_site[ends[id].second].push_back(id);
            }
    std::vector<size_t> out;
    for (size_t e = 0; e < geo.edges.size(); e++) {
        std::vector<size_t> dist(ne, SIZE_MAX);
        std::deque<size_t> queue{e};
        dist[e] = 0;
        size_t count = 0;
        while (!queue.empty()) {
            size_t x = queue.front();
            queue.pop_front();
            count++;
            if (dist[x] == radius) continue;
            for (size_t s : {ends[x].first, ends[x].second})
                for (size_t y : at_site[s])
                    if (dist[y] == SIZE_MAX) {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
        }
        out.push_back(count);
    }
    return out;
}

}  // namespace

bool tiling_is_wrap_free(const LatticeGeometry &geo, const Tiling &t, size_t radius) {
    try {
        check_tiling(geo, t);
    } catch (const std::invalid_argument &) {
        return false;
    }
    return line_graph_balls(geo, t, radius) == line_graph_balls(geo, Tiling{2 * t.a, 2 * t.b}, radius);
}

Hamiltonian sample_majorana(size_t orbitals, double p, Rng &rng) {
    if (orbitals == 0) throw std::invalid_argument("sample_majorana: need at least one orbital");
    check_probability(p);
    size_t modes = 2 * orbitals;
    AlgebraContext ctx = AlgebraContext::majorana(modes);
    std::bernoulli_distribution coin(p);
    std::vector<PhasedString> terms;
    auto add = [&](std::initializer_list<size_t> idx) {
        if (!coin(rng)) return;
        BitVec e(modes);
        for (size_t i : idx) e.set(i);
        double w = draw_weight(rng);
        terms.emplace_back(canonical_phase(e, ctx), w, std::move(e));
    };
    for (size_t a = 0; a < modes; a++)
        for (size_t b = a + 1; b < modes; b++) add({a, b});
    for (size_t a = 0; a < modes; a++)
        for (size_t b = a + 1; b < modes; b++)
            for (size_t c = b + 1; c < modes; c++)
                for (size_t d = c + 1; d < modes; d++) add({a, b, c, d});
    return Hamiltonian(ctx, std::move(terms));
}

double binomial(size_t n, size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (size_t i = 1; i <= k; i++) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r > 1e15 ? r : std::round(r);
}

Hamiltonian sample_uniform_pauli(size_t qubits, size_t k, double p, size_t count, Rng &rng) {
    if (qubits == 0) throw std::invalid_argument("sample_uniform_pauli: need at least one qubit");
    if (k > qubits) throw std::invalid_argument("sample_uniform_pauli: k exceeds the qubit count");
    check_probability(p);
    double candidates = k == 0 ? std::pow(4.0, static_cast<double>(qubits)) - 1.0 : binomial(qubits, k) * std::pow(3.0, static_cast<double>(k));
    uint64_t target = count;
    if (count == 0) {
        if (candidates > 1.8e19) throw std::invalid_argument("sample_uniform_pauli: too many candidates for probability mode");
        std::binomial_distribution<uint64_t> bin(static_cast<uint64_t>(candidates), p);
        target = bin(rng);
    } else if (static_cast<double>(count) > candidates) {
        throw std::invalid_argument("sample_uniform_pauli: count exceeds the number of distinct strings");
    }
    AlgebraContext ctx = AlgebraContext::pauli(qubits);
    std::set<std::vector<size_t>> seen;
    std::vector<PhasedString> terms;
    std::vector<size_t> order(qubits);
    while (terms.size() < target) {
        BitVec e(ctx.n());
        if (k == 0) {
            for (size_t q = 0; q < qubits; q++) {
                int letter = static_cast<int>(rng() % 4);
                if (letter < 3) set_pauli(e, qubits, q, letter);
            }
            if (e.none()) continue;
        } else {
            for (size_t i = 0; i < qubits; i++) order[i] = i;
            for (size_t i = 0; i < k; i++) {
                size_t j = i + rng() % (qubits - i);
                std::swap(order[i], order[j]);
                set_pauli(e, qubits, order[i], static_cast<int>(rng() % 3));
            }
        }
        if (!seen.insert(e.to_vector()).second) continue;
        double w = draw_weight(rng);
        terms.emplace_back(canonical_phase(e, ctx), w, std::move(e));
    }
    return Hamiltonian(ctx, std::move(terms));
}

double klocal_anticommute_probability(size_t n, size_t k) {
    if (k == 0 || k > n) throw std::invalid_argument("klocal_anticommute_probability: need 1 <= k <= n");
    double total = 0.0;
    for (size_t s = 0; s <= k; s++) {
        double overlap = binomial(k, s) * binomial(n - k, k - s) / binomial(n, k);
        double odd = 0.0;
        for (size_t a = 1; a <= s; a += 2)
            odd += binomial(s, a) * std::pow(2.0 / 3.0, static_cast<double>(a)) * std::pow(1.0 / 3.0, static_cast<double>(s - a));
        total += overlap * odd;
    }
    return total;
}

double klocal_threshold(size_t n, size_t k, double eps) {
    if (k == 0) throw std::invalid_argument("klocal_threshold: k must be positive");
    return std::pow(3.0, 0.75) / std::sqrt(2.0) * std::pow(eps, 0.25) *
           std::pow(static_cast<double>(n) / static_cast<double>(k * k), 0.75);
}

double expected_claws(size_t n, double p) { return binomial(n, 4) * 4.0 * std::pow(p, 3) * std::pow(1.0 - p, 3); }

GnpBounds gnp_bounds(size_t n, double p) {
    GnpBounds b;
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("gnp_bounds: p must lie in (0, 1)");
    double q = 1.0 - p;
    b.lower = std::clamp((1.0 - expected_claws(n, p)) * std::pow(q, 2.0 * static_cast<double>(n)), 0.0, 1.0);
    if (n < 4) {
        b.upper = 1.0;
        return b;
    }
    double r = static_cast<double>(n - 4);
    double denom = binomial(n - 4, 4) + 4.0 * binomial(n - 4, 3) + 1.5 * binomial(n - 4, 2) / (p * q) +
                   r / 4.0 * (3.0 / (p * p * q) + 1.0 / (q * q * q)) + 1.0 / (4.0 * p * p * p * q * q * q);
    b.upper = std::clamp(1.0 - binomial(n, 4) / denom, 0.0, 1.0);
    return b;
}

CollapseMode parse_collapse_mode(const std::string &text) {
    if (text == "twins") return CollapseMode::Twins;
    if (text == "full") return CollapseMode::Full;
    throw std::invalid_argument("collapse mode must be 'twins' or 'full', got '" + text + "'");
}

const char *collapse_mode_name(CollapseMode m) { return m == CollapseMode::Twins ? "twins" : "full"; }

InstanceOutcome evaluate_instance(const Graph &g, CollapseMode mode, uint64_t budget) {
    InstanceOutcome out;
    ScfVerdict before = scf_verdict(g, budget);
    CollapseResult c = mode == CollapseMode::Twins ? collapse_twins(g) : collapse_full(g);
    ScfVerdict after = scf_verdict(c.reduced, budget);
    out.scf_before = before.is_scf;
    out.scf_after = after.is_scf;
    out.flagged = before.budget_exceeded || after.budget_exceeded;
    out.delta_xi = c.delta_xi;
    return out;
}

double admissible_cells(const LatticeGeometry &geo, size_t alphabet_size, size_t k) {
    size_t e = geo.edges.size();
    size_t mandatory = static_cast<size_t>(std::count_if(geo.edges.begin(), geo.edges.end(), [](const auto &ed) { return ed.mandatory; }));
    double total = 0.0;
    for (size_t j = 0; j <= mandatory; j++) {
        double term = binomial(mandatory, j) * binomial((e - j) * alphabet_size, k);
        total += j % 2 ? -term : term;
    }
    return total;
}

double admissible_probability(const LatticeGeometry &geo, size_t alphabet_size, double p) {
    size_t m = geo.edges.size() * alphabet_size;
    double total = 0.0;
    for (size_t k = 0; k <= m; k++)
        total += admissible_cells(geo, alphabet_size, k) * std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
    return total;
}

namespace {

// ΔΞ sums are accumulated in fixed point so that the total does not depend on summation order.
constexpr double kXiScale = 1099511627776.0;  // 2^40

struct Partial {
    std::vector<uint64_t> cells, before, after, flagged;
    std::vector<unsigned __int128> xi;
    explicit Partial(size_t m) : cells(m + 1), before(m + 1), after(m + 1), flagged(m + 1), xi(m + 1) {}
};

}  // namespace

ExactLatticeCounts enumerate_lattice(const LatticeGeometry &geo, const std::vector<int> &alphabet, const Tiling &t, CollapseMode mode,
                                     uint64_t budget, size_t jobs) {
    check_cell_width(geo, alphabet);
    check_tiling(geo, t);
    size_t na = alphabet.size(), ne = geo.edges.size(), m = ne * na;
    if (m > 48) throw std::invalid_argument("enumerate_lattice: cell too large");
    // Mixed-radix enumeration over per-edge subsets; mandatory edges skip the empty subset.
    std::vector<uint64_t> radix(ne);
    uint64_t total = 1;
    for (size_t e = 0; e < ne; e++) {
        radix[e] = (uint64_t{1} << na) - (geo.edges[e].mandatory ? 1 : 0);
        total *= radix[e];
    }
    constexpr uint64_t kChunk = 1024;
    uint64_t chunks = (total + kChunk - 1) / kChunk;
    std::atomic<uint64_t> next{0};
    std::vector<Partial> partials(std::max<size_t>(jobs, 1), Partial(m));
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&](size_t w) {
        try {
            Partial &part = partials[w];
            for (uint64_t c = next++; c < chunks; c = next++) {
                for (uint64_t i = c * kChunk; i < std::min(total, (c + 1) * kChunk); i++) {
                    uint64_t rest = i;
                    CellMask cell = 0;
                    for (size_t e = 0; e < ne; e++) {
                        uint64_t sub = rest % radix[e] + (geo.edges[e].mandatory ? 1 : 0);
                        rest /= radix[e];
                        cell |= sub << (e * na);
                    }
                    size_t k = static_cast<size_t>(std::popcount(cell));
                    InstanceOutcome o = evaluate_instance(lattice_graph(geo, alphabet, cell, t), mode, budget);
                    part.cells[k]++;
                    part.before[k] += o.scf_before;
                    part.after[k] += o.scf_after;
                    part.flagged[k] += o.flagged;
                    part.xi[k] += static_cast<unsigned __int128>(std::llround(o.delta_xi * kXiScale));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            next = chunks;
        }
    };
    if (jobs <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < jobs; w++) pool.emplace_back(work, w);
        for (auto &th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    ExactLatticeCounts out;
    out.edges = ne;
    out.alphabet_size = na;
    out.m = m;
    out.cells.assign(m + 1, 0);
    out.scf_before.assign(m + 1, 0);
    out.scf_after.assign(m + 1, 0);
    out.flagged.assign(m + 1, 0);
    out.delta_xi_sum.assign(m + 1, 0.0);
    for (size_t k = 0; k <= m; k++) {
        unsigned __int128 xi = 0;
        for (const auto &p : partials) {
            out.cells[k] += p.cells[k];
            out.scf_before[k] += p.before[k];
            out.scf_after[k] += p.after[k];
            out.flagged[k] += p.flagged[k];
            xi += p.xi[k];
        }
        out.delta_xi_sum[k] = static_cast<double>(xi) / kXiScale;
    }
    return out;
}

ExactPoint exact_point(const ExactLatticeCounts &c, double p) {
    ExactPoint pt;
    pt.p = p;
    double norm = 0.0;
    for (size_t k = 0; k <= c.m; k++) {
        double w = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(c.m - k));
        norm += static_cast<double>(c.cells[k]) * w;
        pt.p_scf_before += static_cast<double>(c.scf_before[k]) * w;
        pt.p_scf_after += static_cast<double>(c.scf_after[k]) * w;
        pt.delta_xi_mean += c.delta_xi_sum[k] * w;
    }
    if (norm > 0) {
        pt.p_scf_before /= norm;
        pt.p_scf_after /= norm;
        pt.delta_xi_mean /= norm;
    }
    pt.delta_p_scf = pt.p_scf_after - pt.p_scf_before;
    return pt;
}

}  // namespace twinscf
