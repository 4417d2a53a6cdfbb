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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "twinscf/blockdiag.h"
#include "twinscf/collapse.h"
#include "twinscf/errors.h"
#include "twinscf/mod_decomp.h"
#include "twinscf/svn.h"

#ifndef TWINSCF_VERSION
#define TWINSCF_VERSION "unknown"
#endif

namespace twinscf::cli {

using json = nlohmann::ordered_json;

const char *version() { return TWINSCF_VERSION; }

Format parse_format(const std::string &s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "text") return Format::Text;
    throw std::invalid_argument("unknown format '" + s + "'");
}

int run_guarded(const std::function<int()> &f, std::ostream &err) {
    try {
        return f();
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const VerificationError &e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerification;
    } catch (const BudgetExceeded &e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

namespace {

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string set_text(const std::vector<size_t> &v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); i++) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// experiment

ExperimentConfig resolve_experiment(const ExperimentOptions &o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = parse_config(read_file(o.config_path));
    for (const auto &kv : o.overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + kv + "'");
        apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) apply_config_entry(cfg, "seed", std::to_string(*o.seed));
    if (o.samples) apply_config_entry(cfg, "samples", std::to_string(*o.samples));
    if (o.collapse) apply_config_entry(cfg, "collapse", *o.collapse);
    if (o.budget) apply_config_entry(cfg, "budget", std::to_string(*o.budget));
    return cfg;
}

std::string experiment_json(const ExperimentResult &r) {
    json j;
    j["version"] = version();
    json cfg = json::object();
    std::istringstream lines(r.config.to_text());
    for (std::string line; std::getline(lines, line);) {
        size_t eq = line.find('=');
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["config"] = cfg;
    json recs = json::array();
    for (const auto &x : r.records) {
        json e;
        e["model"] = x.model;
        e["n"] = x.n;
        e["p"] = x.p;
        e["samples"] = x.samples;
        e["p_scf_before"] = x.p_scf_before;
        e["p_scf_after"] = x.p_scf_after;
        e["delta_p_scf"] = x.delta_p_scf;
        e["delta_xi_mean"] = x.delta_xi_mean;
        e["seed"] = x.seed;
        e["flagged"] = x.flagged;
        if (x.bounds) e["bounds"] = {{"lower", x.bounds->lower}, {"upper", x.bounds->upper}};
        if (x.exact)
            e["exact"] = {{"p_scf_before", x.exact->p_scf_before},
                          {"p_scf_after", x.exact->p_scf_after},
                          {"delta_p_scf", x.exact->delta_p_scf},
                          {"delta_xi_mean", x.exact->delta_xi_mean}};
        recs.push_back(e);
    }
    j["records"] = recs;
    return j.dump(2) + "\n";
}

int cmd_experiment(const ExperimentOptions &o, std::ostream &out, std::ostream &err) {
    ExperimentConfig cfg = resolve_experiment(o);
    validate_config(cfg);
    ExperimentResult r = run_experiment(cfg, o.jobs);
    for (const auto &x : r.records) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "p=%.6g wall_time=%.3fs", x.p, x.wall_time);
        err << buf << (x.flagged ? " flagged=" + std::to_string(x.flagged) : "") << '\n';
    }
    emit(o.format == Format::Json ? experiment_json(r) : format_csv(r, version()), o.out, out);
    if (!o.svg.empty()) emit(format_svg(r), o.svg, out);
    if (r.flagged()) {
        err << "warning: " << r.flagged() << " samples exceeded the simplicial-search budget and were counted as not SCF\n";
        return kBudget;
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------
// analyze

namespace {

bool looks_like_graph(const std::string &text) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        line = line.substr(0, line.find('#'));
        std::istringstream ss(line);
        std::string tok;
        if (ss >> tok) return tok == "g";
    }
    return false;
}

json verdict_json(const ScfVerdict &v, const std::vector<size_t> &map) {
    json j;
    j["claw_free"] = v.claw_free;
    j["scf"] = v.is_scf;
    j["budget_exceeded"] = v.budget_exceeded;
    json w = json::array();
    for (const auto &c : v.witnesses) {
        if (!c) {
            w.push_back(nullptr);
            continue;
        }
        std::vector<size_t> ids;
        c->for_each([&](size_t x) { ids.push_back(map[x]); });
        w.push_back(ids);
    }
    j["witnesses"] = w;
    return j;
}

std::string verdict_text(const ScfVerdict &v, const std::vector<size_t> &map) {
    std::string s = v.is_scf ? "true" : "false";
    if (!v.claw_free) return s + " (claw)";
    if (v.budget_exceeded) return s + " (budget exceeded)";
    if (!v.is_scf) return s + " (no simplicial clique)";
    std::vector<std::string> parts;
    for (const auto &c : v.witnesses) {
        std::vector<size_t> ids;
        c->for_each([&](size_t x) { ids.push_back(map[x]); });
        parts.push_back(set_text(ids));
    }
    s += parts.size() == 1 ? "; witness " : "; witnesses ";
    for (size_t i = 0; i < parts.size(); i++) s += (i ? " " : "") + parts[i];
    return s;
}

}  // namespace

int cmd_analyze(const AnalyzeOptions &o, std::ostream &out, std::ostream &err) {
    std::string text = read_file(o.path);
    Graph g;
    json j;
    std::ostringstream rep;
    if (looks_like_graph(text)) {
        std::istringstream in(text);
        g = read_graph(in);
        j["input"] = "graph";
        rep << "input: graph with " << g.size() << " vertices, " << g.edge_count() << " edges\n";
    } else {
        std::istringstream in(text);
        Hamiltonian h = read_hamiltonian(in);
        g = build_frustration_graph(h).graph;
        bool maj = h.ctx().kind() == AlgebraKind::MajoranaModes;
        j["input"] = "hamiltonian";
        j["terms"] = h.size();
        j["algebra"] = maj ? "majorana" : "pauli";
        rep << "input: hamiltonian with " << h.size() << " terms on " << h.ctx().width() << (maj ? " modes" : " qubits") << "\n";
        rep << "frustration graph: " << g.size() << " vertices, " << g.edge_count() << " edges\n";
    }
    std::vector<size_t> identity(g.size());
    for (size_t i = 0; i < g.size(); i++) identity[i] = i;
    bool cograph = g.size() == 0 || is_cograph(decompose(g));
    CollapseResult c = o.collapse == CollapseMode::Twins ? collapse_twins(g) : collapse_full(g);
    ScfVerdict before = scf_verdict(g, o.budget);
    ScfVerdict after = scf_verdict(c.reduced, o.budget);
    size_t nf = 0, nt = 0, nl = 0;
    for (const auto &e : c.trace.events) (e.kind == EventKind::FalseMerge ? nf : e.kind == EventKind::TrueMerge ? nt : nl)++;

    j["vertices"] = g.size();
    j["edges"] = g.edge_count();
    j["isolated"] = isolated_vertices(g).count();
    j["cograph"] = cograph;
    j["collapse"] = collapse_mode_name(o.collapse);
    j["rounds"] = c.rounds;
    j["events"] = {{"false", nf}, {"true", nt}, {"line_module", nl}};
    j["reduced_vertices"] = c.reduced.size();
    j["surviving"] = c.vertex_map;
    j["delta_xi"] = c.delta_xi;
    j["scf_before"] = verdict_json(before, identity);
    j["scf_after"] = verdict_json(after, c.vertex_map);

    rep << "isolated vertices: " << isolated_vertices(g).count() << "\n";
    rep << "collapse (" << collapse_mode_name(o.collapse) << "): rounds " << c.rounds << "; events " << nf << " false, " << nt << " true, " << nl
        << " line-module\n";
    rep << "collapses to " << c.reduced.size() << (c.reduced.size() == 1 ? " vertex" : " vertices") << "; cograph: " << (cograph ? "true" : "false")
        << "\n";
    rep << "surviving vertices: " << set_text(c.vertex_map) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", c.delta_xi);
    rep << "delta_xi: " << buf << "\n";
    rep << "SCF before: " << verdict_text(before, identity) << "\n";
    rep << "SCF after: " << verdict_text(after, c.vertex_map) << "\n";

    if (!o.trace_out.empty()) emit(c.trace.to_text(), o.trace_out, out);
    out << (o.format == Format::Json ? j.dump(2) + "\n" : rep.str());
    if (before.budget_exceeded || after.budget_exceeded) {
        err << "simplicial-clique search exceeded the budget of " << o.budget << " nodes\n";
        return kBudget;
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------
// verify

namespace {

struct Residual {
    const char *name;
    double BlockDiagReport::*field;
};

constexpr Residual kResiduals[] = {
    {"completeness", &BlockDiagReport::completeness},
    {"orthogonality", &BlockDiagReport::orthogonality},
    {"idempotence", &BlockDiagReport::idempotence},
    {"commutation", &BlockDiagReport::commutation},
    {"rotated_commutation", &BlockDiagReport::rotated_commutation},
    {"reconstruction", &BlockDiagReport::reconstruction},
    {"beta", &BlockDiagReport::beta},
    {"spectrum", &BlockDiagReport::spectrum},
};

}  // namespace

int cmd_verify_blockdiag(const VerifyBlockdiagOptions &o, std::ostream &out, std::ostream &) {
    std::vector<Hamiltonian> cases;
    if (!o.file.empty()) {
        std::istringstream in(read_file(o.file));
        cases.push_back(read_hamiltonian(in));
    } else {
        if (o.qubits == 0 || o.qubits > kMaxDenseQubits) throw std::invalid_argument("--qubits must lie in 1.." + std::to_string(kMaxDenseQubits));
        if (o.terms == 0) throw std::invalid_argument("--terms must be positive");
        Rng rng(o.seed);
        for (size_t i = 0; i < o.random; i++) {
            size_t q = 1 + rng() % o.qubits;
            size_t cap = std::min<size_t>(o.terms, (size_t{1} << (2 * q)) - 1);
            size_t t = 1 + rng() % cap;
            cases.push_back(sample_uniform_pauli(q, 0, 0.0, t, rng));
        }
    }
    BlockDiagReport worst;
    size_t failures = 0, blocks = 0, non_generic = 0;
    std::string first_failure;
    for (size_t i = 0; i < cases.size(); i++) {
        BlockDiagReport r = verify_block_diagonalization(cases[i]);
        for (const auto &res : kResiduals) worst.*res.field = std::max(worst.*res.field, r.*res.field);
        blocks += r.blocks;
        non_generic += r.non_generic;
        if (!r.passed) {
            failures++;
            if (first_failure.empty()) first_failure = "case " + std::to_string(i) + ": " + r.failure + "\n" + write_hamiltonian(cases[i]);
        }
    }
    if (o.json) {
        json j;
        j["cases"] = cases.size();
        j["blocks"] = blocks;
        j["non_generic"] = non_generic;
        json res;
        for (const auto &r : kResiduals) res[r.name] = worst.*r.field;
        j["max_residuals"] = res;
        j["failures"] = failures;
        if (!first_failure.empty()) j["first_failure"] = first_failure;
        j["passed"] = failures == 0;
        out << j.dump(2) << "\n";
    } else {
        out << "blockdiag: " << cases.size() << " Hamiltonians, " << blocks << " blocks, " << non_generic << " non-generic\n";
        for (const auto &r : kResiduals) out << "  " << std::left << std::setw(20) << r.name << " max " << sci(worst.*r.field) << "\n";
        if (failures) out << "FAIL (" << failures << " cases): " << first_failure;
        else out << "PASS\n";
    }
    return failures ? kVerification : kOk;
}

int cmd_verify_svn(const VerifySvnOptions &o, std::ostream &out, std::ostream &) {
    if (o.qubits == 0 || o.qubits > 6) throw std::invalid_argument("--qubits must lie in 1..6");
    PauliMajoranaCheck c = verify_pauli_majorana(o.qubits, o.seed);
    if (o.json) {
        json j;
        j["qubits"] = o.qubits;
        j["M"] = c.phi.m.to_string();
        j["C"] = c.phi.c.to_string();
        j["symplectic"] = c.symplectic;
        j["unitarity"] = c.s.unitarity_residual;
        j["conjugation"] = c.s.conjugation_residual;
        j["spot"] = c.spot_residual;
        j["passed"] = c.passed;
        out << j.dump(2) << "\n";
    } else {
        out << "Pauli(" << o.qubits << ") -> Majorana(" << 2 * o.qubits << ")\nM =\n" << c.phi.m.to_string() << "\n";
        out << "M^T Omega_majorana M == Omega_pauli: " << (c.symplectic ? "yes" : "no") << "\n";
        out << "  unitarity    " << sci(c.s.unitarity_residual) << "\n";
        out << "  conjugation  " << sci(c.s.conjugation_residual) << "  (max |S mu(g) S^-1 - rho(phi(g))| on coset representatives)\n";
        out << "  spot checks  " << sci(c.spot_residual) << "\n";
        out << (c.passed ? "PASS\n" : "FAIL\n");
    }
    return c.passed ? kOk : kVerification;
}

int cmd_verify_weyl(const VerifyWeylOptions &o, std::ostream &out, std::ostream &) {
    WeylReport r = verify_weyl_properties(o.d, o.m, 1e-12, o.seed);
    if (o.json) {
        json j;
        j["d"] = o.d;
        j["m"] = o.m;
        j["unitarity"] = r.unitarity;
        j["traceless"] = r.traceless;
        j["identity_trace"] = r.identity_trace;
        j["hs_orthogonality"] = r.hs_orthogonality;
        j["character_sum"] = r.character_sum;
        j["homomorphism"] = r.homomorphism;
        j["passed"] = r.passed;
        if (!r.passed) j["failure"] = r.failure;
        out << j.dump(2) << "\n";
    } else {
        out << "Weyl representation d=" << o.d << " m=" << o.m << "\n";
        out << "  unitarity         " << sci(r.unitarity) << "\n";
        out << "  traceless         " << sci(r.traceless) << "\n";
        out << "  identity_trace    " << sci(r.identity_trace) << "\n";
        out << "  hs_orthogonality  " << sci(r.hs_orthogonality) << "\n";
        out << "  character_sum     " << sci(r.character_sum) << "\n";
        out << "  homomorphism      " << sci(r.homomorphism) << "\n";
        out << (r.passed ? "PASS\n" : "FAIL: " + r.failure + "\n");
    }
    return r.passed ? kOk : kVerification;
}

int cmd_svn_map(const SvnMapOptions &o, std::ostream &out, std::ostream &err) {
    if (o.qubits == 0 || o.qubits > 6) throw std::invalid_argument("--qubits must lie in 1..6");
    IsoMap phi = build_isomorphism(GroupSpec::pauli(o.qubits), GroupSpec::majorana(2 * o.qubits), pauli_majorana_m(o.qubits).inverse());
    out << "M (Pauli (z|x) -> Majorana modes) =\n" << phi.m.to_string() << "\n";
    out << "C =\n" << phi.c.to_string() << "\n";
    if (!o.verify) return kOk;
    return cmd_verify_svn(VerifySvnOptions{o.qubits, o.seed, false}, out, err);
}

// ---------------------------------------------------------------------------------------------
// exact enumeration

int cmd_exact(const ExactOptions &o, std::ostream &out, std::ostream &err) {
    ExperimentConfig cfg;
    cfg.model = o.model;
    cfg.alphabet = parse_alphabet(o.alphabet);
    cfg.grid = parse_grid(o.grid);
    cfg.tiling = parse_tiling(o.tiling);
    cfg.collapse = o.collapse;
    cfg.budget = o.budget;
    cfg.exact = true;
    cfg.exact_force = o.force;
    cfg.has_seed = true;
    validate_config(cfg);
    const LatticeGeometry &geo = o.model == ModelKind::Brick ? brick_geometry() : square_nuclei_geometry();
    ExactLatticeCounts c = enumerate_lattice(geo, cfg.alphabet, cfg.tiling, cfg.collapse, cfg.budget, o.jobs);
    uint64_t flagged = 0;
    for (auto f : c.flagged) flagged += f;

    std::ostringstream s;
    if (o.format == Format::Json) {
        json j;
        j["version"] = version();
        j["model"] = model_name(o.model);
        j["alphabet"] = format_alphabet(cfg.alphabet);
        j["tiling"] = o.tiling;
        j["collapse"] = collapse_mode_name(o.collapse);
        j["m"] = c.m;
        json ks = json::array();
        for (size_t k = 0; k <= c.m; k++)
            if (c.cells[k])
                ks.push_back({{"k", k}, {"cells", c.cells[k]}, {"scf_before", c.scf_before[k]}, {"scf_after", c.scf_after[k]}, {"flagged", c.flagged[k]}});
        j["counts"] = ks;
        json pts = json::array();
        for (double p : cfg.grid) {
            ExactPoint e = exact_point(c, p);
            pts.push_back({{"p", p},
                           {"p_scf_before", e.p_scf_before},
                           {"p_scf_after", e.p_scf_after},
                           {"delta_p_scf", e.delta_p_scf},
                           {"delta_xi_mean", e.delta_xi_mean}});
        }
        j["points"] = pts;
        s << j.dump(2) << "\n";
    } else {
        s << "# twinscf " << version() << "\n";
        s << "# model=" << model_name(o.model) << " alphabet=" << format_alphabet(cfg.alphabet) << " tiling=" << o.tiling
          << " collapse=" << collapse_mode_name(o.collapse) << " m=" << c.m << "\n";
        for (size_t k = 0; k <= c.m; k++)
            if (c.cells[k])
                s << "# k=" << k << " cells=" << c.cells[k] << " scf_before=" << c.scf_before[k] << " scf_after=" << c.scf_after[k] << "\n";
        s << "model,p,exact_p_scf_before,exact_p_scf_after,exact_delta_p_scf,exact_delta_xi_mean\n";
        for (double p : cfg.grid) {
            ExactPoint e = exact_point(c, p);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s,%.10g,%.8f,%.8f,%.8f,%.8f\n", model_name(o.model), p, e.p_scf_before, e.p_scf_after, e.delta_p_scf,
                          e.delta_xi_mean);
            s << buf;
        }
    }
    emit(s.str(), o.out, out);
    if (flagged) {
        err << "warning: " << flagged << " cells exceeded the simplicial-search budget\n";
        return kBudget;
    }
    return kOk;
}

}  // namespace twinscf::cli
