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

#include <CLI11.hpp>

#include <iostream>

#include "commands.h"
#include "twinscf/errors.h"

using namespace twinscf;
using namespace twinscf::cli;

namespace {

void add_blockdiag_options(CLI::App *c, VerifyBlockdiagOptions &o) {
    c->add_option("--random", o.random, "number of random Hamiltonians")->capture_default_str();
    c->add_option("--qubits", o.qubits, "maximum qubit count")->capture_default_str();
    c->add_option("--terms", o.terms, "maximum term count")->capture_default_str();
    c->add_option("--seed", o.seed, "seed for the random Hamiltonians")->capture_default_str();
    c->add_option("--file", o.file, "verify this Hamiltonian file instead");
    c->add_flag("--json", o.json, "JSON report");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Twin collapse, SCF verdicts and block diagonalization for frustration graphs"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    ExperimentOptions eo;
    std::string eformat = "csv";
    auto *exp = app.add_subcommand("experiment", "run a Monte-Carlo experiment from a key=value config");
    exp->add_option("config", eo.config_path, "config file (a previous CSV output also works)");
    exp->add_option("--set", eo.overrides, "override a config entry, key=value");
    exp->add_option("--seed", eo.seed, "master seed");
    exp->add_option("--samples", eo.samples, "samples per grid point");
    exp->add_option("--collapse", eo.collapse, "twins or full")->check(CLI::IsMember({"twins", "full"}));
    exp->add_option("--budget", eo.budget, "simplicial-search node budget");
    exp->add_option("--jobs", eo.jobs, "worker threads")->capture_default_str();
    exp->add_option("--out", eo.out, "output file (default stdout)");
    exp->add_option("--format", eformat, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    exp->add_option("--svg", eo.svg, "also write an SVG chart");

    AnalyzeOptions ao;
    std::string acollapse = "full", aformat = "text";
    auto *ana = app.add_subcommand("analyze", "collapse and SCF report for a graph or Hamiltonian file");
    ana->add_option("path", ao.path, "graph (g n m) or Hamiltonian file")->required();
    ana->add_option("--collapse", acollapse, "twins or full")->check(CLI::IsMember({"twins", "full"}))->capture_default_str();
    ana->add_option("--budget", ao.budget, "simplicial-search node budget")->capture_default_str();
    ana->add_option("--trace", ao.trace_out, "write the collapse trace here");
    ana->add_option("--format", aformat, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    auto *ver = app.add_subcommand("verify", "numerical self-checks");
    ver->require_subcommand(1);
    VerifyBlockdiagOptions vb;
    add_blockdiag_options(ver->add_subcommand("blockdiag", "projectors, rotations and spectra of the twin block decomposition"), vb);
    VerifySvnOptions vs;
    auto *vsvn = ver->add_subcommand("svn", "Pauli/Majorana isomorphism and its intertwiner");
    vsvn->add_option("--qubits", vs.qubits, "qubit count m (Majorana side has 2m modes)")->capture_default_str();
    vsvn->add_option("--seed", vs.seed)->capture_default_str();
    vsvn->add_flag("--json", vs.json);
    VerifyWeylOptions vw;
    auto *vweyl = ver->add_subcommand("weyl", "Weyl-Heisenberg representation properties");
    vweyl->add_option("--d", vw.d, "prime dimension")->capture_default_str();
    vweyl->add_option("--m", vw.m, "number of qudits")->capture_default_str();
    vweyl->add_option("--seed", vw.seed)->capture_default_str();
    vweyl->add_flag("--json", vw.json);

    VerifyBlockdiagOptions vb2;
    add_blockdiag_options(app.add_subcommand("verify-blockdiag", "same as 'verify blockdiag'"), vb2);

    SvnMapOptions so;
    auto *svn = app.add_subcommand("svn-map", "print the Pauli -> Majorana symplectic map");
    svn->add_option("--qubits", so.qubits)->capture_default_str();
    svn->add_flag("--verify", so.verify, "also run the dense intertwiner check");
    svn->add_option("--seed", so.seed)->capture_default_str();

    ExactOptions xo;
    std::string xcollapse = "full", xformat = "csv";
    auto add_exact = [&](const char *name, const char *help) {
        auto *c = app.add_subcommand(name, help);
        c->add_option("--alphabet", xo.alphabet, "two-local Paulis per edge, e.g. XX,YZ or all")->capture_default_str();
        c->add_option("--p", xo.grid, "p grid, start:stop:steps or a list")->capture_default_str();
        c->add_option("--tiling", xo.tiling)->capture_default_str();
        c->add_option("--collapse", xcollapse)->check(CLI::IsMember({"twins", "full"}))->capture_default_str();
        c->add_option("--budget", xo.budget)->capture_default_str();
        c->add_option("--jobs", xo.jobs)->capture_default_str();
        c->add_flag("--force", xo.force, "allow more than 2^24 cells");
        c->add_option("--out", xo.out);
        c->add_option("--format", xformat)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        return c;
    };
    auto *xb = add_exact("exact-brick", "exact SCF probabilities for the brick lattice");
    auto *xs = add_exact("exact-square", "exact SCF probabilities for the square lattice with nuclei");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    return run_guarded(
        [&]() -> int {
            if (exp->parsed()) {
                eo.format = parse_format(eformat);
                return cmd_experiment(eo, std::cout, std::cerr);
            }
            if (ana->parsed()) {
                ao.collapse = parse_collapse_mode(acollapse);
                ao.format = parse_format(aformat);
                return cmd_analyze(ao, std::cout, std::cerr);
            }
            if (ver->parsed()) {
                if (ver->got_subcommand("blockdiag")) return cmd_verify_blockdiag(vb, std::cout, std::cerr);
                if (ver->got_subcommand("svn")) return cmd_verify_svn(vs, std::cout, std::cerr);
                return cmd_verify_weyl(vw, std::cout, std::cerr);
            }
            if (app.got_subcommand("verify-blockdiag")) return cmd_verify_blockdiag(vb2, std::cout, std::cerr);
            if (svn->parsed()) return cmd_svn_map(so, std::cout, std::cerr);
            if (xb->parsed() || xs->parsed()) {
                xo.model = xb->parsed() ? ModelKind::Brick : ModelKind::SquareNuclei;
                xo.collapse = parse_collapse_mode(xcollapse);
                xo.format = parse_format(xformat);
                return cmd_exact(xo, std::cout, std::cerr);
            }
            return kUsage;
        },
        std::cerr);
}
