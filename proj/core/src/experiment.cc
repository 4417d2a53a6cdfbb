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

#include "twinscf/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "twinscf/errors.h"

namespace twinscf {

namespace {

constexpr size_t kMaxExactBits = 24;

std::string fmt(const char *spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

uint64_t parse_u64(const std::string &v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("expected a non-negative integer, got '" + v + "'");
    return std::stoull(v);
}

double parse_double(const std::string &v) {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters in '" + v + "'");
    return x;
}

bool parse_bool(const std::string &v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected true or false, got '" + v + "'");
}

bool is_lattice(ModelKind m) { return m == ModelKind::Brick || m == ModelKind::SquareNuclei; }

const LatticeGeometry &geometry(ModelKind m) { return m == ModelKind::Brick ? brick_geometry() : square_nuclei_geometry(); }

std::string join_grid(const std::vector<double> &g) {
    std::string s;
    for (size_t i = 0; i < g.size(); i++) s += (i ? "," : "") + fmt("%.17g", g[i]);
    return s;
}

}  // namespace

const char *model_name(ModelKind m) {
    switch (m) {
        case ModelKind::Gnp: return "gnp";
        case ModelKind::Brick: return "brick";
        case ModelKind::SquareNuclei: return "square";
        case ModelKind::Majorana: return "majorana";
        case ModelKind::UniformPauli: return "pauli";
    }
    return "?";
}

std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        size_t a = text.find(':'), b = text.find(':', a + 1);
        double start = parse_double(text.substr(0, a)), stop = parse_double(text.substr(a + 1, b - a - 1));
        uint64_t steps = parse_u64(text.substr(b + 1));
        if (steps == 0) throw std::invalid_argument("grid needs at least one step");
        for (uint64_t i = 0; i < steps; i++)
            out.push_back(steps == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_double(trim(tok)));
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

void apply_config_entry(ExperimentConfig &cfg, const std::string &key, const std::string &value, size_t line) {
    try {
        if (key == "model") {
            if (value == "gnp") cfg.model = ModelKind::Gnp;
            else if (value == "brick") cfg.model = ModelKind::Brick;
            else if (value == "square") cfg.model = ModelKind::SquareNuclei;
            else if (value == "majorana") cfg.model = ModelKind::Majorana;
            else if (value == "pauli") cfg.model = ModelKind::UniformPauli;
            else throw std::invalid_argument("unknown model '" + value + "'");
        } else if (key == "n") {
            cfg.n = parse_u64(value);
        } else if (key == "k") {
            cfg.k = parse_u64(value);
        } else if (key == "p") {
            cfg.grid = parse_grid(value);
            cfg.count_mode = false;
        } else if (key == "count") {
            cfg.grid = parse_grid(value);
            cfg.count_mode = true;
        } else if (key == "samples") {
            cfg.samples = parse_u64(value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value);
            cfg.has_seed = true;
        } else if (key == "tiling") {
            cfg.tiling = parse_tiling(value);
        } else if (key == "alphabet") {
            cfg.alphabet = parse_alphabet(value);
        } else if (key == "collapse") {
            cfg.collapse = parse_collapse_mode(value);
        } else if (key == "budget") {
            cfg.budget = parse_u64(value);
        } else if (key == "exact") {
            cfg.exact_force = value == "force";
            cfg.exact = cfg.exact_force || parse_bool(value);
        } else if (key == "bounds") {
            cfg.bounds = parse_bool(value);
        } else {
            throw std::invalid_argument("unknown key '" + key + "'");
        }
    } catch (const std::invalid_argument &e) {
        throw ParseError(key + ": " + e.what(), line);
    } catch (const std::out_of_range &) {
        throw ParseError(key + ": value out of range", line);
    }
}

ExperimentConfig parse_config(const std::string &text) {
    std::vector<std::pair<size_t, std::string>> entries, manifest;
    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        lineno++;
        std::string line = trim(raw);
        if (line.rfind("#@", 0) == 0) {
            manifest.emplace_back(lineno, trim(line.substr(2)));
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        entries.emplace_back(lineno, line);
    }
    // A result file: only its manifest counts.
    if (!manifest.empty()) entries = std::move(manifest);
    ExperimentConfig cfg;
    for (const auto &[ln, line] : entries) {
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", ln);
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), ln);
    }
    return cfg;
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream o;
    o << "model=" << model_name(model) << '\n';
    if (!is_lattice(model)) o << "n=" << n << '\n';
    if (model == ModelKind::UniformPauli) o << "k=" << k << '\n';
    o << (count_mode ? "count=" : "p=") << join_grid(grid) << '\n';
    o << "samples=" << samples << '\n';
    if (has_seed) o << "seed=" << seed << '\n';
    if (is_lattice(model)) {
        o << "tiling=" << tiling.a << 'x' << tiling.b << '\n';
        o << "alphabet=" << format_alphabet(alphabet) << '\n';
        o << "exact=" << (exact_force ? "force" : exact ? "true" : "false") << '\n';
    }
    if (model == ModelKind::Gnp) o << "bounds=" << (bounds ? "true" : "false") << '\n';
    o << "collapse=" << collapse_mode_name(collapse) << '\n';
    o << "budget=" << budget << '\n';
    return o.str();
}

void validate_config(const ExperimentConfig &cfg) {
    auto fail = [](const std::string &m) { throw std::invalid_argument(m); };
    if (cfg.samples == 0) fail("samples must be positive");
    if (!cfg.has_seed) fail("a seed is required");
    if (cfg.grid.empty()) fail("empty p grid");
    if (cfg.count_mode && cfg.model != ModelKind::UniformPauli) fail("count grids are only available for the pauli model");
    for (double x : cfg.grid) {
        if (cfg.count_mode) {
            if (x < 0 || x != std::floor(x)) fail("counts must be non-negative integers");
        } else if (!(x >= 0 && x <= 1)) {
            fail("p must lie in [0, 1]");
        } else if (is_lattice(cfg.model) && x == 0) {
            fail("lattice models need p > 0");
        }
    }
    if (!is_lattice(cfg.model) && cfg.n == 0) fail("n must be positive");
    if (cfg.model == ModelKind::UniformPauli && cfg.k > cfg.n) fail("k exceeds n");
    if (cfg.model == ModelKind::Majorana && cfg.n > 16) fail("majorana models support at most 16 orbitals");
    if (is_lattice(cfg.model)) {
        const LatticeGeometry &geo = geometry(cfg.model);
        if (geo.edges.size() * cfg.alphabet.size() > 64) fail("unit cell too large");
        if (!tiling_is_wrap_free(geo, cfg.tiling))
            fail("tiling " + std::to_string(cfg.tiling.a) + "x" + std::to_string(cfg.tiling.b) + " lets neighborhoods wrap around the torus");
        if (cfg.exact && !cfg.exact_force && geo.edges.size() * cfg.alphabet.size() > kMaxExactBits)
            fail("exact enumeration over more than 2^24 cells; use exact=force to run it anyway");
    } else if (cfg.exact) {
        fail("exact overlays are only available for lattice models");
    }
}

size_t ExperimentResult::flagged() const {
    size_t f = 0;
    for (const auto &r : records) f += r.flagged;
    return f;
}

namespace {

struct Draw {
    Graph graph;
    std::optional<CellMask> cell;
};

Draw draw(const ExperimentConfig &cfg, size_t point, size_t sample, bool graph_for_cell) {
    Rng rng(substream_seed(substream_seed(cfg.seed, point), sample));
    double x = cfg.grid[point];
    Draw d;
    switch (cfg.model) {
        case ModelKind::Gnp:
            d.graph = sample_gnp(cfg.n, x, rng);
            break;
        case ModelKind::Brick:
        case ModelKind::SquareNuclei: {
            const LatticeGeometry &geo = geometry(cfg.model);
            d.cell = sample_cell(geo, cfg.alphabet, x, rng);
            if (graph_for_cell) d.graph = lattice_graph(geo, cfg.alphabet, *d.cell, cfg.tiling);
            break;
        }
        case ModelKind::Majorana:
            d.graph = build_frustration_graph(sample_majorana(cfg.n, x, rng)).graph;
            break;
        case ModelKind::UniformPauli: {
            if (cfg.count_mode && x == 0) {
                d.graph = Graph(0);
                break;
            }
            Hamiltonian h = cfg.count_mode ? sample_uniform_pauli(cfg.n, cfg.k, 0.0, static_cast<size_t>(x), rng)
                                           : sample_uniform_pauli(cfg.n, cfg.k, x, 0, rng);
            d.graph = build_frustration_graph(h).graph;
            break;
        }
    }
    return d;
}

}  // namespace

Graph experiment_sample(const ExperimentConfig &cfg, size_t point, size_t sample) { return draw(cfg, point, sample, true).graph; }

ExperimentResult run_experiment(const ExperimentConfig &cfg, size_t jobs) {
    validate_config(cfg);
    jobs = std::max<size_t>(jobs, 1);
    ExperimentResult res;
    res.config = cfg;

    std::optional<ExactLatticeCounts> counts;
    if (cfg.exact) counts = enumerate_lattice(geometry(cfg.model), cfg.alphabet, cfg.tiling, cfg.collapse, cfg.budget, jobs);

    // Lattice graphs depend only on the cell, so each worker caches outcomes by cell.
    constexpr size_t kMemoLimit = size_t{1} << 20;
    std::vector<std::unordered_map<CellMask, InstanceOutcome>> memo(jobs);
    bool lattice = is_lattice(cfg.model);

    for (size_t i = 0; i < cfg.grid.size(); i++) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<InstanceOutcome> out(cfg.samples);
        std::atomic<size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        auto work = [&](size_t w) {
            try {
                for (size_t j = next++; j < cfg.samples; j = next++) {
                    if (!lattice) {
                        out[j] = evaluate_instance(draw(cfg, i, j, true).graph, cfg.collapse, cfg.budget);
                        continue;
                    }
                    CellMask cell = *draw(cfg, i, j, false).cell;
                    auto &m = memo[w];
                    auto it = m.find(cell);
                    if (it == m.end()) {
                        if (m.size() >= kMemoLimit) m.clear();
                        Graph g = lattice_graph(geometry(cfg.model), cfg.alphabet, cell, cfg.tiling);
                        it = m.emplace(cell, evaluate_instance(g, cfg.collapse, cfg.budget)).first;
                    }
                    out[j] = it->second;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next = cfg.samples;
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (size_t w = 0; w < jobs; w++) pool.emplace_back(work, w);
            for (auto &th : pool) th.join();
        }
        if (error) std::rethrow_exception(error);

        ExperimentRecord r;
        r.model = model_name(cfg.model);
        r.n = lattice ? geometry(cfg.model).qubits(cfg.tiling) : cfg.n;
        r.p = cfg.grid[i];
        r.samples = cfg.samples;
        r.seed = cfg.seed;
        size_t before = 0, after = 0;
        double xi = 0;
        for (const auto &o : out) {
            before += o.scf_before;
            after += o.scf_after;
            r.flagged += o.flagged;
            xi += o.delta_xi;
        }
        double s = static_cast<double>(cfg.samples);
        r.p_scf_before = static_cast<double>(before) / s;
        r.p_scf_after = static_cast<double>(after) / s;
        r.delta_p_scf = r.p_scf_after - r.p_scf_before;
        r.delta_xi_mean = xi / s;
        if (cfg.model == ModelKind::Gnp && cfg.bounds && r.p > 0 && r.p < 1) r.bounds = gnp_bounds(cfg.n, r.p);
        if (counts) {
            ExactPoint pt = exact_point(*counts, r.p);
            r.exact = ExactColumns{pt.p_scf_before, pt.p_scf_after, pt.delta_p_scf, pt.delta_xi_mean};
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.records.push_back(std::move(r));
    }
    return res;
}

std::string format_csv(const ExperimentResult &r, const std::string &version) {
    std::ostringstream o;
    o << "# twinscf " << version << '\n';
    std::istringstream cfg(r.config.to_text());
    for (std::string line; std::getline(cfg, line);) o << "#@ " << line << '\n';
    bool bounds = std::any_of(r.records.begin(), r.records.end(), [](const auto &x) { return x.bounds.has_value(); });
    bool exact = std::any_of(r.records.begin(), r.records.end(), [](const auto &x) { return x.exact.has_value(); });
    o << "model,n,p,samples,p_scf_before,p_scf_after,delta_p_scf,delta_xi_mean,seed,flagged";
    if (bounds) o << ",bound_lower,bound_upper";
    if (exact) o << ",exact_p_scf_before,exact_p_scf_after,exact_delta_p_scf,exact_delta_xi_mean";
    o << '\n';
    for (const auto &x : r.records) {
        o << x.model << ',' << x.n << ',' << fmt("%.10g", x.p) << ',' << x.samples << ',' << fmt("%.6f", x.p_scf_before) << ','
          << fmt("%.6f", x.p_scf_after) << ',' << fmt("%.6f", x.delta_p_scf) << ',' << fmt("%.6f", x.delta_xi_mean) << ',' << x.seed << ','
          << x.flagged;
        if (bounds) {
            if (x.bounds) o << ',' << fmt("%.8g", x.bounds->lower) << ',' << fmt("%.8g", x.bounds->upper);
            else o << ",,";
        }
        if (exact) {
            o << ',' << fmt("%.8f", x.exact->p_scf_before) << ',' << fmt("%.8f", x.exact->p_scf_after) << ','
              << fmt("%.8f", x.exact->delta_p_scf) << ',' << fmt("%.8f", x.exact->delta_xi_mean);
        }
        o << '\n';
    }
    return o.str();
}

std::string format_svg(const ExperimentResult &r) {
    const double width = 640, height = 400, left = 60, right = 150, top = 20, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;
    double xmin = r.config.grid.front(), xmax = r.config.grid.front();
    for (double x : r.config.grid) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    if (xmax == xmin) xmax = xmin + 1;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (1 - std::clamp(y, 0.0, 1.0)) * ph; };

    struct Series {
        std::string label, color, dash;
        std::vector<double> y;
    };
    std::vector<Series> series = {{"p_SCF before", "#1f77b4", "", {}},
                                  {"p_SCF after", "#ff7f0e", "", {}},
                                  {"delta p_SCF", "#2ca02c", "", {}},
                                  {"delta Xi", "#7f7f7f", "6,4", {}}};
    for (const auto &x : r.records) {
        series[0].y.push_back(x.p_scf_before);
        series[1].y.push_back(x.p_scf_after);
        series[2].y.push_back(x.delta_p_scf);
        series[3].y.push_back(x.delta_xi_mean);
    }
    if (!r.records.empty() && r.records.front().exact) {
        series.push_back({"exact after", "#000000", "2,3", {}});
        series.push_back({"exact delta", "#006400", "2,3", {}});
        for (const auto &x : r.records) {
            series[4].y.push_back(x.exact->p_scf_after);
            series[5].y.push_back(x.exact->delta_p_scf);
        }
    }
    bool bounds = std::all_of(r.records.begin(), r.records.end(), [](const auto &x) { return x.bounds.has_value(); });
    if (bounds && !r.records.empty()) {
        series.push_back({"upper bound", "#d62728", "8,3,2,3", {}});
        for (const auto &x : r.records) series.back().y.push_back(x.bounds->upper);
    }

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; t++) {
        double y = t / 4.0, x = xmin + (xmax - xmin) * t / 4.0;
        o << "<text x=\"" << left - 8 << "\" y=\"" << fmt("%.2f", sy(y) + 4) << "\" text-anchor=\"end\">" << fmt("%.2f", y) << "</text>\n";
        o << "<text x=\"" << fmt("%.2f", sx(x)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << fmt("%.3g", x) << "</text>\n";
    }
    o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
      << (r.config.count_mode ? "strings" : "p") << " (" << model_name(r.config.model) << ")</text>\n";
    for (size_t s = 0; s < series.size(); s++) {
        const auto &se = series[s];
        o << "<polyline fill=\"none\" stroke=\"" << se.color << "\" stroke-width=\"1.5\"";
        if (!se.dash.empty()) o << " stroke-dasharray=\"" << se.dash << "\"";
        o << " points=\"";
        for (size_t i = 0; i < se.y.size(); i++) o << (i ? " " : "") << fmt("%.2f", sx(r.records[i].p)) << ',' << fmt("%.2f", sy(se.y[i]));
        o << "\"/>\n";
        double ly = top + 10 + 18 * static_cast<double>(s);
        o << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35 << "\" y2=\"" << ly << "\" stroke=\"" << se.color
          << "\" stroke-width=\"1.5\"";
        if (!se.dash.empty()) o << " stroke-dasharray=\"" << se.dash << "\"";
        o << "/>\n<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">" << se.label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace twinscf
