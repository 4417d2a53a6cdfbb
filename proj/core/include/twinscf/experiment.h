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

#ifndef TWINSCF_EXPERIMENT_H
#define TWINSCF_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twinscf/models.h"

namespace twinscf {

enum class ModelKind { Gnp, Brick, SquareNuclei, Majorana, UniformPauli };

const char *model_name(ModelKind m);

/// A resolved experiment. Text form is one `key=value` per line, see parse_config.
struct ExperimentConfig {
    ModelKind model = ModelKind::Gnp;
    /// Vertices (gnp), orbitals (majorana) or qubits (pauli). Unused for lattices.
    size_t n = 20;
    /// Pauli locality; 0 draws from all non-identity strings.
    size_t k = 0;
    /// Grid of p values, or of string counts when `count_mode` is set (pauli only).
    std::vector<double> grid;
    bool count_mode = false;
    size_t samples = 1000;
    uint64_t seed = 0;
    bool has_seed = false;
    Tiling tiling;
    std::vector<int> alphabet = full_alphabet();
    CollapseMode collapse = CollapseMode::Full;
    uint64_t budget = kDefaultSimplicialBudget;
    /// Exact enumeration overlay for lattice models. Cells with more than 24 candidate terms
    /// are refused unless `exact_force` is set (`exact=force`).
    bool exact = false;
    bool exact_force = false;
    /// Analytic bound columns for gnp.
    bool bounds = true;

    /// Canonical key=value lines; parse_config(to_text()) reproduces the config.
    std::string to_text() const;
};

/// Parses key=value lines. Blank lines and `#` comments are skipped; `#@ key=value` lines are
/// read as entries so that a result file's manifest can be fed back in, in which case all other
/// lines of that file are ignored. Grids are `start:stop:steps` (inclusive, evenly spaced), a
/// comma list, or a single value. Throws ParseError.
ExperimentConfig parse_config(const std::string &text);
/// Applies one `key=value` override (same keys as the file format).
void apply_config_entry(ExperimentConfig &cfg, const std::string &key, const std::string &value, size_t line = 0);
/// Cross-field checks (samples > 0, seed present, grid ranges, tiling, enumeration size).
/// Throws std::invalid_argument.
void validate_config(const ExperimentConfig &cfg);

/// Throws std::invalid_argument; parse_config reports it as a ParseError with the line number.
std::vector<double> parse_grid(const std::string &text);

struct ExactColumns {
    double p_scf_before = 0, p_scf_after = 0, delta_p_scf = 0, delta_xi_mean = 0;
};

struct ExperimentRecord {
    std::string model;
    size_t n = 0;
    double p = 0;
    size_t samples = 0;
    double p_scf_before = 0, p_scf_after = 0, delta_p_scf = 0, delta_xi_mean = 0;
    uint64_t seed = 0;
    /// Samples whose simplicial search ran out of budget (counted as not SCF).
    size_t flagged = 0;
    std::optional<GnpBounds> bounds;
    std::optional<ExactColumns> exact;
    double wall_time = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRecord> records;
    size_t flagged() const;
};

/// Samples of grid point i use the generator seeded with
/// substream_seed(substream_seed(seed, i), j) for sample j, so results do not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig &cfg, size_t jobs = 1);

/// Draws the graph of sample j at grid point i; exposed for tests and benchmarks.
Graph experiment_sample(const ExperimentConfig &cfg, size_t point, size_t sample);

/// CSV with `#@` manifest lines, the header
/// `model,n,p,samples,p_scf_before,p_scf_after,delta_p_scf,delta_xi_mean,seed,flagged` and
/// bound or exact columns when present. Wall times are not included.
std::string format_csv(const ExperimentResult &r, const std::string &version);
/// Static line chart of the probability columns against p.
std::string format_svg(const ExperimentResult &r);

}  // namespace twinscf

#endif
