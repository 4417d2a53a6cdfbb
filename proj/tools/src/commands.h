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

#ifndef TWINSCF_TOOLS_COMMANDS_H
#define TWINSCF_TOOLS_COMMANDS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twinscf/experiment.h"

namespace twinscf::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kVerification = 3, kBudget = 4 };

enum class Format { Csv, Json, Text };
Format parse_format(const std::string &s);

struct ExperimentOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<uint64_t> seed;
    std::optional<size_t> samples;
    std::optional<std::string> collapse;
    std::optional<uint64_t> budget;
    size_t jobs = 1;
    std::string out;
    Format format = Format::Csv;
    std::string svg;
};

/// Resolves the configuration (file, then --set overrides, then flags) without running it.
ExperimentConfig resolve_experiment(const ExperimentOptions &o);
int cmd_experiment(const ExperimentOptions &o, std::ostream &out, std::ostream &err);
std::string experiment_json(const ExperimentResult &r);

struct AnalyzeOptions {
    std::string path;
    CollapseMode collapse = CollapseMode::Full;
    uint64_t budget = kDefaultSimplicialBudget;
    std::string trace_out;
    Format format = Format::Text;
};
int cmd_analyze(const AnalyzeOptions &o, std::ostream &out, std::ostream &err);

struct VerifyBlockdiagOptions {
    size_t random = 200;
    size_t qubits = 6;
    size_t terms = 12;
    uint64_t seed = 1;
    std::string file;
    bool json = false;
};
int cmd_verify_blockdiag(const VerifyBlockdiagOptions &o, std::ostream &out, std::ostream &err);

struct VerifySvnOptions {
    size_t qubits = 2;
    uint64_t seed = 1;
    bool json = false;
};
int cmd_verify_svn(const VerifySvnOptions &o, std::ostream &out, std::ostream &err);

struct VerifyWeylOptions {
    int64_t d = 2;
    size_t m = 1;
    uint64_t seed = 1;
    bool json = false;
};
int cmd_verify_weyl(const VerifyWeylOptions &o, std::ostream &out, std::ostream &err);

struct SvnMapOptions {
    size_t qubits = 2;
    bool verify = false;
    uint64_t seed = 1;
};
int cmd_svn_map(const SvnMapOptions &o, std::ostream &out, std::ostream &err);

struct ExactOptions {
    ModelKind model = ModelKind::Brick;
    std::string alphabet = "XX,YZ,ZY";
    std::string grid = "0.05:1:20";
    std::string tiling = "4x4";
    CollapseMode collapse = CollapseMode::Full;
    uint64_t budget = kDefaultSimplicialBudget;
    size_t jobs = 1;
    bool force = false;
    std::string out;
    Format format = Format::Csv;
};
int cmd_exact(const ExactOptions &o, std::ostream &out, std::ostream &err);

/// Runs f, mapping ParseError to kParse, VerificationError to kVerification, BudgetExceeded to
/// kBudget and any other std::exception to kUsage. The message goes to err.
int run_guarded(const std::function<int()> &f, std::ostream &err);

/// Writes `text` to `path`, or to `out` when path is empty or "-".
void emit(const std::string &text, const std::string &path, std::ostream &out);

const char *version();

}  // namespace twinscf::cli

#endif
