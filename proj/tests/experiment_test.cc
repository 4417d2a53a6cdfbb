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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "commands.h"
#include "twinscf/errors.h"

namespace twinscf {
namespace {

ExperimentConfig small_gnp() {
    ExperimentConfig c = parse_config("model=gnp\nn=12\np=0.05:0.5:4\nsamples=60\nseed=9\n");
    return c;
}

TEST(Experiment, ParseGrid) {
    EXPECT_EQ(parse_grid("0.5"), std::vector<double>{0.5});
    EXPECT_EQ(parse_grid("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
    auto g = parse_grid("0:1:5");
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g[2], 0.5);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_THROW(parse_grid("0:1:x"), std::invalid_argument);
    EXPECT_THROW(parse_grid(""), std::invalid_argument);
    EXPECT_THROW(parse_config("p=0:1:x\n"), ParseError);
}

TEST(Experiment, ConfigRoundTrip) {
    ExperimentConfig c = parse_config(
        "# comment\nmodel=brick\ntiling=4x4\nalphabet=XX,YZ,ZY\np=0.1,0.2\nsamples=5\nseed=3\ncollapse=twins\nexact=true\n");
    EXPECT_EQ(c.model, ModelKind::Brick);
    EXPECT_EQ(c.alphabet.size(), 3u);
    EXPECT_EQ(c.collapse, CollapseMode::Twins);
    EXPECT_TRUE(c.exact);
    ExperimentConfig d = parse_config(c.to_text());
    EXPECT_EQ(d.to_text(), c.to_text());
    EXPECT_THROW(parse_config("model=torus\n"), ParseError);
    EXPECT_THROW(parse_config("colour=red\n"), ParseError);
    EXPECT_THROW(parse_config("samples\n"), ParseError);
}

TEST(Experiment, ManifestLinesTakePrecedence) {
    ExperimentConfig c = parse_config("model=gnp\nseed=1\n#@ model=majorana\n#@ n=2\n#@ p=1\n#@ seed=4\n#@ samples=3\n");
    EXPECT_EQ(c.model, ModelKind::Majorana);
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.samples, 3u);
}

TEST(Experiment, Validation) {
    ExperimentConfig c = small_gnp();
    EXPECT_NO_THROW(validate_config(c));
    ExperimentConfig zero = c;
    zero.samples = 0;
    EXPECT_THROW(validate_config(zero), std::invalid_argument);
    ExperimentConfig noseed = parse_config("model=gnp\nn=5\np=0.1\nsamples=2\n");
    EXPECT_THROW(validate_config(noseed), std::invalid_argument);
    ExperimentConfig badp = c;
    badp.grid = {1.5};
    EXPECT_THROW(validate_config(badp), std::invalid_argument);
    ExperimentConfig big = parse_config("model=brick\ntiling=4x4\np=0.1\nsamples=2\nseed=1\nexact=true\n");
    EXPECT_THROW(validate_config(big), std::invalid_argument);
    ExperimentConfig wrap = parse_config("model=brick\ntiling=1x1\np=0.1\nsamples=2\nseed=1\n");
    EXPECT_THROW(validate_config(wrap), std::invalid_argument);
}

TEST(Experiment, JobsDoNotChangeResults) {
    ExperimentConfig c = small_gnp();
    std::string a = format_csv(run_experiment(c, 1), "t"), b = format_csv(run_experiment(c, 4), "t");
    EXPECT_EQ(a, b);
    EXPECT_EQ(format_csv(run_experiment(parse_config(a), 3), "t"), a);
}

TEST(Experiment, RecordsAreConsistent) {
    ExperimentResult r = run_experiment(small_gnp(), 1);
    ASSERT_EQ(r.records.size(), 4u);
    for (const auto &rec : r.records) {
        EXPECT_EQ(rec.samples, 60u);
        EXPECT_GE(rec.p_scf_after, rec.p_scf_before);
        EXPECT_NEAR(rec.delta_p_scf, rec.p_scf_after - rec.p_scf_before, 1e-12);
        ASSERT_TRUE(rec.bounds.has_value());
    }
    // Sample graphs are reproducible from (seed, point, sample) alone.
    EXPECT_EQ(experiment_sample(small_gnp(), 2, 17), experiment_sample(small_gnp(), 2, 17));
}

TEST(Experiment, ExactColumnsForReducedBrick) {
    ExperimentConfig c = parse_config("model=brick\ntiling=4x4\nalphabet=XX,YZ\np=0.3\nsamples=200\nseed=2\nexact=true\n");
    ExperimentResult r = run_experiment(c, 2);
    ASSERT_TRUE(r.records[0].exact.has_value());
    const ExactColumns &e = *r.records[0].exact;
    double sigma = std::sqrt(e.p_scf_before * (1 - e.p_scf_before) / 200);
    EXPECT_LE(std::abs(r.records[0].p_scf_before - e.p_scf_before), 4 * sigma + 1e-9);
    std::string csv = format_csv(r, "t");
    EXPECT_NE(csv.find("exact_p_scf_before"), std::string::npos);
}

TEST(Experiment, SvgHasSeries) {
    std::string svg = format_svg(run_experiment(small_gnp(), 1));
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("polyline"), std::string::npos);
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() / ("twinscf_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string write(const std::string &name, const std::string &text) {
        std::string p = (dir_ / name).string();
        std::ofstream(p) << text;
        return p;
    }
    std::filesystem::path dir_;
};

int guarded(const std::function<int(std::ostream &, std::ostream &)> &f) {
    std::ostringstream out, err;
    return cli::run_guarded([&] { return f(out, err); }, err);
}

TEST_F(CliTest, ExperimentExitCodes) {
    cli::ExperimentOptions o;
    o.config_path = write("g.conf", "model=gnp\nn=8\np=0.2\nsamples=20\nseed=5\n");
    o.out = (dir_ / "out.csv").string();
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_experiment(o, out, err), cli::kOk);
    EXPECT_TRUE(std::filesystem::exists(o.out));

    cli::ExperimentOptions zero = o;
    zero.samples = 0;
    zero.out = (dir_ / "zero.csv").string();
    EXPECT_EQ(guarded([&](auto &o1, auto &e1) { return cli::cmd_experiment(zero, o1, e1); }), cli::kUsage);
    EXPECT_FALSE(std::filesystem::exists(zero.out));

    cli::ExperimentOptions bad = o;
    bad.config_path = write("bad.conf", "model=gnp\nn=eight\n");
    EXPECT_EQ(guarded([&](auto &o1, auto &e1) { return cli::cmd_experiment(bad, o1, e1); }), cli::kParse);
}

TEST_F(CliTest, ExperimentFlagsOverrideFile) {
    cli::ExperimentOptions o;
    o.config_path = write("g.conf", "model=gnp\nn=8\np=0.2\nsamples=20\nseed=5\n");
    o.overrides = {"n=10"};
    o.seed = 77;
    o.samples = 3;
    o.collapse = "twins";
    ExperimentConfig c = cli::resolve_experiment(o);
    EXPECT_EQ(c.n, 10u);
    EXPECT_EQ(c.seed, 77u);
    EXPECT_EQ(c.samples, 3u);
    EXPECT_EQ(c.collapse, CollapseMode::Twins);
}

TEST_F(CliTest, AnalyzeHubGraph) {
    cli::AnalyzeOptions o;
    o.path = write("hubs.g", "g 7 15\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n1 5\n1 6\n2 3\n2 6\n3 4\n3 6\n4 5\n4 6\n5 6\n");
    o.collapse = CollapseMode::Twins;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_analyze(o, out, err), cli::kOk);
    EXPECT_NE(out.str().find("SCF before: false"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("witness {1,2}"), std::string::npos) << out.str();

    cli::AnalyzeOptions empty;
    empty.path = write("empty.g", "");
    EXPECT_EQ(guarded([&](auto &o1, auto &e1) { return cli::cmd_analyze(empty, o1, e1); }), cli::kParse);
}

TEST_F(CliTest, VerifyCommandsPass) {
    std::ostringstream out, err;
    cli::VerifyBlockdiagOptions b;
    b.random = 10;
    b.qubits = 3;
    EXPECT_EQ(cli::cmd_verify_blockdiag(b, out, err), cli::kOk);
    EXPECT_EQ(cli::cmd_verify_svn(cli::VerifySvnOptions{}, out, err), cli::kOk);
    cli::VerifyWeylOptions w;
    w.d = 3;
    EXPECT_EQ(cli::cmd_verify_weyl(w, out, err), cli::kOk);
}

}  // namespace
}  // namespace twinscf
