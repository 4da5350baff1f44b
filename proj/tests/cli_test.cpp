// Copyright 2026 The swarmseg Authors
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


// End-to-end checks of the command-line tool.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string output;  // stdout and stderr
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(SWARMSEG_CLI) + " " + args + " 2>&1";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return o;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) o.output.append(buf.data(), n);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "swarmseg_cli_test" / name;
    fs::remove_all(p);
    return p;
}

std::string config(const std::string& name) { return std::string(SWARMSEG_CONFIG_DIR) + "/" + name; }

nlohmann::json manifest(const fs::path& dir) {
    std::ifstream in(dir / "run_manifest.json");
    return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, HelpExitsZeroEverywhere) {
    for (const char* sub : {"", "trial", "sweep", "experiment", "experiment scalability", "experiment beam-angle",
                            "experiment beam-range", "conditions", "heatmap"}) {
        const Outcome o = run(std::string(sub) + " --help");
        EXPECT_EQ(o.code, 0) << sub << "\n" << o.output;
        EXPECT_NE(o.output.find("Usage"), std::string::npos) << sub;
    }
}

TEST(Cli, MissingSubcommandIsAConfigError) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("experiment").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, TrialWritesOutputsAndManifest) {
    const fs::path dir = fresh_dir("trial");
    const Outcome o = run("trial --config " + config("small.cfg") + " --out " + dir.string() +
                          " --trials 2 --trajectories");
    ASSERT_EQ(o.code, 0) << o.output;
    const auto m = manifest(dir);
    EXPECT_EQ(m["command"], "trial");
    EXPECT_EQ(m["seed"], 3);
    for (const auto& f : m["outputs"]) EXPECT_TRUE(fs::exists(dir / f.get<std::string>())) << f;
    for (const char* f : {"costs.csv", "gamma_series.csv", "trajectory_0.csv", "trajectory_1.csv", "gamma.svg"})
        EXPECT_NE(std::find(m["outputs"].begin(), m["outputs"].end(), f), m["outputs"].end()) << f;
    const std::string costs = slurp(dir / "costs.csv");
    EXPECT_EQ(costs.rfind("trial_id,seed,init_kind,c_total,gamma_final\n0,3,clusters,", 0), 0u) << costs;
}

TEST(Cli, TrialIsReproducible) {
    const fs::path a = fresh_dir("rep_a"), b = fresh_dir("rep_b");
    ASSERT_EQ(run("--seed 11 --out " + a.string() + " trial --duration 3").code, 0);
    ASSERT_EQ(run("trial --seed 11 --workers 2 --out " + b.string() + " --duration 3").code, 0);
    EXPECT_EQ(slurp(a / "costs.csv"), slurp(b / "costs.csv"));
    EXPECT_EQ(slurp(a / "gamma_series.csv"), slurp(b / "gamma_series.csv"));
}

TEST(Cli, ConfigErrorsNameTheField) {
    Outcome o = run("trial --config " + config("bad_robot.cfg") + " --out " + fresh_dir("bad").string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("robot.v_max"), std::string::npos) << o.output;

    o = run("trial --params 1,2,3 --out " + fresh_dir("bad2").string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("params"), std::string::npos) << o.output;

    o = run("trial --trials abc");
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("--trials"), std::string::npos) << o.output;

    o = run("--workers 0 trial --out " + fresh_dir("bad3").string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("workers"), std::string::npos) << o.output;

    o = run("trial --config /nonexistent.cfg");
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("config"), std::string::npos) << o.output;

    o = run("experiment scalability --mode sometimes --out " + fresh_dir("bad4").string());
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.output.find("mode"), std::string::npos) << o.output;
}

TEST(Cli, RuntimeErrorsExitThree) {
    // 200 robots cannot be placed in a 1 m square.
    const fs::path dir = fresh_dir("crowd");
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "crowded.cfg");
        out << R"({"classes": [100, 100], "init": {"kind": "uniform_random", "side": 1.0}})";
    }
    const Outcome o = run("trial --config " + (dir / "crowded.cfg").string() + " --out " + (dir / "o").string());
    EXPECT_EQ(o.code, 3) << o.output;
}

TEST(Cli, Conditions) {
    Outcome o = run("conditions");
    ASSERT_EQ(o.code, 0);
    EXPECT_NE(o.output.find("S0  v_max*dt <= 0.24796605586840"), std::string::npos) << o.output;
    EXPECT_NE(o.output.find("strictest: S0"), std::string::npos);
    o = run("conditions --r 0.02 --l 0.5");
    EXPECT_NE(o.output.find("strictest: S1"), std::string::npos) << o.output;
    EXPECT_EQ(run("conditions --r -1").code, 2);
}

TEST(Cli, SweepResumeAndHeatmap) {
    const fs::path dir = fresh_dir("sweep");
    const std::string common = "sweep --axis-points 2 --duration 1 --bank-uniform 1 --bank-clusters 0 "
                               "--bank-lines 0 --config " + config("small.cfg") + " --out " + dir.string();
    Outcome o = run(common + " --stop-after 20");
    ASSERT_EQ(o.code, 0) << o.output;
    EXPECT_NE(o.output.find("incomplete"), std::string::npos);
    EXPECT_FALSE(manifest(dir)["complete"].get<bool>());
    o = run(common + " --resume --workers 2");
    ASSERT_EQ(o.code, 0) << o.output;
    const auto m = manifest(dir);
    EXPECT_TRUE(m["complete"].get<bool>());
    EXPECT_EQ(m["cells_resumed"], 20);
    EXPECT_EQ(m["cells_evaluated"], 44);
    EXPECT_EQ(m["bank_version"], "bank-v1");

    const fs::path full = fresh_dir("sweep_full");
    ASSERT_EQ(run("sweep --axis-points 2 --duration 1 --bank-uniform 1 --bank-clusters 0 --bank-lines 0 --config " +
                  config("small.cfg") + " --out " + full.string())
                  .code,
              0);
    EXPECT_EQ(slurp(dir / "sweep_results.csv"), slurp(full / "sweep_results.csv"));

    const fs::path heat = fresh_dir("heat");
    o = run("heatmap --input " + (dir / "sweep_results.csv").string() + " --out " + heat.string());
    ASSERT_EQ(o.code, 0) << o.output;
    EXPECT_EQ(manifest(heat)["outputs"].size(), 30u);
    EXPECT_TRUE(fs::exists(heat / "heatmap_0_1.csv"));
    EXPECT_TRUE(fs::exists(heat / "heatmap_4_5.svg"));
    EXPECT_EQ(run("heatmap --input /nonexistent.csv --out " + heat.string()).code, 2);
}

TEST(Cli, ExperimentsWriteTables) {
    const fs::path dir = fresh_dir("exp");
    Outcome o = run("experiment beam-angle --betas 5,15 --trials 3 --duration 2 --classes 3,3 --out " + dir.string());
    ASSERT_EQ(o.code, 0) << o.output;
    const std::string csv = slurp(dir / "beam_angle.csv");
    EXPECT_EQ(csv.rfind("setting,mean_cost,ci_low,ci_high,n_trials\n5,", 0), 0u) << csv;
    EXPECT_TRUE(fs::exists(dir / "beam_angle.svg"));

    o = run("experiment scalability --n 2,3 --mode total --amount 6 --trials 2 --duration 2 --out " + dir.string());
    ASSERT_EQ(o.code, 0) << o.output;
    EXPECT_NE(o.output.find("spearman"), std::string::npos);

    o = run("experiment beam-range --fractions 0,0.5 --trials 2 --duration 2 --classes 3,3 --no-plots --out " +
            dir.string());
    ASSERT_EQ(o.code, 0) << o.output;
    EXPECT_EQ(manifest(dir)["outputs"].size(), 2u);
}
