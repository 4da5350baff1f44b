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


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "swarmseg/search.hpp"

using namespace swarmseg;
namespace fs = std::filesystem;

namespace {

SweepConfig tiny_sweep(int workers = 1) {
    BankTemplate t;
    t.classes = {3, 3};
    t.duration = 1.0;
    t.uniform_count = 1;
    t.cluster_count = 1;
    t.line_count = 0;
    SweepConfig s;
    s.axis_points = 2;
    s.master_seed = 5;
    s.bank = make_config_bank(s.master_seed, t);
    s.workers = workers;
    return s;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "swarmseg_search_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Lattice, SevenPointsContainCanonicalValues) {
    const auto v = lattice(7);
    ASSERT_EQ(v.size(), 7u);
    EXPECT_EQ(v.front(), -1.0);
    EXPECT_EQ(v.back(), 1.0);
    EXPECT_EQ(v[3], 0.0);
    EXPECT_EQ(v[1], -2.0 / 3.0);
    EXPECT_EQ(v[4], 1.0 / 3.0);
    bool found = false;
    for (std::size_t i = 0; i < 117649; ++i) found = found || lattice_params(i, v) == canonical_controller();
    EXPECT_TRUE(found);
    EXPECT_THROW(lattice(1), ConfigError);
}

TEST(Lattice, FirstAxisVariesSlowest) {
    const auto v = lattice(3);
    EXPECT_EQ(lattice_params(0, v), (ControllerParams{{-1, -1, -1, -1, -1, -1}}));
    EXPECT_EQ(lattice_params(1, v), (ControllerParams{{-1, -1, -1, -1, -1, 0}}));
    EXPECT_EQ(lattice_params(243, v), (ControllerParams{{0, -1, -1, -1, -1, -1}}));
    EXPECT_EQ(lattice_params(728, v), (ControllerParams{{1, 1, 1, 1, 1, 1}}));
}

TEST(ConfigBank, LayoutAndSeeds) {
    const auto bank = make_config_bank(9, BankTemplate{});
    ASSERT_EQ(bank.size(), 38u);
    EXPECT_EQ(init_kind(bank[0].init), "uniform_random");
    EXPECT_EQ(init_kind(bank[18].init), "clusters");
    EXPECT_EQ(init_kind(bank[28].init), "lines");
    for (std::size_t k = 0; k < bank.size(); ++k) {
        EXPECT_EQ(bank[k].seed, derive_seed(9, k));
        EXPECT_EQ(bank[k].robot_count(), 30u);
    }
}

TEST(Sweep, EvaluatesEveryCell) {
    const SweepConfig cfg = tiny_sweep();
    const SweepResult r = run_sweep(cfg);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.evaluated, 128u);
    ASSERT_EQ(r.entries.size(), 64u);
    ASSERT_EQ(r.ranking.size(), 64u);
    for (std::size_t k = 1; k < r.ranking.size(); ++k)
        EXPECT_LE(r.entries[r.ranking[k - 1]].mean_cost, r.entries[r.ranking[k]].mean_cost);
    for (const auto& e : r.entries)
        EXPECT_DOUBLE_EQ(e.mean_cost, 0.5 * (r.cell_costs[2 * e.param_index] + r.cell_costs[2 * e.param_index + 1]));
    // Spot-check one cell against a direct trial.
    TrialConfig t = cfg.bank[1];
    t.params = lattice_params(17, lattice(2));
    EXPECT_EQ(r.cell_costs[17 * 2 + 1], run_trial(t).cost.c_total);
}

TEST(Sweep, WorkerCountDoesNotChangeTheOutcome) {
    const SweepResult a = run_sweep(tiny_sweep(1));
    const SweepResult b = run_sweep(tiny_sweep(4));
    EXPECT_TRUE(a.same_outcome(b));
}

TEST(Sweep, KilledRunResumesToTheSameResult) {
    const SweepResult reference = run_sweep(tiny_sweep());
    SweepConfig cfg = tiny_sweep(2);
    cfg.checkpoint = scratch("kill.csv");
    cfg.stop_after = 50;
    const SweepResult partial = run_sweep(cfg);
    EXPECT_FALSE(partial.complete);
    EXPECT_EQ(partial.evaluated, 50u);
    EXPECT_TRUE(partial.entries.empty());

    cfg.stop_after = 0;
    cfg.resume = true;
    const SweepResult resumed = run_sweep(cfg);
    EXPECT_TRUE(resumed.complete);
    EXPECT_EQ(resumed.resumed, 50u);
    EXPECT_EQ(resumed.evaluated, 78u);
    EXPECT_TRUE(resumed.same_outcome(reference));
}

TEST(Sweep, TornTailLineIsDiscarded) {
    const SweepResult reference = run_sweep(tiny_sweep());
    SweepConfig cfg = tiny_sweep();
    cfg.checkpoint = scratch("torn.csv");
    cfg.stop_after = 10;
    run_sweep(cfg);
    {
        std::ofstream out(cfg.checkpoint, std::ios::app | std::ios::binary);
        out << "99,1,1,1,1,1,1,1,-12";  // no newline
    }
    cfg.stop_after = 0;
    cfg.resume = true;
    const SweepResult resumed = run_sweep(cfg);
    EXPECT_EQ(resumed.resumed, 10u);
    EXPECT_TRUE(resumed.same_outcome(reference));
    const std::string text = slurp(cfg.checkpoint);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), 129u);
}

TEST(Sweep, ForeignCheckpointIsRejected) {
    SweepConfig cfg = tiny_sweep();
    cfg.checkpoint = scratch("foreign.csv");
    cfg.stop_after = 4;
    run_sweep(cfg);
    SweepConfig other = tiny_sweep();
    other.bank = make_config_bank(6, BankTemplate{{3, 3}, {}, {}, 5.0, 0.5, 0.05, 1.0, 1, 1, 0});
    other.checkpoint = cfg.checkpoint;
    other.resume = true;
    EXPECT_THROW(run_sweep(other), ConfigError);
}

TEST(Sweep, InvalidConfigs) {
    SweepConfig cfg = tiny_sweep();
    cfg.resume = true;
    EXPECT_THROW(run_sweep(cfg), ConfigError);
    cfg = tiny_sweep();
    cfg.workers = 0;
    EXPECT_THROW(run_sweep(cfg), ConfigError);
    cfg = tiny_sweep();
    cfg.bank.clear();
    EXPECT_THROW(run_sweep(cfg), ConfigError);
}

TEST(Scalability, ClassSizes) {
    EXPECT_EQ(scalability_classes(ScalabilityMode::FixedPerClass, 10, 3), (std::vector<int>{10, 10, 10}));
    EXPECT_EQ(scalability_classes(ScalabilityMode::FixedTotal, 30, 4), (std::vector<int>{8, 8, 7, 7}));
    EXPECT_EQ(scalability_classes(ScalabilityMode::FixedTotal, 30, 7), (std::vector<int>{5, 5, 4, 4, 4, 4, 4}));
    for (int n = 1; n <= 30; ++n) {
        const auto s = scalability_classes(ScalabilityMode::FixedTotal, 30, n);
        EXPECT_EQ(std::accumulate(s.begin(), s.end(), 0), 30);
        EXPECT_LE(*std::max_element(s.begin(), s.end()) - *std::min_element(s.begin(), s.end()), 1);
    }
    EXPECT_THROW(scalability_classes(ScalabilityMode::FixedTotal, 3, 4), ConfigError);
}

TEST(Experiments, SettingsShareRandomStreams) {
    ExperimentOptions opts;
    opts.trials = 3;
    opts.duration = 2.0;
    opts.classes = {3, 3};
    const auto pts = experiment_beam_angle({15, 15}, opts);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].costs, pts[1].costs);
    EXPECT_EQ(pts[0].trials(), 3u);
    EXPECT_LE(pts[0].ci.low, pts[0].mean);
    EXPECT_GE(pts[0].ci.high, pts[0].mean);
    opts.workers = 3;
    EXPECT_EQ(experiment_beam_angle({15}, opts)[0].costs, pts[0].costs);
}

TEST(Experiments, BlindSensorNeverSeesAnything) {
    ExperimentOptions opts;
    opts.trials = 2;
    opts.duration = 3.0;
    opts.classes = {4, 4};
    const auto pts = experiment_beam_range({0.0}, opts);
    EXPECT_EQ(pts[0].setting, "range=0");
    EXPECT_THROW(experiment_beam_range({-0.1}, opts), ConfigError);
}
