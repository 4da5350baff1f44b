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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "swarmseg/analysis.hpp"
#include "swarmseg/engine.hpp"
#include "swarmseg/errors.hpp"
#include "swarmseg/search.hpp"

namespace swarmseg::io {

// Trajectory log: one line per (tick, robot), `t,robot_id,class_id,x,y,theta,S`,
// reals printed with 9 significant digits.

inline constexpr std::string_view kTrajectoryHeader = "t,robot_id,class_id,x,y,theta,S";

inline std::string trajectory_line(const TrajectoryRecord& r) {
    return fmt::format("{:.9g},{},{},{:.9g},{:.9g},{:.9g},{}\n", r.t, r.robot_id, r.class_id, r.pose.x, r.pose.y,
                       r.pose.theta, static_cast<int>(r.state));
}

inline void write_trajectory(std::ostream& out, std::span<const TrajectoryRecord> records) {
    out << kTrajectoryHeader << '\n';
    for (const auto& r : records) out << trajectory_line(r);
}

inline std::vector<TrajectoryRecord> read_trajectory(std::istream& in) {
    std::vector<TrajectoryRecord> out;
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader) throw ConfigError("trajectory", "missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        TrajectoryRecord r;
        char c = 0;
        int s = 0;
        ss >> r.t >> c >> r.robot_id >> c >> r.class_id >> c >> r.pose.x >> c >> r.pose.y >> c >> r.pose.theta >> c >> s;
        if (!ss || s < 0 || s > 2) throw ConfigError("trajectory", "malformed record: " + line);
        r.state = static_cast<SensorState>(s);
        out.push_back(r);
    }
    return out;
}

// Cost CSV: one row per trial; the gamma series goes to a companion file
// with one wide row per trial.

inline constexpr std::string_view kCostHeader = "trial_id,seed,init_kind,c_total,gamma_final";

struct CostRow {
    std::size_t trial_id = 0;
    std::uint64_t seed = 0;
    std::string init_kind;
    CostSeries cost;
};

inline void write_costs(std::ostream& out, std::span<const CostRow> rows) {
    out << kCostHeader << '\n';
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{:.17g},{:.17g}\n", r.trial_id, r.seed, r.init_kind, r.cost.c_total,
                           r.cost.gamma.empty() ? 0.0 : r.cost.gamma.back());
}

inline void write_gamma_series(std::ostream& out, std::span<const CostRow> rows) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.cost.gamma.size());
    out << "trial_id";
    for (std::size_t t = 0; t < width; ++t) out << ",gamma_" << t;
    out << '\n';
    for (const auto& r : rows) {
        out << r.trial_id;
        for (double g : r.cost.gamma) out << fmt::format(",{:.17g}", g);
        out << '\n';
    }
}

// Experiment summary: `setting,mean_cost,ci_low,ci_high,n_trials`.

inline constexpr std::string_view kExperimentHeader = "setting,mean_cost,ci_low,ci_high,n_trials";

inline void write_experiment(std::ostream& out, std::span<const ExperimentPoint> points) {
    out << kExperimentHeader << '\n';
    for (const auto& p : points)
        out << fmt::format("{:g},{:.17g},{:.17g},{:.17g},{}\n", p.value, p.mean, p.ci.low, p.ci.high, p.trials());
}

// Sweep results: every parameter set in rank order.

inline constexpr std::string_view kSweepHeader = "rank,param_index,p0,p1,p2,p3,p4,p5,mean_cost";

inline void write_sweep_results(std::ostream& out, const SweepResult& r) {
    out << kSweepHeader << '\n';
    for (std::size_t k = 0; k < r.ranking.size(); ++k) {
        const auto& e = r.entries[r.ranking[k]];
        out << fmt::format("{},{},{},{:.17g}\n", k, e.param_index, format_params(e.params), e.mean_cost);
    }
}

inline std::vector<SweepSample> read_sweep_results(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader) throw ConfigError("sweep_results", "missing or bad header");
    std::vector<SweepSample> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
        if (f.size() != 9) throw ConfigError("sweep_results", fmt::format("line {}: expected 9 fields", line_no));
        SweepSample s;
        try {
            for (std::size_t a = 0; a < 6; ++a) s.params.values[a] = std::stod(f[2 + a]);
            s.mean_cost = std::stod(f[8]);
        } catch (const std::exception&) {
            throw ConfigError("sweep_results", fmt::format("line {}: unparsable number", line_no));
        }
        out.push_back(s);
    }
    return out;
}

// Heatmap table: header row of column-parameter values, then one row per
// row-parameter value (ascending). Empty cells are left blank.

inline void write_marginal(std::ostream& out, const MarginalTable& t) {
    out << fmt::format("p{}\\p{}", t.first, t.second);
    for (double v : t.col_values) out << fmt::format(",{:.6g}", v);
    out << '\n';
    for (std::size_t i = 0; i < t.rows(); ++i) {
        out << fmt::format("{:.6g}", t.row_values[i]);
        for (std::size_t j = 0; j < t.cols(); ++j) {
            out << ',';
            if (t.populated(i, j)) out << fmt::format("{:.17g}", t.mean(i, j));
        }
        out << '\n';
    }
}

inline std::string marginal_filename(const MarginalTable& t) { return fmt::format("heatmap_{}_{}.csv", t.first, t.second); }

}  // namespace swarmseg::io
