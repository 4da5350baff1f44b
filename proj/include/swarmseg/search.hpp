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
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "swarmseg/controller.hpp"
#include "swarmseg/engine.hpp"
#include "swarmseg/errors.hpp"
#include "swarmseg/parallel.hpp"
#include "swarmseg/random.hpp"
#include "swarmseg/stats.hpp"

namespace swarmseg {

/// `points` evenly spaced values on [-1, 1], computed as (2k - (n-1)) / (n-1)
/// so that 7 points hit -2/3, 1/3, ... exactly as the literals do.
inline std::vector<double> lattice(int points) {
    if (points < 2) throw ConfigError("axis_points", "must be >= 2");
    std::vector<double> v(static_cast<std::size_t>(points));
    const double den = points - 1;
    for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = (2.0 * k - den) / den;
    return v;
}

/// Parameter set number `index` of the full 6-D lattice; axis 0 varies slowest.
inline ControllerParams lattice_params(std::size_t index, const std::vector<double>& axis) {
    ControllerParams p;
    const std::size_t n = axis.size();
    for (int a = 5; a >= 0; --a) {
        p.values[static_cast<std::size_t>(a)] = axis[index % n];
        index /= n;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Initial-configuration bank
// ---------------------------------------------------------------------------

inline constexpr std::string_view kBankVersion = "bank-v1";

struct BankTemplate {
    std::vector<int> classes{10, 10, 10};
    RobotCharacteristics robot;
    SensorConfig sensor;
    double side = 5.0;
    double cluster_sigma = 0.5;
    double metric_epsilon = 0.05;
    double duration = 100.0;
    int uniform_count = 18;
    int cluster_count = 10;
    int line_count = 10;
};

/// Uniform configs first, then clusters, then lines; config k is seeded with
/// derive_seed(master_seed, k).
inline std::vector<TrialConfig> make_config_bank(std::uint64_t master_seed, const BankTemplate& t) {
    std::vector<TrialConfig> bank;
    auto add = [&](InitSpec init) {
        TrialConfig c;
        c.seed = derive_seed(master_seed, bank.size());
        c.robot = t.robot;
        c.sensor = t.sensor;
        c.classes = t.classes;
        c.init = init;
        c.duration = t.duration;
        c.metric_epsilon = t.metric_epsilon;
        bank.push_back(std::move(c));
    };
    for (int i = 0; i < t.uniform_count; ++i) add(UniformRandomInit{t.side});
    for (int i = 0; i < t.cluster_count; ++i) add(ClustersInit{t.side, t.cluster_sigma});
    for (int i = 0; i < t.line_count; ++i) add(LinesInit{t.side, 0.0});
    return bank;
}

// ---------------------------------------------------------------------------
// Grid sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
    int axis_points = 7;
    std::vector<TrialConfig> bank;
    int workers = 1;
    std::uint64_t master_seed = 1;
    std::filesystem::path checkpoint;  // empty: no checkpoint
    bool resume = false;
    /// Evaluate at most this many new cells, then return an incomplete
    /// result (0: no limit). Emulates an interrupted run.
    std::size_t stop_after = 0;

    std::size_t param_sets() const {
        std::size_t n = 1;
        for (int a = 0; a < 6; ++a) n *= static_cast<std::size_t>(axis_points);
        return n;
    }
    std::size_t total_cells() const { return param_sets() * bank.size(); }

    void validate() const {
        if (axis_points < 2) throw ConfigError("axis_points", "must be >= 2");
        if (bank.empty()) throw ConfigError("bank", "configuration bank is empty");
        if (workers < 1) throw ConfigError("workers", "must be >= 1");
        if (resume && checkpoint.empty()) throw ConfigError("resume", "resuming requires a checkpoint path");
        for (const auto& c : bank) c.validate();
    }
};

struct SweepEntry {
    std::size_t param_index = 0;
    ControllerParams params;
    double mean_cost = 0.0;

    bool operator==(const SweepEntry&) const = default;
};

struct SweepResult {
    std::vector<SweepEntry> entries;    // by parameter index; empty if incomplete
    std::vector<std::size_t> ranking;   // parameter indices, ascending mean cost
    std::vector<double> cell_costs;     // by cell id; NaN where not evaluated
    std::uint64_t master_seed = 0;
    std::string bank_version{kBankVersion};
    std::vector<std::uint64_t> config_seeds;
    std::size_t evaluated = 0;  // cells run by this invocation
    std::size_t resumed = 0;    // cells taken from the checkpoint
    bool complete = false;

    /// Equality of everything that depends on the evaluated cells.
    bool same_outcome(const SweepResult& o) const {
        if (entries != o.entries || ranking != o.ranking || cell_costs.size() != o.cell_costs.size()) return false;
        for (std::size_t i = 0; i < cell_costs.size(); ++i) {
            const bool a = std::isnan(cell_costs[i]), b = std::isnan(o.cell_costs[i]);
            if (a != b || (!a && cell_costs[i] != o.cell_costs[i])) return false;
        }
        return true;
    }
};

inline constexpr std::string_view kCheckpointHeader = "cell_id,p0,p1,p2,p3,p4,p5,config_id,c_total,seed";

namespace detail {

inline std::string checkpoint_line(std::size_t cell, const ControllerParams& p, std::size_t config, double cost,
                                   std::uint64_t seed) {
    return fmt::format("{},{},{},{:.17g},{}\n", cell, format_params(p), config, cost, seed);
}

/// Reads completed cells, skipping a torn (newline-less) tail. Every record
/// must agree with the sweep's own cell layout.
inline void load_checkpoint(const std::filesystem::path& path, const SweepConfig& cfg,
                            const std::vector<double>& axis, std::vector<double>& costs, std::vector<char>& done) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("checkpoint", "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) break;  // torn final write
        const std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != kCheckpointHeader) throw ConfigError("checkpoint", "unexpected header in " + path.string());
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string tok; std::getline(ls, tok, ',');) f.push_back(tok);
        const auto bad = [&](const std::string& why) {
            return ConfigError("checkpoint", fmt::format("{} line {}: {}", path.string(), line_no, why));
        };
        if (f.size() != 10) throw bad("expected 10 fields");
        std::size_t cell = 0, config = 0;
        double cost = 0.0;
        std::uint64_t seed = 0;
        ControllerParams p;
        try {
            cell = std::stoull(f[0]);
            for (std::size_t a = 0; a < 6; ++a) p.values[a] = std::stod(f[1 + a]);
            config = std::stoull(f[7]);
            cost = std::stod(f[8]);
            seed = std::stoull(f[9]);
        } catch (const std::exception&) {
            throw bad("unparsable field");
        }
        const std::size_t b = cfg.bank.size();
        if (cell >= cfg.total_cells()) throw bad("cell id out of range");
        if (config != cell % b || seed != cfg.bank[config].seed || p != lattice_params(cell / b, axis))
            throw bad("record does not match this sweep (different grid, bank or seed)");
        costs[cell] = cost;
        done[cell] = 1;
    }
}

/// Write-then-rename replacement of `path`.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SimulationError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw SimulationError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Serializes whole-line batches onto the append-only checkpoint.
class CheckpointAppender {
public:
    explicit CheckpointAppender(const std::filesystem::path& path) {
        if (path.empty()) return;
        out_.open(path, std::ios::binary | std::ios::app);
        if (!out_) throw SimulationError("cannot append to " + path.string());
        enabled_ = true;
        last_flush_ = std::chrono::steady_clock::now();
    }

    void add(std::string line) {
        if (!enabled_) return;
        std::lock_guard lock(mutex_);
        buffer_ += line;
        ++pending_;
        const auto now = std::chrono::steady_clock::now();
        if (pending_ >= 64 || now - last_flush_ > std::chrono::milliseconds(500)) flush_locked(now);
    }

    void flush() {
        if (!enabled_) return;
        std::lock_guard lock(mutex_);
        flush_locked(std::chrono::steady_clock::now());
    }

private:
    void flush_locked(std::chrono::steady_clock::time_point now) {
        if (pending_ == 0) return;
        out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
        out_.flush();
        buffer_.clear();
        pending_ = 0;
        last_flush_ = now;
    }

    bool enabled_ = false;
    std::ofstream out_;
    std::mutex mutex_;
    std::string buffer_;
    std::size_t pending_ = 0;
    std::chrono::steady_clock::time_point last_flush_;
};

}  // namespace detail

/// Evaluates every (parameter set x bank configuration) cell with run_trial
/// and averages c_total over the bank. Cell id = param_index * bank + config.
/// The outcome does not depend on worker count or completion order.
inline SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> axis = lattice(cfg.axis_points);
    const std::size_t bank = cfg.bank.size();
    const std::size_t total = cfg.total_cells();

    SweepResult result;
    result.master_seed = cfg.master_seed;
    for (const auto& c : cfg.bank) result.config_seeds.push_back(c.seed);
    result.cell_costs.assign(total, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> done(total, 0);

    if (!cfg.checkpoint.empty()) {
        if (cfg.resume && std::filesystem::exists(cfg.checkpoint)) {
            detail::load_checkpoint(cfg.checkpoint, cfg, axis, result.cell_costs, done);
            std::string clean{kCheckpointHeader};
            clean += '\n';
            for (std::size_t cell = 0; cell < total; ++cell)
                if (done[cell])
                    clean += detail::checkpoint_line(cell, lattice_params(cell / bank, axis), cell % bank,
                                                     result.cell_costs[cell], cfg.bank[cell % bank].seed);
            detail::atomic_write(cfg.checkpoint, clean);
        } else {
            detail::atomic_write(cfg.checkpoint, std::string{kCheckpointHeader} + '\n');
        }
    }
    result.resumed = static_cast<std::size_t>(std::count(done.begin(), done.end(), 1));

    std::vector<std::size_t> pending;
    for (std::size_t cell = 0; cell < total; ++cell)
        if (!done[cell]) pending.push_back(cell);
    if (cfg.stop_after > 0 && pending.size() > cfg.stop_after) pending.resize(cfg.stop_after);

    detail::CheckpointAppender appender(cfg.checkpoint);
    parallel_for(pending.size(), cfg.workers, [&](std::size_t i) {
        const std::size_t cell = pending[i];
        TrialConfig trial = cfg.bank[cell % bank];
        trial.params = lattice_params(cell / bank, axis);
        const double cost = run_trial(trial).cost.c_total;
        result.cell_costs[cell] = cost;
        done[cell] = 1;
        appender.add(detail::checkpoint_line(cell, trial.params, cell % bank, cost, trial.seed));
    });
    appender.flush();
    result.evaluated = pending.size();

    result.complete = std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
    if (!result.complete) return result;

    const std::size_t sets = cfg.param_sets();
    result.entries.resize(sets);
    for (std::size_t p = 0; p < sets; ++p) {
        double sum = 0.0;
        for (std::size_t c = 0; c < bank; ++c) sum += result.cell_costs[p * bank + c];
        result.entries[p] = {p, lattice_params(p, axis), sum / static_cast<double>(bank)};
    }
    result.ranking.resize(sets);
    std::iota(result.ranking.begin(), result.ranking.end(), std::size_t{0});
    std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](std::size_t a, std::size_t b) {
        return result.entries[a].mean_cost < result.entries[b].mean_cost;
    });
    return result;
}

// ---------------------------------------------------------------------------
// Experiment suites
// ---------------------------------------------------------------------------

struct ExperimentOptions {
    int trials = 10;
    std::uint64_t master_seed = 1;
    int workers = 1;
    double duration = 100.0;
    RobotCharacteristics robot;
    SensorConfig sensor;
    ControllerParams params = canonical_controller();
    double side = 5.0;
    double metric_epsilon = 0.05;
    std::vector<int> classes{10, 10, 10, 10};  // beam experiments: 40 robots
};

struct ExperimentPoint {
    std::string setting;
    double value = 0.0;
    std::vector<double> costs;  // c_total per trial
    double mean = 0.0;
    stats::Interval ci;

    std::size_t trials() const { return costs.size(); }
};

/// A setting to evaluate: a label, its numeric value and the trial template.
struct ExperimentSetting {
    std::string label;
    double value = 0.0;
    TrialConfig base;
};

/// Runs `opts.trials` uniform-random trials per setting. Trial k of every
/// setting uses seed derive_seed(master_seed, k), so settings are compared
/// on the same random streams.
inline std::vector<ExperimentPoint> run_experiment(const std::vector<ExperimentSetting>& settings,
                                                   const ExperimentOptions& opts) {
    if (opts.trials < 1) throw ConfigError("trials", "must be >= 1");
    const auto trials = static_cast<std::size_t>(opts.trials);
    std::vector<ExperimentPoint> points(settings.size());
    for (std::size_t s = 0; s < settings.size(); ++s) {
        settings[s].base.validate();
        points[s].setting = settings[s].label;
        points[s].value = settings[s].value;
        points[s].costs.assign(trials, 0.0);
    }
    parallel_for(settings.size() * trials, opts.workers, [&](std::size_t cell) {
        const std::size_t s = cell / trials, k = cell % trials;
        TrialConfig cfg = settings[s].base;
        cfg.seed = derive_seed(opts.master_seed, k);
        points[s].costs[k] = run_trial(cfg).cost.c_total;
    });
    for (auto& p : points) {
        p.mean = stats::mean(p.costs);
        p.ci = stats::confidence_interval(p.costs);
    }
    return points;
}

inline TrialConfig experiment_template(const ExperimentOptions& opts) {
    TrialConfig c;
    c.params = opts.params;
    c.robot = opts.robot;
    c.sensor = opts.sensor;
    c.classes = opts.classes;
    c.init = UniformRandomInit{opts.side};
    c.duration = opts.duration;
    c.metric_epsilon = opts.metric_epsilon;
    return c;
}

enum class ScalabilityMode { FixedPerClass, FixedTotal };

/// Class sizes for N classes: `amount` robots each, or `amount` robots in
/// total with the remainder handed one apiece to the lowest class ids.
inline std::vector<int> scalability_classes(ScalabilityMode mode, int amount, int n_classes) {
    if (n_classes < 1) throw ConfigError("classes", "number of classes must be >= 1");
    if (amount < 1) throw ConfigError("robots", "robot count must be >= 1");
    if (mode == ScalabilityMode::FixedPerClass) return std::vector<int>(static_cast<std::size_t>(n_classes), amount);
    if (amount < n_classes) throw ConfigError("classes", "more classes than robots");
    std::vector<int> sizes(static_cast<std::size_t>(n_classes), amount / n_classes);
    for (int i = 0; i < amount % n_classes; ++i) ++sizes[static_cast<std::size_t>(i)];
    return sizes;
}

inline std::vector<ExperimentPoint> experiment_scalability(ScalabilityMode mode, int amount,
                                                           const std::vector<int>& class_counts,
                                                           const ExperimentOptions& opts) {
    std::vector<ExperimentSetting> settings;
    for (int n : class_counts) {
        TrialConfig c = experiment_template(opts);
        c.classes = scalability_classes(mode, amount, n);
        settings.push_back({fmt::format("N={}", n), static_cast<double>(n), std::move(c)});
    }
    return run_experiment(settings, opts);
}

/// Half beam angles in degrees.
inline std::vector<ExperimentPoint> experiment_beam_angle(const std::vector<double>& betas_deg,
                                                          const ExperimentOptions& opts) {
    std::vector<ExperimentSetting> settings;
    for (double b : betas_deg) {
        TrialConfig c = experiment_template(opts);
        c.sensor.half_beam_angle = degrees(b);
        settings.push_back({fmt::format("beta={:g}", b), b, std::move(c)});
    }
    return run_experiment(settings, opts);
}

/// Sensor range as a fraction of the arena diagonal (side * sqrt 2).
inline std::vector<ExperimentPoint> experiment_beam_range(const std::vector<double>& fractions,
                                                          const ExperimentOptions& opts) {
    const double diagonal = opts.side * std::numbers::sqrt2;
    std::vector<ExperimentSetting> settings;
    for (double f : fractions) {
        if (!(f >= 0.0) || !std::isfinite(f)) throw ConfigError("fractions", "range fractions must be >= 0");
        TrialConfig c = experiment_template(opts);
        c.sensor.max_range = f * diagonal;
        settings.push_back({fmt::format("range={:g}", f), f, std::move(c)});
    }
    return run_experiment(settings, opts);
}

}  // namespace swarmseg
