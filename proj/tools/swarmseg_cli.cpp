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


// Command-line front end: trial, sweep, experiment, conditions, heatmap.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "swarmseg/swarmseg.hpp"

#ifndef SWARMSEG_VERSION
#define SWARMSEG_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace swarmseg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::string out = "out";
    int workers = 1;
    std::string config;
    bool no_plots = false;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

/// Output directory bookkeeping and the run manifest.
class Run {
public:
    Run(const Globals& g, std::string command, std::vector<std::string> args)
        : dir_(g.out), start_(std::chrono::system_clock::now()) {
        manifest_["tool"] = "swarmseg";
        manifest_["version"] = SWARMSEG_VERSION;
        manifest_["command"] = std::move(command);
        manifest_["args"] = std::move(args);
        manifest_["workers"] = g.workers;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw SimulationError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    json& manifest() { return manifest_; }
    const fs::path& dir() const { return dir_; }
    fs::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(path(name), std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw SimulationError("cannot write " + path(name).string());
        add_output(name);
    }

    void add_output(const std::string& name) {
        if (std::find(outputs_.begin(), outputs_.end(), name) == outputs_.end()) outputs_.push_back(name);
    }

    void finish() {
        manifest_["outputs"] = outputs_;
        manifest_["started_utc"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(start_)));
        manifest_["wall_seconds"] =
            std::chrono::duration<double>(std::chrono::system_clock::now() - start_).count();
        std::ofstream out(path("run_manifest.json"), std::ios::binary | std::ios::trunc);
        out << manifest_.dump(2) << '\n';
        if (!out) throw SimulationError("cannot write run manifest");
    }

private:
    fs::path dir_;
    std::chrono::system_clock::time_point start_;
    json manifest_;
    std::vector<std::string> outputs_;
};

template <class Fn>
std::string to_text(Fn&& fn) {
    std::ostringstream ss;
    fn(ss);
    return ss.str();
}

TrialConfig base_config(const Globals& g) {
    TrialConfig c = g.config.empty() ? TrialConfig{} : load_trial_config(g.config);
    if (g.seed_opt->count() > 0) c.seed = g.seed;
    return c;
}

void check_workers(const Globals& g) {
    if (g.workers < 1) throw ConfigError("workers", "must be >= 1");
}

// ---------------------------------------------------------------------------

struct TrialArgs {
    int trials = 1;
    std::string params;
    std::optional<double> duration;
    bool trajectories = false;
};

int run_trial_command(const Globals& g, const TrialArgs& a, std::vector<std::string> args) {
    check_workers(g);
    TrialConfig base = base_config(g);
    if (!a.params.empty()) base.params = parse_params(a.params);
    if (a.duration) base.duration = *a.duration;
    if (a.trials < 1) throw ConfigError("trials", "must be >= 1");
    base.validate();

    Run run(g, "trial", std::move(args));
    const auto n = static_cast<std::size_t>(a.trials);
    std::vector<TrialResult> results(n);
    parallel_for(n, g.workers, [&](std::size_t k) {
        TrialConfig c = base;
        c.seed = base.seed + k;
        results[k] = run_trial(c, {a.trajectories});
    });

    std::vector<io::CostRow> rows;
    for (std::size_t k = 0; k < n; ++k) {
        rows.push_back({k, base.seed + k, std::string(init_kind(base.init)), results[k].cost});
        fmt::print("trial {} seed {} c_total {:.6g} gamma_final {:.4f}\n", k, base.seed + k, results[k].cost.c_total,
                   results[k].cost.gamma.back());
    }
    run.write("costs.csv", to_text([&](std::ostream& o) { io::write_costs(o, rows); }));
    run.write("gamma_series.csv", to_text([&](std::ostream& o) { io::write_gamma_series(o, rows); }));
    if (a.trajectories)
        for (std::size_t k = 0; k < n; ++k)
            run.write(fmt::format("trajectory_{}.csv", k),
                      to_text([&](std::ostream& o) { io::write_trajectory(o, results[k].trajectory); }));
    if (!g.no_plots) {
        plot::Series s;
        for (std::size_t t = 0; t < base.sample_count(); ++t) {
            double sum = 0.0;
            for (const auto& r : results) sum += r.cost.gamma[t];
            s.x.push_back(static_cast<double>(t));
            s.y.push_back(sum / static_cast<double>(n));
        }
        run.write("gamma.svg", plot::line_chart(s, n == 1 ? "gamma(t)" : fmt::format("mean gamma(t) over {} trials", n),
                                                "t [s]", "gamma"));
    }
    run.manifest()["seed"] = base.seed;
    run.manifest()["config"] = to_json(base);
    run.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    int axis_points = 7;
    std::optional<double> duration;
    int uniform = 18;
    int clusters = 10;
    int lines = 10;
    bool resume = false;
    std::size_t stop_after = 0;
    std::size_t top = 10;
};

int run_sweep_command(const Globals& g, const SweepArgs& a, std::vector<std::string> args) {
    check_workers(g);
    const TrialConfig base = base_config(g);
    if (a.uniform < 0 || a.clusters < 0 || a.lines < 0) throw ConfigError("bank", "config counts must be >= 0");

    BankTemplate t;
    t.classes = base.classes;
    t.robot = base.robot;
    t.sensor = base.sensor;
    t.side = init_side(base.init);
    if (const auto* k = std::get_if<ClustersInit>(&base.init)) t.cluster_sigma = k->sigma;
    t.metric_epsilon = base.metric_epsilon;
    t.duration = a.duration.value_or(base.duration);
    t.uniform_count = a.uniform;
    t.cluster_count = a.clusters;
    t.line_count = a.lines;

    SweepConfig cfg;
    cfg.axis_points = a.axis_points;
    cfg.master_seed = base.seed;
    cfg.bank = make_config_bank(cfg.master_seed, t);
    cfg.workers = g.workers;
    cfg.resume = a.resume;
    cfg.stop_after = a.stop_after;
    cfg.checkpoint = fs::path(g.out) / "checkpoint.csv";
    cfg.validate();

    Run run(g, "sweep", std::move(args));
    const SweepResult r = run_sweep(cfg);
    run.add_output("checkpoint.csv");
    run.manifest()["seed"] = cfg.master_seed;
    run.manifest()["bank_version"] = r.bank_version;
    run.manifest()["config_seeds"] = r.config_seeds;
    run.manifest()["axis_points"] = cfg.axis_points;
    run.manifest()["cells_total"] = cfg.total_cells();
    run.manifest()["cells_resumed"] = r.resumed;
    run.manifest()["cells_evaluated"] = r.evaluated;
    run.manifest()["complete"] = r.complete;
    run.manifest()["trial_template"] = to_json(cfg.bank.front());

    if (!r.complete) {
        fmt::print("sweep incomplete: {} of {} cells done; rerun with --resume\n", r.resumed + r.evaluated,
                   cfg.total_cells());
        run.finish();
        return kExitOk;
    }
    run.write("sweep_results.csv", to_text([&](std::ostream& o) { io::write_sweep_results(o, r); }));
    fmt::print("{} parameter sets x {} configs; best {}:\n", cfg.param_sets(), cfg.bank.size(),
               std::min(a.top, r.ranking.size()));
    for (std::size_t k = 0; k < std::min(a.top, r.ranking.size()); ++k) {
        const auto& e = r.entries[r.ranking[k]];
        fmt::print("{:>4}  [{}]  {:.6g}\n", k, format_params(e.params, ' '), e.mean_cost);
    }
    run.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    int trials = 0;  // 0: per-experiment default
    std::optional<double> duration;
    std::vector<int> classes;
    std::string mode = "per-class";
    int amount = 10;
    std::vector<int> class_counts{2, 5, 10, 15};
    std::vector<double> betas{1, 5, 15, 30, 60};
    std::vector<double> fractions{0.0, 0.07, 0.35, 1.0};
};

ExperimentOptions experiment_options(const Globals& g, const ExperimentArgs& a, int default_trials) {
    const TrialConfig base = base_config(g);
    ExperimentOptions o;
    o.trials = a.trials > 0 ? a.trials : default_trials;
    o.master_seed = base.seed;
    o.workers = g.workers;
    o.duration = a.duration.value_or(base.duration);
    o.robot = base.robot;
    o.sensor = base.sensor;
    o.params = base.params;
    o.side = init_side(base.init);
    o.metric_epsilon = base.metric_epsilon;
    if (!g.config.empty()) o.classes = base.classes;
    if (!a.classes.empty()) o.classes = a.classes;
    return o;
}

int run_experiment_command(const Globals& g, const ExperimentArgs& a, const std::string& which,
                           std::vector<std::string> args) {
    check_workers(g);
    std::vector<ExperimentPoint> points;
    ExperimentOptions o;
    std::string xlabel;
    json extra;
    if (which == "scalability") {
        o = experiment_options(g, a, 10);
        ScalabilityMode mode;
        if (a.mode == "per-class")
            mode = ScalabilityMode::FixedPerClass;
        else if (a.mode == "total")
            mode = ScalabilityMode::FixedTotal;
        else
            throw ConfigError("mode", "must be 'per-class' or 'total'");
        points = experiment_scalability(mode, a.amount, a.class_counts, o);
        xlabel = "number of classes N";
        extra = {{"mode", a.mode}, {"amount", a.amount}, {"class_counts", a.class_counts}};
    } else if (which == "beam-angle") {
        o = experiment_options(g, a, 20);
        points = experiment_beam_angle(a.betas, o);
        xlabel = "half beam angle [deg]";
        extra = {{"betas_deg", a.betas}};
    } else {
        o = experiment_options(g, a, 20);
        points = experiment_beam_range(a.fractions, o);
        xlabel = "sensor range / arena diagonal";
        extra = {{"fractions", a.fractions}, {"diagonal", o.side * std::numbers::sqrt2}};
    }

    Run run(g, "experiment " + which, std::move(args));
    const std::string stem = [&] {
        std::string s = which;
        std::replace(s.begin(), s.end(), '-', '_');
        return s;
    }();
    run.write(stem + ".csv", to_text([&](std::ostream& out) { io::write_experiment(out, points); }));
    run.write(stem + "_trials.csv", to_text([&](std::ostream& out) {
                  out << "setting,trial,seed,c_total\n";
                  for (const auto& p : points)
                      for (std::size_t k = 0; k < p.costs.size(); ++k)
                          out << fmt::format("{:g},{},{},{:.17g}\n", p.value, k, derive_seed(o.master_seed, k),
                                             p.costs[k]);
              }));
    if (!g.no_plots) run.write(stem + ".svg", plot::experiment_chart(points, which, xlabel));
    for (const auto& p : points)
        fmt::print("{:<12} mean {:>10.2f}  95% CI [{:.2f}, {:.2f}]  n={}\n", p.setting, p.mean, p.ci.low, p.ci.high,
                   p.trials());
    if (which == "scalability" && points.size() >= 2) {
        std::vector<double> x, y;
        for (const auto& p : points) {
            x.push_back(p.value);
            y.push_back(p.mean);
        }
        fmt::print("spearman(N, mean cost) = {:.4f}\n", stats::spearman(x, y));
    }
    run.manifest()["seed"] = o.master_seed;
    run.manifest()["trials"] = o.trials;
    run.manifest()["classes"] = o.classes;
    run.manifest()["duration"] = o.duration;
    run.manifest()["settings"] = extra;
    run.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ConditionsArgs {
    std::optional<double> r;
    std::optional<double> l;
};

int run_conditions_command(const Globals& g, const ConditionsArgs& a, std::vector<std::string> args) {
    const TrialConfig base = base_config(g);
    RobotCharacteristics rc = base.robot;
    if (a.r) rc.body_radius = *a.r;
    if (a.l) rc.interwheel = *a.l;
    if (!(rc.body_radius > 0.0) || !std::isfinite(rc.body_radius)) throw ConfigError("r", "must be finite and > 0");
    if (!(rc.interwheel > 0.0) || !std::isfinite(rc.interwheel)) throw ConfigError("l", "must be finite and > 0");
    const ConditionBounds b = condition_bounds(rc);

    std::string csv = "condition,bound,simulated_bound\n";
    fmt::print("r = {:g} m, l = {:g} m\n", rc.body_radius, rc.interwheel);
    for (SensorState s : kAllBranches) {
        const double sim = simulated_limit_travel(rc, control(s, canonical_controller()));
        fmt::print("{}  v_max*dt <= {:.17g}   (simulated {:.12g})\n", condition_name(s), b.bound(s), sim);
        csv += fmt::format("{},{:.17g},{:.17g}\n", condition_name(s), b.bound(s), sim);
    }
    fmt::print("strictest: {}\n", condition_name(b.strictest));
    const double step = rc.v_max * rc.delta_t;
    fmt::print("v_max*dt = {:g}: {}\n", step, step <= b.bound(b.strictest) ? "satisfies all conditions" : "VIOLATES");
    if (rc.interwheel > 2.0 * rc.body_radius) fmt::print("note: l > 2r, wheels lie outside the body\n");

    if (g.out_opt->count() > 0) {
        Run run(g, "conditions", std::move(args));
        run.write("conditions.csv", csv);
        run.manifest()["body_radius"] = rc.body_radius;
        run.manifest()["interwheel"] = rc.interwheel;
        run.manifest()["strictest"] = condition_name(b.strictest);
        run.finish();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_heatmap_command(const Globals& g, const std::string& input, std::vector<std::string> args) {
    std::ifstream in(input);
    if (!in) throw ConfigError("input", "cannot read " + input);
    const std::vector<SweepSample> samples = io::read_sweep_results(in);
    const auto tables = heatmap_marginals(samples);
    Run run(g, "heatmap", std::move(args));
    for (const auto& t : tables) {
        const std::string name = io::marginal_filename(t);
        run.write(name, to_text([&](std::ostream& o) { io::write_marginal(o, t); }));
        if (!g.no_plots) run.write(name.substr(0, name.size() - 4) + ".svg", plot::heatmap(t));
    }
    fmt::print("{} samples -> {} marginal tables in {}\n", samples.size(), tables.size(), run.dir().string());
    run.manifest()["input"] = input;
    run.manifest()["samples"] = samples.size();
    run.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segregation of robot swarms with a ternary kin sensor", "swarmseg"};
    app.set_version_flag("--version", SWARMSEG_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    g.seed_opt = app.add_option("--seed", g.seed, "Master seed (overrides the config seed)");
    g.out_opt = app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads")->capture_default_str();
    app.add_option("--config", g.config, "Trial config (JSON)");
    app.add_flag("--no-plots", g.no_plots, "Skip SVG output");

    std::vector<std::string> args(argv + 1, argv + argc);
    int code = kExitOk;

    TrialArgs ta;
    auto* trial = app.add_subcommand("trial", "Run one or more trials and log cost and trajectories");
    trial->add_option("--trials", ta.trials, "Number of trials; trial k uses seed + k")->capture_default_str();
    trial->add_option("--params", ta.params, "Controller as six comma-separated values in [-1, 1]");
    trial->add_option("--duration", ta.duration, "Trial length in seconds");
    trial->add_flag("--trajectories", ta.trajectories, "Write per-tick trajectory CSVs");
    trial->callback([&] { code = run_trial_command(g, ta, args); });

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Grid search over controller parameters");
    sweep->add_option("--axis-points", sa.axis_points, "Values per parameter axis on [-1, 1]")->capture_default_str();
    sweep->add_option("--duration", sa.duration, "Trial length in seconds");
    sweep->add_option("--bank-uniform", sa.uniform, "Uniform-random configs in the bank")->capture_default_str();
    sweep->add_option("--bank-clusters", sa.clusters, "Clustered configs in the bank")->capture_default_str();
    sweep->add_option("--bank-lines", sa.lines, "Line configs in the bank")->capture_default_str();
    sweep->add_flag("--resume", sa.resume, "Continue from the checkpoint in the output directory");
    sweep->add_option("--stop-after", sa.stop_after, "Stop after this many new cells (0: run to completion)");
    sweep->add_option("--top", sa.top, "Ranked parameter sets to print")->capture_default_str();
    sweep->callback([&] { code = run_sweep_command(g, sa, args); });

    ExperimentArgs ea;
    auto* experiment = app.add_subcommand("experiment", "Parameter studies with confidence intervals");
    experiment->require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--trials", ea.trials, "Trials per setting (default 10 for scalability, 20 otherwise)");
        sub->add_option("--duration", ea.duration, "Trial length in seconds");
        sub->add_option("--classes", ea.classes, "Class sizes, e.g. 10,10,10,10")->delimiter(',');
    };
    auto* scal = experiment->add_subcommand("scalability", "Cost versus number of classes");
    add_common(scal);
    scal->add_option("--mode", ea.mode, "per-class: --amount robots per class; total: --amount robots overall")
        ->capture_default_str();
    scal->add_option("--amount", ea.amount, "Robots per class or in total")->capture_default_str();
    scal->add_option("--n", ea.class_counts, "Class counts to test")->delimiter(',')->capture_default_str();
    scal->callback([&] { code = run_experiment_command(g, ea, "scalability", args); });
    auto* angle = experiment->add_subcommand("beam-angle", "Cost versus half beam angle");
    add_common(angle);
    angle->add_option("--betas", ea.betas, "Half beam angles in degrees")->delimiter(',')->capture_default_str();
    angle->callback([&] { code = run_experiment_command(g, ea, "beam-angle", args); });
    auto* range = experiment->add_subcommand("beam-range", "Cost versus sensor range");
    add_common(range);
    range->add_option("--fractions", ea.fractions, "Ranges as fractions of the arena diagonal")
        ->delimiter(',')
        ->capture_default_str();
    range->callback([&] { code = run_experiment_command(g, ea, "beam-range", args); });

    ConditionsArgs ca;
    auto* cond = app.add_subcommand("conditions", "Approach-condition bounds for a robot geometry");
    cond->add_option("--r", ca.r, "Body radius [m]");
    cond->add_option("--l", ca.l, "Inter-wheel distance [m]");
    cond->callback([&] { code = run_conditions_command(g, ca, args); });

    std::string heat_input;
    auto* heat = app.add_subcommand("heatmap", "Pairwise parameter marginals of a sweep");
    heat->add_option("--input", heat_input, "sweep_results.csv from a sweep")->required();
    heat->callback([&] { code = run_heatmap_command(g, heat_input, args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return code;
}
