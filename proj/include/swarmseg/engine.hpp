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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarmseg/controller.hpp"
#include "swarmseg/errors.hpp"
#include "swarmseg/kinematics.hpp"
#include "swarmseg/metrics.hpp"
#include "swarmseg/random.hpp"
#include "swarmseg/sensing.hpp"
#include "swarmseg/world.hpp"

namespace swarmseg {

// Initial placement generators. All confine robot centers to the square
// [-side/2, side/2]^2 centered on the origin.

struct UniformRandomInit {
    double side = 5.0;
    bool operator==(const UniformRandomInit&) const = default;
};

/// One Gaussian blob per class. The first robot of a class sits on the blob
/// center, the rest are N(center, sigma^2 I).
struct ClustersInit {
    double side = 5.0;
    double sigma = 0.5;
    bool operator==(const ClustersInit&) const = default;
};

/// One straight row per class with random anchor and direction.
/// pitch <= 0 selects 2r + metric_epsilon.
struct LinesInit {
    double side = 5.0;
    double pitch = 0.0;
    bool operator==(const LinesInit&) const = default;
};

using InitSpec = std::variant<UniformRandomInit, ClustersInit, LinesInit>;

inline std::string_view init_kind(const InitSpec& s) {
    constexpr std::array<std::string_view, 3> names{"uniform_random", "clusters", "lines"};
    return names[s.index()];
}

inline double init_side(const InitSpec& s) {
    return std::visit([](const auto& v) { return v.side; }, s);
}

inline constexpr std::size_t kMaxPlacementAttempts = 100000;
inline constexpr int kMaxCollisionIterations = 64;
inline constexpr double kCollisionTolerance = 1e-6;
/// Over-relaxation of the projection on sweeps after the first; contact
/// jams (closed loops of pushing robots) stall plain pairwise projection.
inline constexpr double kCollisionOverRelaxation = 1.5;

/// Full description of one seeded trial.
struct TrialConfig {
    std::uint64_t seed = 1;
    ControllerParams params = canonical_controller();
    RobotCharacteristics robot;
    SensorConfig sensor;
    std::vector<int> classes{10, 10, 10};
    InitSpec init = UniformRandomInit{};
    double duration = 100.0;  // s
    double metric_epsilon = 0.05;

    void validate() const {
        params.validate();
        robot.validate();
        sensor.validate();
        if (classes.empty()) throw ConfigError("classes", "at least one class is required");
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i] < 1) throw ConfigError("classes[" + std::to_string(i) + "]", "class count must be >= 1");
        if (!std::isfinite(duration) || duration <= 0.0) throw ConfigError("duration", "must be finite and > 0");
        if (!std::isfinite(metric_epsilon) || metric_epsilon <= 0.0)
            throw ConfigError("metric_epsilon", "must be finite and > 0");
        std::visit(
            [](const auto& v) {
                if (!std::isfinite(v.side) || v.side <= 0.0) throw ConfigError("init.side", "must be finite and > 0");
            },
            init);
        if (const auto* c = std::get_if<ClustersInit>(&init); c && !(c->sigma >= 0.0 && std::isfinite(c->sigma)))
            throw ConfigError("init.sigma", "must be finite and >= 0");
        if (const auto* l = std::get_if<LinesInit>(&init); l && !std::isfinite(l->pitch))
            throw ConfigError("init.pitch", "must be finite");
    }

    std::size_t robot_count() const {
        return static_cast<std::size_t>(std::accumulate(classes.begin(), classes.end(), 0));
    }

    /// Control periods simulated: ceil(duration / delta_t).
    std::size_t tick_count() const {
        return static_cast<std::size_t>(std::ceil(duration / robot.delta_t - 1e-9));
    }

    /// gamma samples, one per whole second t = 0 .. ceil(duration) - 1.
    std::size_t sample_count() const { return static_cast<std::size_t>(std::ceil(duration - 1e-9)); }

    bool operator==(const TrialConfig&) const = default;
};

struct Placement {
    std::vector<Robot> robots;
    std::vector<std::array<double, 2>> class_anchors;  // blob centers / line starts; empty for uniform
};

namespace detail {

inline bool clear_of(std::span<const Robot> placed, double x, double y, double min_dist) {
    for (const Robot& r : placed)
        if (std::hypot(r.pose.x - x, r.pose.y - y) < min_dist) return false;
    return true;
}

inline bool inside(double x, double y, double half) { return std::abs(x) <= half && std::abs(y) <= half; }

inline std::vector<int> class_of_each(const std::vector<int>& classes) {
    std::vector<int> out;
    for (std::size_t c = 0; c < classes.size(); ++c) out.insert(out.end(), classes[c], static_cast<int>(c));
    return out;
}

[[noreturn]] inline void overcrowded(std::size_t robot) {
    throw OvercrowdedArena("could not place robot " + std::to_string(robot) + " after " +
                           std::to_string(kMaxPlacementAttempts) + " attempts");
}

}  // namespace detail

/// Collision-free initial placement. Robots are numbered class by class.
inline Placement generate_placement(const TrialConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const double min_dist = 2.0 * cfg.robot.body_radius;
    const double half = 0.5 * init_side(cfg.init);
    const std::vector<int> cls = detail::class_of_each(cfg.classes);

    Placement out;
    out.robots.reserve(cls.size());
    auto push = [&](double x, double y) {
        const int id = static_cast<int>(out.robots.size());
        out.robots.push_back({id, cls[static_cast<std::size_t>(id)], {x, y, rng.heading()}});
    };

    if (std::holds_alternative<UniformRandomInit>(cfg.init)) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            std::size_t attempt = 0;
            for (;; ++attempt) {
                if (attempt == kMaxPlacementAttempts) detail::overcrowded(i);
                const double x = rng.uniform(-half, half);
                const double y = rng.uniform(-half, half);
                if (detail::clear_of(out.robots, x, y, min_dist)) {
                    push(x, y);
                    break;
                }
            }
        }
    } else if (const auto* blob = std::get_if<ClustersInit>(&cfg.init)) {
        for (std::size_t c = 0; c < cfg.classes.size(); ++c) {
            double cx = 0.0, cy = 0.0;
            for (std::size_t attempt = 0;; ++attempt) {
                if (attempt == kMaxPlacementAttempts) detail::overcrowded(out.robots.size());
                cx = rng.uniform(-half, half);
                cy = rng.uniform(-half, half);
                if (detail::clear_of(out.robots, cx, cy, min_dist)) break;
            }
            out.class_anchors.push_back({cx, cy});
            push(cx, cy);
            for (int k = 1; k < cfg.classes[c]; ++k) {
                for (std::size_t attempt = 0;; ++attempt) {
                    if (attempt == kMaxPlacementAttempts) detail::overcrowded(out.robots.size());
                    const double x = cx + blob->sigma * rng.normal();
                    const double y = cy + blob->sigma * rng.normal();
                    if (detail::inside(x, y, half) && detail::clear_of(out.robots, x, y, min_dist)) {
                        push(x, y);
                        break;
                    }
                }
            }
        }
    } else {
        const auto& line = std::get<LinesInit>(cfg.init);
        const double pitch = line.pitch > 0.0 ? line.pitch : 2.0 * cfg.robot.body_radius + cfg.metric_epsilon;
        for (std::size_t c = 0; c < cfg.classes.size(); ++c) {
            const int n = cfg.classes[c];
            for (std::size_t attempt = 0;; ++attempt) {
                if (attempt == kMaxPlacementAttempts) detail::overcrowded(out.robots.size());
                const double ax = rng.uniform(-half, half);
                const double ay = rng.uniform(-half, half);
                const double dir = rng.heading();
                const double ux = std::cos(dir), uy = std::sin(dir);
                bool ok = true;
                for (int k = 0; k < n && ok; ++k) {
                    const double x = ax + k * pitch * ux, y = ay + k * pitch * uy;
                    ok = detail::inside(x, y, half) && detail::clear_of(out.robots, x, y, min_dist);
                }
                if (!ok) continue;
                out.class_anchors.push_back({ax, ay});
                for (int k = 0; k < n; ++k) push(ax + k * pitch * ux, ay + k * pitch * uy);
                break;
            }
        }
    }
    return out;
}

inline WorldState init_world(const TrialConfig& cfg) { return {generate_placement(cfg).robots, 0.0}; }

/// Largest pairwise interpenetration depth (0 when no disks overlap).
inline double max_overlap(std::span<const Robot> robots, double body_radius) {
    const double min_dist = 2.0 * body_radius;
    double worst = 0.0;
    for (std::size_t i = 0; i < robots.size(); ++i)
        for (std::size_t j = i + 1; j < robots.size(); ++j) {
            const double d = std::hypot(robots[j].pose.x - robots[i].pose.x, robots[j].pose.y - robots[i].pose.y);
            worst = std::max(worst, min_dist - d);
        }
    return worst;
}

/// Pushes overlapping disk pairs apart symmetrically along their center line,
/// sweeping pairs in index order until a sweep finds nothing to correct. The
/// first sweep projects exactly onto contact, later sweeps over-relax.
/// Returns the number of sweeps performed.
inline int resolve_collisions(std::vector<Robot>& robots, double body_radius) {
    const double min_dist = 2.0 * body_radius;
    const double min_dist_sq = min_dist * min_dist;
    for (int iter = 1; iter <= kMaxCollisionIterations; ++iter) {
        const double relax = iter == 1 ? 1.0 : kCollisionOverRelaxation;
        double worst = 0.0;
        for (std::size_t i = 0; i < robots.size(); ++i) {
            Pose& a = robots[i].pose;
            for (std::size_t j = i + 1; j < robots.size(); ++j) {
                Pose& b = robots[j].pose;
                const double dx = b.x - a.x, dy = b.y - a.y;
                const double d2 = dx * dx + dy * dy;
                if (d2 >= min_dist_sq) continue;
                const double d = std::sqrt(d2);
                if (d == 0.0) {  // coincident centers: separate along x
                    worst = std::max(worst, min_dist);
                    const double push = 0.5 * min_dist;
                    a.x -= push;
                    b.x += push;
                    continue;
                }
                const double depth = min_dist - d;
                worst = std::max(worst, depth);
                const double push = 0.5 * relax * depth / d;
                a.x -= push * dx;
                a.y -= push * dy;
                b.x += push * dx;
                b.y += push * dy;
            }
        }
        if (worst <= 1e-12) return iter;
    }
    if (max_overlap(robots, body_radius) > kCollisionTolerance)
        throw PathologicalDensity("collision resolution did not converge in " +
                                  std::to_string(kMaxCollisionIterations) + " iterations");
    return kMaxCollisionIterations;
}

/// Sensor reading of every robot against the same snapshot.
inline std::vector<SensorState> sense_all(const WorldState& w, const SensorConfig& sc) {
    std::vector<SensorState> s(w.robots.size());
    for (std::size_t i = 0; i < w.robots.size(); ++i) s[i] = sense(i, w.robots, sc);
    return s;
}

/// One synchronous tick: sense (pre-tick snapshot), control, move, resolve
/// collisions, advance time. `readings`, when given, receives the sensor
/// states that drove the tick.
inline WorldState step_world(const WorldState& w, const TrialConfig& cfg,
                             std::vector<SensorState>* readings = nullptr) {
    std::vector<SensorState> s = sense_all(w, cfg.sensor);
    WorldState next = w;
    for (std::size_t i = 0; i < next.robots.size(); ++i)
        next.robots[i].pose = step_pose(w.robots[i].pose, control(s[i], cfg.params), cfg.robot);
    resolve_collisions(next.robots, cfg.robot.body_radius);
    next.time = w.time + cfg.robot.delta_t;
    if (readings) *readings = std::move(s);
    return next;
}

/// One row of a trajectory log: the pose of a robot at time t and the sensor
/// state it read at that instant.
struct TrajectoryRecord {
    double t = 0.0;
    int robot_id = 0;
    int class_id = 0;
    Pose pose;
    SensorState state = SensorState::None;

    bool operator==(const TrajectoryRecord&) const = default;
};

struct TrialOptions {
    bool record_trajectory = false;
};

struct TrialResult {
    CostSeries cost;
    WorldState final_world;
    std::vector<TrajectoryRecord> trajectory;  // empty unless requested

    bool operator==(const TrialResult&) const = default;
};

/// Runs ceil(duration / delta_t) ticks and samples gamma at each whole
/// simulated second. Pure function of the config.
inline TrialResult run_trial(const TrialConfig& cfg, TrialOptions opts = {}) {
    cfg.validate();
    const double r = cfg.robot.body_radius;
    const double dt = cfg.robot.delta_t;
    const std::size_t ticks = cfg.tick_count();
    const std::size_t samples = cfg.sample_count();

    TrialResult result;
    result.cost.gamma.reserve(samples);
    if (opts.record_trajectory) result.trajectory.reserve((ticks + 1) * cfg.robot_count());

    WorldState world = init_world(cfg);
    std::vector<SensorState> readings;
    auto record = [&](double t, const WorldState& w, const std::vector<SensorState>& s) {
        for (std::size_t i = 0; i < w.robots.size(); ++i)
            result.trajectory.push_back({t, w.robots[i].id, w.robots[i].class_id, w.robots[i].pose, s[i]});
    };

    std::size_t next_sample = 0;
    for (std::size_t n = 0; n < ticks; ++n) {
        const double t = static_cast<double>(n) * dt;
        while (next_sample < samples && t + 1e-9 >= static_cast<double>(next_sample)) {
            result.cost.gamma.push_back(gamma_at(world, r, cfg.metric_epsilon));
            ++next_sample;
        }
        WorldState next = step_world(world, cfg, opts.record_trajectory ? &readings : nullptr);
        if (opts.record_trajectory) record(t, world, readings);
        world = std::move(next);
        world.time = static_cast<double>(n + 1) * dt;
    }
    while (next_sample < samples) {
        result.cost.gamma.push_back(gamma_at(world, r, cfg.metric_epsilon));
        ++next_sample;
    }
    if (opts.record_trajectory) record(world.time, world, sense_all(world, cfg.sensor));

    result.cost.c_total = total_cost(result.cost.gamma);
    result.final_world = std::move(world);
    return result;
}

}  // namespace swarmseg
