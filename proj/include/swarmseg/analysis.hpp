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
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "swarmseg/controller.hpp"
#include "swarmseg/errors.hpp"
#include "swarmseg/kinematics.hpp"
#include "swarmseg/sensing.hpp"

namespace swarmseg {

// ---------------------------------------------------------------------------
// Approach conditions
//
// A robot heading straight at a kin at center distance D and turning on a
// circle of radius |R| keeps closing in until it has swept the limit angle
//   theta_bar = 2 atan(D / |R|),
// where it reaches the mirror image of its start across the line joining the
// ICC and the kin. Requiring |omega| dt <= theta_bar at the closest admissible
// distance D = sqrt(3) r yields one bound on v_max * dt per sensor branch.
// ---------------------------------------------------------------------------

/// Label of the approach condition tied to a sensor branch ("S0", "S1", "S2").
inline std::string_view condition_name(SensorState s) {
    constexpr std::array<std::string_view, 3> names{"S0", "S1", "S2"};
    return names[static_cast<std::size_t>(s)];
}

inline constexpr std::array<SensorState, 3> kAllBranches{SensorState::None, SensorState::Kin, SensorState::NonKin};

/// Worst-case center distance used by the approach conditions.
inline double closest_approach_distance(double body_radius) { return std::numbers::sqrt3 * body_radius; }

/// Arc angle after which a robot starts receding from the kin.
inline double limit_angle(double distance, double radius) {
    if (!(distance > 0.0) || !std::isfinite(distance))
        throw DegenerateGeometry("limit_angle: distance must be finite and > 0");
    if (radius == 0.0 || !std::isfinite(radius))
        throw DegenerateGeometry("limit_angle: radius must be finite and nonzero");
    return 2.0 * std::atan(distance / std::abs(radius));
}

/// Maximum admissible v_max * dt per branch of the canonical controller.
struct ConditionBounds {
    double s0 = 0.0;  // nothing detected, speeds (1, -2/3)
    double s1 = 0.0;  // kin detected, speeds (1/3, 1)
    double s2 = 0.0;  // non-kin detected, speeds (1, 0)
    SensorState strictest = SensorState::None;

    double bound(SensorState s) const {
        switch (s) {
            case SensorState::None: return s0;
            case SensorState::Kin: return s1;
            case SensorState::NonKin: return s2;
        }
        return 0.0;
    }
};

/// Closed forms for the canonical controller:
///   S1: v dt <= 3 l atan(sqrt3 r / l)
///   S0: v dt <= 6/5 l atan(10 sqrt3 r / l)
///   S2: v dt <= 2 l atan(2 sqrt3 r / l)
inline ConditionBounds condition_bounds(double body_radius, double interwheel) {
    const double x = std::numbers::sqrt3 * body_radius / interwheel;
    ConditionBounds b;
    b.s1 = 3.0 * interwheel * std::atan(x);
    b.s0 = 1.2 * interwheel * std::atan(10.0 * x);
    b.s2 = 2.0 * interwheel * std::atan(2.0 * x);
    b.strictest = SensorState::None;
    if (b.s1 < b.bound(b.strictest)) b.strictest = SensorState::Kin;
    if (b.s2 < b.bound(b.strictest)) b.strictest = SensorState::NonKin;
    return b;
}

inline ConditionBounds condition_bounds(const RobotCharacteristics& rc) {
    return condition_bounds(rc.body_radius, rc.interwheel);
}

/// The same bound for arbitrary (turning) wheel speeds:
/// theta_bar(sqrt3 r, R) * l / |v_right - v_left|.
inline double approach_bound(WheelSpeeds w, double body_radius, double interwheel) {
    const RobotCharacteristics unit{body_radius, interwheel, 1.0, 1.0};
    const ArcGeometry arc = arc_geometry(w, unit);
    if (arc.straight()) return std::numeric_limits<double>::infinity();
    if (arc.radius == 0.0) return kPi * interwheel / std::abs(w.right - w.left);  // in place: any turn < pi closes in
    return limit_angle(closest_approach_distance(body_radius), arc.radius) * interwheel / std::abs(w.right - w.left);
}

namespace detail {

/// Center distance to a kin at (D, 0) after one step from the origin with the
/// given heading and per-step travel v_max * dt = travel.
inline double distance_after_step(const RobotCharacteristics& rc, WheelSpeeds w, double travel, double heading,
                                  double D) {
    RobotCharacteristics scaled = rc;
    scaled.v_max = travel / rc.delta_t;
    const Pose p = step_pose({0.0, 0.0, heading}, w, scaled);
    return std::hypot(p.x - D, p.y);
}

}  // namespace detail

/// Outcome of testing one approach condition numerically.
struct ConditionValidation {
    SensorState branch = SensorState::None;
    double bound = 0.0;        // closed-form limit on v_max * dt
    double margin = 0.0;
    double initial_distance = 0.0;
    double satisfied_distance = 0.0;  // heading at kin, travel = bound * (1 - margin)
    double violated_distance = 0.0;   // heading at kin, travel = bound * (1 + margin)
    double violated_max_increase = 0.0;  // max over the heading sweep at (1 + margin)
    int violated_increasing_headings = 0;
    double boundary_distance = 0.0;   // heading at kin, travel = bound exactly
    double simulated_bound = 0.0;     // travel at which the one-step arc ends on the limit point

    bool satisfied_decreases() const { return satisfied_distance < initial_distance; }
    bool violated_increases() const { return violated_increasing_headings > 0; }
    double boundary_error() const { return std::abs(boundary_distance - initial_distance); }
    double bound_relative_error() const { return std::abs(simulated_bound - bound) / bound; }
};

/// Travel per step at which a robot heading at the kin ends exactly at the
/// limit point, found by bisection on the simulated one-step arc.
inline double simulated_limit_travel(const RobotCharacteristics& rc, WheelSpeeds w) {
    const double D = closest_approach_distance(rc.body_radius);
    const double diff = std::abs(w.right - w.left);
    if (diff < kStraightThreshold) return std::numeric_limits<double>::infinity();
    double lo = 0.0;
    double hi = kPi * rc.interwheel / diff;  // a half turn always ends farther away
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (detail::distance_after_step(rc, w, mid, 0.0, D) < D)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Places a robot at the worst-case distance sqrt(3) r from a kin and applies
/// one step of the canonical branch at (1 -/+ margin) times the closed-form
/// bound. Robots are treated as points; no collision handling.
inline ConditionValidation validate_condition_by_simulation(const RobotCharacteristics& rc, SensorState branch,
                                                            double margin, int heading_samples = 360) {
    if (!(margin > 0.0 && margin < 1.0)) throw ConfigError("margin", "must lie in (0, 1)");
    const WheelSpeeds w = control(branch, canonical_controller());
    const double D = closest_approach_distance(rc.body_radius);

    ConditionValidation v;
    v.branch = branch;
    v.bound = condition_bounds(rc).bound(branch);
    v.margin = margin;
    v.initial_distance = D;
    v.satisfied_distance = detail::distance_after_step(rc, w, v.bound * (1.0 - margin), 0.0, D);
    v.violated_distance = detail::distance_after_step(rc, w, v.bound * (1.0 + margin), 0.0, D);
    v.boundary_distance = detail::distance_after_step(rc, w, v.bound, 0.0, D);
    v.violated_max_increase = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < heading_samples; ++k) {
        const double heading = normalize_angle(kTwoPi * k / heading_samples);
        const double inc = detail::distance_after_step(rc, w, v.bound * (1.0 + margin), heading, D) - D;
        v.violated_max_increase = std::max(v.violated_max_increase, inc);
        if (inc > 0.0) ++v.violated_increasing_headings;
    }
    v.simulated_bound = simulated_limit_travel(rc, w);
    return v;
}

// ---------------------------------------------------------------------------
// Heatmap marginals of a six-dimensional sweep
// ---------------------------------------------------------------------------

struct SweepSample {
    ControllerParams params;
    double mean_cost = 0.0;
};

/// Mean cost over every sample sharing a (params[first], params[second]) cell.
/// Rows follow `first` ascending, columns follow `second` ascending.
struct MarginalTable {
    int first = 0;
    int second = 1;
    std::vector<double> row_values;
    std::vector<double> col_values;
    std::vector<double> sum;
    std::vector<int> count;

    std::size_t rows() const { return row_values.size(); }
    std::size_t cols() const { return col_values.size(); }
    bool populated(std::size_t i, std::size_t j) const { return count[i * cols() + j] > 0; }
    double mean(std::size_t i, std::size_t j) const {
        const int n = count[i * cols() + j];
        return n > 0 ? sum[i * cols() + j] / n : std::numeric_limits<double>::quiet_NaN();
    }
};

/// The 15 unordered parameter pairs, (0,1), (0,2), ..., (4,5).
inline std::vector<MarginalTable> heatmap_marginals(std::span<const SweepSample> samples) {
    if (samples.empty()) throw ConfigError("samples", "heatmap needs at least one sweep result");
    std::array<std::vector<double>, 6> axis;
    for (std::size_t a = 0; a < 6; ++a) {
        for (const auto& s : samples) axis[a].push_back(s.params.values[a]);
        std::sort(axis[a].begin(), axis[a].end());
        axis[a].erase(std::unique(axis[a].begin(), axis[a].end()), axis[a].end());
    }
    auto index_of = [&](std::size_t a, double v) {
        return static_cast<std::size_t>(std::lower_bound(axis[a].begin(), axis[a].end(), v) - axis[a].begin());
    };

    std::vector<MarginalTable> tables;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            MarginalTable t;
            t.first = a;
            t.second = b;
            t.row_values = axis[a];
            t.col_values = axis[b];
            t.sum.assign(t.rows() * t.cols(), 0.0);
            t.count.assign(t.rows() * t.cols(), 0);
            for (const auto& s : samples) {
                const std::size_t cell = index_of(a, s.params.values[a]) * t.cols() + index_of(b, s.params.values[b]);
                t.sum[cell] += s.mean_cost;
                ++t.count[cell];
            }
            tables.push_back(std::move(t));
        }
    return tables;
}

}  // namespace swarmseg
