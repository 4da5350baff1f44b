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

#include <cmath>
#include <limits>
#include <numbers>

#include "swarmseg/errors.hpp"

namespace swarmseg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Below this |v_right - v_left| the motion is treated as a straight segment.
inline constexpr double kStraightThreshold = 1e-12;

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
    a = std::remainder(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    return a;
}

/// Planar pose; theta is counterclockwise from +x, kept in (-pi, pi].
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    bool operator==(const Pose&) const = default;
};

/// Physical description of a robot. Defaults are foot-bot scale.
struct RobotCharacteristics {
    double body_radius = 0.085;  // m
    double interwheel = 0.14;    // m
    double v_max = 0.3;          // m/s
    double delta_t = 0.1;        // s, control period

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!std::isfinite(v) || v <= 0.0)
                throw ConfigError(name, "must be finite and > 0");
        };
        positive(body_radius, "robot.body_radius");
        positive(interwheel, "robot.interwheel");
        positive(v_max, "robot.v_max");
        positive(delta_t, "robot.delta_t");
        if (interwheel > 2.0 * body_radius)
            throw ConfigError("robot.interwheel", "wheels must lie inside the body (interwheel <= 2*body_radius)");
    }

    bool operator==(const RobotCharacteristics&) const = default;
};

/// Normalized wheel speeds in [-1, 1].
struct WheelSpeeds {
    double left = 0.0;
    double right = 0.0;

    bool valid() const {
        return std::isfinite(left) && std::isfinite(right) && std::abs(left) <= 1.0 &&
               std::abs(right) <= 1.0;
    }

    bool operator==(const WheelSpeeds&) const = default;
};

/// Wheel surface speeds in m/s.
struct PhysicalSpeeds {
    double left = 0.0;
    double right = 0.0;
};

/// Instantaneous circle of motion. A straight line has infinite radius and
/// zero angular rate.
struct ArcGeometry {
    double radius = std::numeric_limits<double>::infinity();  // signed, m
    double omega = 0.0;                                       // rad/s

    bool straight() const { return std::isinf(radius); }
};

inline PhysicalSpeeds to_physical(WheelSpeeds w, const RobotCharacteristics& rc) {
    return {rc.v_max * w.left, rc.v_max * w.right};
}

/// Signed radius of curvature (positive: ICC on the left) and angular rate.
inline ArcGeometry arc_geometry(WheelSpeeds w, const RobotCharacteristics& rc) {
    const double diff = w.right - w.left;
    if (std::abs(diff) < kStraightThreshold) return {};
    return {0.5 * rc.interwheel * (w.right + w.left) / diff, rc.v_max * diff / rc.interwheel};
}

/// Advances a pose by exactly one control period along the circular arc
/// defined by the wheel speeds. Uses the chord form
///   d = v*dt*sinc(dtheta/2), displacement along theta + dtheta/2
/// which is exact for constant wheel speeds and well-conditioned near R = inf.
inline Pose step_pose(const Pose& p, WheelSpeeds w, const RobotCharacteristics& rc, double dt) {
    const double v = 0.5 * rc.v_max * (w.left + w.right);
    const double diff = w.right - w.left;
    if (std::abs(diff) < kStraightThreshold) {
        const double d = rc.v_max * w.left * dt;
        return {p.x + d * std::cos(p.theta), p.y + d * std::sin(p.theta), p.theta};
    }
    const double dtheta = rc.v_max * diff / rc.interwheel * dt;
    const double half = 0.5 * dtheta;
    const double chord = v * dt * (std::sin(half) / half);
    const double mid = p.theta + half;
    return {p.x + chord * std::cos(mid), p.y + chord * std::sin(mid), normalize_angle(p.theta + dtheta)};
}

inline Pose step_pose(const Pose& p, WheelSpeeds w, const RobotCharacteristics& rc) {
    return step_pose(p, w, rc, rc.delta_t);
}

}  // namespace swarmseg
