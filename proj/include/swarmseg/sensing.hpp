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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "swarmseg/errors.hpp"
#include "swarmseg/kinematics.hpp"
#include "swarmseg/world.hpp"

namespace swarmseg {

/// Ternary sensor output. The numeric value is the controller branch index.
enum class SensorState : std::uint8_t { None = 0, Kin = 1, NonKin = 2 };

/// Which in-beam robot determines the reading.
enum class TargetPolicy { Closest, KinPreferred };

/// Angular slack applied to the beam test so that a zero-width beam still
/// sees robots exactly on the heading ray.
inline constexpr double kBeamTolerance = 1e-12;

inline constexpr double degrees(double deg) { return deg * kPi / 180.0; }

struct SensorConfig {
    double half_beam_angle = degrees(15.0);                      // rad, in [0, pi]
    double max_range = std::numeric_limits<double>::infinity();  // m; 0 means blind
    TargetPolicy policy = TargetPolicy::Closest;

    bool unlimited() const { return std::isinf(max_range); }

    void validate() const {
        if (!(half_beam_angle >= 0.0 && half_beam_angle <= kPi))
            throw ConfigError("sensor.half_beam_angle", "must lie in [0, 180] degrees");
        if (std::isnan(max_range) || max_range < 0.0)
            throw ConfigError("sensor.max_range", "must be >= 0 or unlimited");
    }

    bool operator==(const SensorConfig&) const = default;
};

inline std::string_view to_string(TargetPolicy p) {
    return p == TargetPolicy::Closest ? "closest" : "kin_preferred";
}

inline std::optional<TargetPolicy> parse_policy(std::string_view s) {
    if (s == "closest") return TargetPolicy::Closest;
    if (s == "kin_preferred") return TargetPolicy::KinPreferred;
    return std::nullopt;
}

/// Center distance to `target` if its center lies inside the observer's beam
/// (angular offset from the heading within beta, distance within range).
inline std::optional<double> beam_distance(const Pose& observer, const Pose& target, const SensorConfig& sc) {
    const double dx = target.x - observer.x;
    const double dy = target.y - observer.y;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0 || dist > sc.max_range) return std::nullopt;
    const double offset = normalize_angle(std::atan2(dy, dx) - observer.theta);
    if (std::abs(offset) > sc.half_beam_angle + kBeamTolerance) return std::nullopt;
    return dist;
}

/// Reading of robot `observer` against the snapshot `robots`.
inline SensorState sense(std::size_t observer, std::span<const Robot> robots, const SensorConfig& sc) {
    if (observer >= robots.size())
        throw MalformedWorld("observer index " + std::to_string(observer) + " out of range (" +
                             std::to_string(robots.size()) + " robots)");
    const Robot& self = robots[observer];

    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> nearest;
    bool kin_seen = false;
    for (std::size_t j = 0; j < robots.size(); ++j) {
        if (j == observer) continue;
        const auto d = beam_distance(self.pose, robots[j].pose, sc);
        if (!d) continue;
        const bool kin = robots[j].class_id == self.class_id;
        kin_seen = kin_seen || kin;
        if (*d < best) {  // strict: ties keep the lowest index
            best = *d;
            nearest = j;
        }
    }
    if (!nearest) return SensorState::None;
    if (sc.policy == TargetPolicy::KinPreferred && kin_seen) return SensorState::Kin;
    return robots[*nearest].class_id == self.class_id ? SensorState::Kin : SensorState::NonKin;
}

}  // namespace swarmseg
