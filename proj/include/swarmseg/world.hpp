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

#include <cstddef>
#include <string>
#include <vector>

#include "swarmseg/errors.hpp"
#include "swarmseg/kinematics.hpp"

namespace swarmseg {

struct Robot {
    int id = 0;
    int class_id = 0;
    Pose pose;

    bool operator==(const Robot&) const = default;
};

/// Snapshot of the swarm. Robot ids equal their index in `robots`.
struct WorldState {
    std::vector<Robot> robots;
    double time = 0.0;

    bool operator==(const WorldState&) const = default;

    void validate() const {
        for (std::size_t i = 0; i < robots.size(); ++i) {
            const Robot& rb = robots[i];
            if (rb.id != static_cast<int>(i))
                throw MalformedWorld("robot at index " + std::to_string(i) + " has id " + std::to_string(rb.id));
            if (rb.class_id < 0)
                throw MalformedWorld("robot " + std::to_string(i) + " has negative class id");
            if (!std::isfinite(rb.pose.x) || !std::isfinite(rb.pose.y) || !std::isfinite(rb.pose.theta))
                throw MalformedWorld("robot " + std::to_string(i) + " has a non-finite pose");
        }
    }
};

}  // namespace swarmseg
