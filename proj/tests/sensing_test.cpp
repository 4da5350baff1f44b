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
#include <cmath>
#include <limits>
#include <vector>

#include "swarmseg/random.hpp"
#include "swarmseg/sensing.hpp"

using namespace swarmseg;

namespace {

SensorConfig beam(double deg, double range = std::numeric_limits<double>::infinity(),
                  TargetPolicy policy = TargetPolicy::Closest) {
    return {degrees(deg), range, policy};
}

std::vector<Robot> random_world(Rng& rng, int n, int classes) {
    std::vector<Robot> w;
    for (int i = 0; i < n; ++i)
        w.push_back({i, static_cast<int>(rng.uniform01() * classes), {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.heading()}});
    return w;
}

// Candidate set computed directly from the geometric definition.
std::vector<std::size_t> candidates(const std::vector<Robot>& w, std::size_t obs, const SensorConfig& sc) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < w.size(); ++j)
        if (j != obs && beam_distance(w[obs].pose, w[j].pose, sc)) out.push_back(j);
    return out;
}

}  // namespace

TEST(Sense, KinDirectlyAhead) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 0, {0.5, 0, kPi}}};
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::Kin);
}

TEST(Sense, NonKinDirectlyAhead) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 1, {0.5, 0, 0}}};
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::NonKin);
}

TEST(Sense, RobotBehindIsInvisible) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 0, {-1.0, 0, 0}}};
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::None);
}

TEST(Sense, PolicyDecidesBetweenNearNonKinAndFarKin) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 1, {1.0, 0.0, 0}}, {2, 0, {2.0, 0.05, 0}}};
    EXPECT_EQ(sense(0, w, beam(15, std::numeric_limits<double>::infinity(), TargetPolicy::Closest)),
              SensorState::NonKin);
    EXPECT_EQ(sense(0, w, beam(15, std::numeric_limits<double>::infinity(), TargetPolicy::KinPreferred)),
              SensorState::Kin);
}

TEST(Sense, RangeLimit) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 0, {2.0, 0, 0}}};
    EXPECT_EQ(sense(0, w, beam(15, 1.99)), SensorState::None);
    EXPECT_EQ(sense(0, w, beam(15, 2.0)), SensorState::Kin);
    EXPECT_EQ(sense(0, w, beam(15, 0.0)), SensorState::None);
}

TEST(Sense, BeamEdgeIsInclusive) {
    const double a = degrees(15);
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 0, {std::cos(a), std::sin(a) * (1 - 1e-9), 0}}};
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::Kin);
    const std::vector<Robot> out{{0, 0, {0, 0, 0}}, {1, 0, {std::cos(a), std::sin(a) * 1.001, 0}}};
    EXPECT_EQ(sense(0, out, beam(15)), SensorState::None);
}

TEST(Sense, ZeroBeamIsAThinRay) {
    const std::vector<Robot> on{{0, 1, {0, 0, 0.3}}, {1, 1, {std::cos(0.3) * 2, std::sin(0.3) * 2, 0}}};
    EXPECT_EQ(sense(0, on, beam(0)), SensorState::Kin);
    const std::vector<Robot> off{{0, 1, {0, 0, 0}}, {1, 1, {2.0, 1e-9, 0}}};
    EXPECT_EQ(sense(0, off, beam(0)), SensorState::None);
}

TEST(Sense, TiesGoToLowestIndex) {
    // Two robots at the same distance, symmetric about the heading.
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}, {1, 1, {1.0, 0.1, 0}}, {2, 0, {1.0, -0.1, 0}}};
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::NonKin);
    const std::vector<Robot> swapped{{0, 0, {0, 0, 0}}, {1, 0, {1.0, 0.1, 0}}, {2, 1, {1.0, -0.1, 0}}};
    EXPECT_EQ(sense(0, swapped, beam(15)), SensorState::Kin);
}

TEST(Sense, InvalidObserverIsAnError) {
    const std::vector<Robot> w{{0, 0, {0, 0, 0}}};
    EXPECT_THROW(sense(1, w, beam(15)), MalformedWorld);
    EXPECT_EQ(sense(0, w, beam(15)), SensorState::None);
}

TEST(SenseProperties, WiderBeamNeverLosesCandidates) {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_world(rng, 15, 3);
        const double narrow = rng.uniform(0, 90), wide = narrow + rng.uniform(0, 90);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto a = candidates(w, i, beam(narrow));
            const auto b = candidates(w, i, beam(wide));
            EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
            if (!a.empty()) {
                EXPECT_NE(sense(i, w, beam(wide)), SensorState::None);
            }
        }
    }
}

TEST(SenseProperties, FiniteRangeEqualsUnlimitedRestrictedToRadius) {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto w = random_world(rng, 12, 2);
        const double range = rng.uniform(0.1, 4.0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::vector<Robot> restricted;
            for (const Robot& r : w)
                if (r.id == static_cast<int>(i) ||
                    std::hypot(r.pose.x - w[i].pose.x, r.pose.y - w[i].pose.y) <= range)
                    restricted.push_back(r);
            const auto self = static_cast<std::size_t>(
                std::find_if(restricted.begin(), restricted.end(), [&](const Robot& r) { return r.id == static_cast<int>(i); }) -
                restricted.begin());
            EXPECT_EQ(sense(i, w, beam(30, range)), sense(self, restricted, beam(30)));
        }
    }
}

TEST(SenseProperties, PoliciesAgreeWhenNearestIsKin) {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_world(rng, 15, 3);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const SensorState closest = sense(i, w, beam(20));
            if (closest == SensorState::Kin) {
                EXPECT_EQ(sense(i, w, beam(20, std::numeric_limits<double>::infinity(), TargetPolicy::KinPreferred)),
                          SensorState::Kin);
            }
        }
    }
}

TEST(SensorConfig, Validation) {
    EXPECT_NO_THROW(beam(15).validate());
    EXPECT_NO_THROW(beam(180).validate());
    EXPECT_THROW(beam(-1).validate(), ConfigError);
    EXPECT_THROW(beam(181).validate(), ConfigError);
    EXPECT_THROW(beam(15, -1.0).validate(), ConfigError);
}
