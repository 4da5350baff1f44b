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

#include <cmath>
#include <vector>

#include "swarmseg/random.hpp"
#include "swarmseg/stats.hpp"

using namespace swarmseg;

TEST(Stats, MeanAndStddev) {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    EXPECT_DOUBLE_EQ(stats::mean(xs), 5.0);
    EXPECT_NEAR(stats::stddev(xs), std::sqrt(32.0 / 7.0), 1e-15);
    EXPECT_EQ(stats::stddev(std::vector<double>{3.0}), 0.0);
}

TEST(Stats, ConfidenceIntervalMatchesTable) {
    // n = 10, t(0.975, 9) to 16 digits (mpmath); the quantile solver is good to ~1e-11
    const std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const stats::Interval ci = stats::confidence_interval(xs);
    const double half = 2.2621571627982055 * stats::stddev(xs) / std::sqrt(10.0);
    EXPECT_NEAR(ci.low, 5.5 - half, 1e-9);
    EXPECT_NEAR(ci.high, 5.5 + half, 1e-9);
}

TEST(Stats, IntervalOverlap) {
    EXPECT_TRUE((stats::Interval{0, 1}.overlaps({1, 2})));
    EXPECT_FALSE((stats::Interval{0, 1}.overlaps({1.5, 2})));
    EXPECT_TRUE((stats::Interval{0, 10}.overlaps({2, 3})));
}

TEST(Stats, PairedTTest) {
    // d = a - b = {-1, -2, -3, -2, -2}: mean -2, sd sqrt(0.5), t = -6.3246, df 4.
    const std::vector<double> a{0, 0, 0, 0, 0}, b{1, 2, 3, 2, 2};
    EXPECT_NEAR(stats::paired_t_test_less(a, b), 0.0015991010761676541, 1e-12);
    EXPECT_GT(stats::paired_t_test_less(b, a), 0.99);
    EXPECT_THROW(stats::paired_t_test_less(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Stats, SpearmanBasics) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(stats::spearman(x, std::vector<double>{1, 8, 27, 64, 125}), 1.0);
    EXPECT_DOUBLE_EQ(stats::spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
    const auto r = stats::ranks(std::vector<double>{10, 20, 20, 30});
    EXPECT_EQ(r, (std::vector<double>{1, 2.5, 2.5, 4}));
}

TEST(Stats, SpearmanInvariantUnderMonotoneMaps) {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> x, y, fy;
        for (int i = 0; i < 20; ++i) {
            x.push_back(rng.normal());
            y.push_back(rng.normal());
            fy.push_back(std::exp(y.back()));
        }
        EXPECT_NEAR(stats::spearman(x, y), stats::spearman(x, fy), 1e-14);
        const double s = stats::spearman(x, y);
        EXPECT_GE(s, -1.0);
        EXPECT_LE(s, 1.0);
    }
}
