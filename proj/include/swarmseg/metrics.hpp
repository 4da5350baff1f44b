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
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "swarmseg/world.hpp"

namespace swarmseg {

/// Relative slack on the adjacency threshold so that robots placed exactly
/// 2r + eps apart stay connected despite rounding in their coordinates.
inline constexpr double kAdjacencySlack = 1e-12;

struct ClassClusters {
    int class_id = 0;
    std::vector<int> sizes;  // descending
    int total = 0;

    int largest() const { return sizes.empty() ? 0 : sizes.front(); }
};

/// Per-class connected components, ordered by ascending class id.
struct ClusterReport {
    std::vector<ClassClusters> classes;
};

/// Kin robots i, j are adjacent iff |p_i - p_j| <= 2r + eps. Clusters are the
/// connected components of that relation within each class, found with an
/// explicit adjacency matrix and depth-first search.
inline ClusterReport find_clusters(std::span<const Robot> robots, double body_radius, double epsilon) {
    const double threshold = (2.0 * body_radius + epsilon) * (1.0 + kAdjacencySlack);

    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < robots.size(); ++i) members[robots[i].class_id].push_back(i);

    ClusterReport report;
    std::vector<char> adjacent;
    std::vector<char> visited;
    std::vector<std::size_t> stack;
    for (const auto& [cls, idx] : members) {
        const std::size_t n = idx.size();
        adjacent.assign(n * n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                const Pose& pa = robots[idx[a]].pose;
                const Pose& pb = robots[idx[b]].pose;
                if (std::hypot(pa.x - pb.x, pa.y - pb.y) <= threshold) adjacent[a * n + b] = adjacent[b * n + a] = 1;
            }

        ClassClusters cc{cls, {}, static_cast<int>(n)};
        visited.assign(n, 0);
        for (std::size_t s = 0; s < n; ++s) {
            if (visited[s]) continue;
            int size = 0;
            stack.assign(1, s);
            visited[s] = 1;
            while (!stack.empty()) {
                const std::size_t u = stack.back();
                stack.pop_back();
                ++size;
                for (std::size_t v = 0; v < n; ++v)
                    if (adjacent[u * n + v] && !visited[v]) {
                        visited[v] = 1;
                        stack.push_back(v);
                    }
            }
            cc.sizes.push_back(size);
        }
        std::sort(cc.sizes.begin(), cc.sizes.end(), std::greater<>());
        report.classes.push_back(std::move(cc));
    }
    return report;
}

/// Mean over classes of -c_i / C_i, where c_i is the largest cluster of class i.
inline double gamma_of(const ClusterReport& report) {
    if (report.classes.empty()) return 0.0;
    std::vector<double> terms;
    terms.reserve(report.classes.size());
    for (const auto& c : report.classes) terms.push_back(-static_cast<double>(c.largest()) / c.total);
    // Summing in sorted order makes the result exactly invariant to class relabeling.
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum / static_cast<double>(terms.size());
}

inline double gamma_at(const WorldState& w, double body_radius, double epsilon) {
    return gamma_of(find_clusters(w.robots, body_radius, epsilon));
}

/// Time-weighted cost: sum over whole seconds t of t * gamma(t).
inline double total_cost(std::span<const double> gamma) {
    double c = 0.0;
    for (std::size_t t = 0; t < gamma.size(); ++t) c += static_cast<double>(t) * gamma[t];
    return c;
}

struct CostSeries {
    std::vector<double> gamma;  // indexed by whole simulated second
    double c_total = 0.0;

    bool operator==(const CostSeries&) const = default;
};

}  // namespace swarmseg
