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

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "swarmseg/errors.hpp"
#include "swarmseg/kinematics.hpp"
#include "swarmseg/sensing.hpp"

namespace swarmseg {

/// Wheel speeds per sensor state, laid out as
/// [left^0, right^0, left^1, right^1, left^2, right^2].
struct ControllerParams {
    std::array<double, 6> values{};

    WheelSpeeds branch(SensorState s) const {
        const auto i = 2 * static_cast<std::size_t>(s);
        return {values[i], values[i + 1]};
    }

    void validate() const {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]) || std::abs(values[i]) > 1.0)
                throw ConfigError("params[" + std::to_string(i) + "]", "must lie in [-1, 1]");
    }

    bool operator==(const ControllerParams&) const = default;
};

/// The reactive control law: one wheel-speed pair per sensor state.
inline WheelSpeeds control(SensorState s, const ControllerParams& params) { return params.branch(s); }

/// The best grid-search controller: spin clockwise when alone or facing
/// non-kin, arc counterclockwise (R = l) when facing kin.
inline ControllerParams canonical_controller() {
    return {{1.0, -2.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, 0.0}};
}

/// Parses six comma-separated decimals. Throws ConfigError("params", ...).
inline ControllerParams parse_params(std::string_view text) {
    ControllerParams p;
    std::size_t field = 0;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (field >= 6) throw ConfigError("params", "expected exactly 6 values");
        double v = 0.0;
        const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || end != tok.data() + tok.size() || tok.empty())
            throw ConfigError("params", "value " + std::to_string(field) + " ('" + std::string(tok) +
                                            "') is not a number");
        p.values[field++] = v;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (field != 6) throw ConfigError("params", "expected exactly 6 values, got " + std::to_string(field));
    p.validate();
    return p;
}

/// Six decimal fields in display order, round-trippable.
inline std::string format_params(const ControllerParams& p, char sep = ',') {
    return fmt::format("{:.17g}{}{:.17g}{}{:.17g}{}{:.17g}{}{:.17g}{}{:.17g}", p.values[0], sep, p.values[1], sep,
                       p.values[2], sep, p.values[3], sep, p.values[4], sep, p.values[5]);
}

}  // namespace swarmseg
