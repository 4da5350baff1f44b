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

// Trial configuration files.
//
// A config is a JSON object; every key is optional and defaults to the value
// of a default-constructed TrialConfig:
//
//   {
//     "seed": 1,
//     "params": [1, -0.6666666666666666, 0.3333333333333333, 1, 1, 0],
//     "robot":  {"body_radius": 0.085, "interwheel": 0.14, "v_max": 0.3, "delta_t": 0.1},
//     "sensor": {"half_beam_angle_deg": 15, "max_range": null, "policy": "closest"},
//     "classes": [10, 10, 10],
//     "init":   {"kind": "uniform_random", "side": 5.0},
//     "duration": 100,
//     "metric_epsilon": 0.05
//   }
//
// "params" also accepts the string form "1,-0.6667,0.3333,1,1,0".
// "max_range": null or "unlimited" means no range limit.
// "policy": "closest" | "kin_preferred".
// "init.kind": "uniform_random" {side} | "clusters" {side, sigma} | "lines" {side, pitch}.
// Unknown keys are rejected.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "swarmseg/engine.hpp"
#include "swarmseg/errors.hpp"

namespace swarmseg {

namespace detail {

using json = nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<std::string_view> keys) {
    for (const auto& [k, _] : obj.items()) {
        bool known = false;
        for (auto key : keys) known = known || k == key;
        if (!known) throw ConfigError(prefix + k, "unknown key");
    }
}

inline const json& object_at(const json& obj, const std::string& key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_object()) throw ConfigError(path, "must be an object");
    return v;
}

inline void read_number(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(path, "must be a number");
    out = v.get<double>();
}

}  // namespace detail

inline TrialConfig trial_config_from_json(const nlohmann::json& j) {
    using detail::json;
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
    detail::reject_unknown(j, "", {"seed", "params", "robot", "sensor", "classes", "init", "duration", "metric_epsilon"});

    TrialConfig c;
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned()) throw ConfigError("seed", "must be a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("params")) {
        const json& p = j.at("params");
        if (p.is_string()) {
            c.params = parse_params(p.get<std::string>());
        } else if (p.is_array() && p.size() == 6) {
            for (std::size_t i = 0; i < 6; ++i) {
                if (!p[i].is_number()) throw ConfigError("params[" + std::to_string(i) + "]", "must be a number");
                c.params.values[i] = p[i].get<double>();
            }
        } else {
            throw ConfigError("params", "must be an array of 6 numbers or a comma-separated string");
        }
    }
    if (j.contains("robot")) {
        const json& r = detail::object_at(j, "robot", "robot");
        detail::reject_unknown(r, "robot.", {"body_radius", "interwheel", "v_max", "delta_t"});
        detail::read_number(r, "body_radius", "robot.body_radius", c.robot.body_radius);
        detail::read_number(r, "interwheel", "robot.interwheel", c.robot.interwheel);
        detail::read_number(r, "v_max", "robot.v_max", c.robot.v_max);
        detail::read_number(r, "delta_t", "robot.delta_t", c.robot.delta_t);
    }
    if (j.contains("sensor")) {
        const json& s = detail::object_at(j, "sensor", "sensor");
        detail::reject_unknown(s, "sensor.", {"half_beam_angle_deg", "max_range", "policy"});
        if (s.contains("half_beam_angle_deg")) {
            double deg = 0.0;
            detail::read_number(s, "half_beam_angle_deg", "sensor.half_beam_angle_deg", deg);
            c.sensor.half_beam_angle = degrees(deg);
        }
        if (s.contains("max_range")) {
            const json& m = s.at("max_range");
            if (m.is_null() || (m.is_string() && m.get<std::string>() == "unlimited"))
                c.sensor.max_range = std::numeric_limits<double>::infinity();
            else if (m.is_number())
                c.sensor.max_range = m.get<double>();
            else
                throw ConfigError("sensor.max_range", "must be a number, null or \"unlimited\"");
        }
        if (s.contains("policy")) {
            const json& p = s.at("policy");
            const auto policy = p.is_string() ? parse_policy(p.get<std::string>()) : std::nullopt;
            if (!policy) throw ConfigError("sensor.policy", "must be \"closest\" or \"kin_preferred\"");
            c.sensor.policy = *policy;
        }
    }
    if (j.contains("classes")) {
        const json& cl = j.at("classes");
        if (!cl.is_array()) throw ConfigError("classes", "must be an array of robot counts");
        c.classes.clear();
        for (std::size_t i = 0; i < cl.size(); ++i) {
            if (!cl[i].is_number_integer()) throw ConfigError("classes[" + std::to_string(i) + "]", "must be an integer");
            c.classes.push_back(cl[i].get<int>());
        }
    }
    if (j.contains("init")) {
        const json& in = detail::object_at(j, "init", "init");
        if (!in.contains("kind") || !in.at("kind").is_string()) throw ConfigError("init.kind", "missing or not a string");
        const std::string kind = in.at("kind").get<std::string>();
        if (kind == "uniform_random") {
            detail::reject_unknown(in, "init.", {"kind", "side"});
            UniformRandomInit u;
            detail::read_number(in, "side", "init.side", u.side);
            c.init = u;
        } else if (kind == "clusters") {
            detail::reject_unknown(in, "init.", {"kind", "side", "sigma"});
            ClustersInit k;
            detail::read_number(in, "side", "init.side", k.side);
            detail::read_number(in, "sigma", "init.sigma", k.sigma);
            c.init = k;
        } else if (kind == "lines") {
            detail::reject_unknown(in, "init.", {"kind", "side", "pitch"});
            LinesInit l;
            detail::read_number(in, "side", "init.side", l.side);
            detail::read_number(in, "pitch", "init.pitch", l.pitch);
            c.init = l;
        } else {
            throw ConfigError("init.kind", "unknown kind '" + kind + "'");
        }
    }
    detail::read_number(j, "duration", "duration", c.duration);
    detail::read_number(j, "metric_epsilon", "metric_epsilon", c.metric_epsilon);
    c.validate();
    return c;
}

inline nlohmann::json to_json(const TrialConfig& c) {
    nlohmann::json j;
    j["seed"] = c.seed;
    j["params"] = c.params.values;
    j["robot"] = {{"body_radius", c.robot.body_radius},
                  {"interwheel", c.robot.interwheel},
                  {"v_max", c.robot.v_max},
                  {"delta_t", c.robot.delta_t}};
    j["sensor"] = {{"half_beam_angle_deg", c.sensor.half_beam_angle * 180.0 / kPi},
                   {"max_range", c.sensor.unlimited() ? nlohmann::json(nullptr) : nlohmann::json(c.sensor.max_range)},
                   {"policy", std::string(to_string(c.sensor.policy))}};
    j["classes"] = c.classes;
    nlohmann::json init = {{"kind", std::string(init_kind(c.init))}, {"side", init_side(c.init)}};
    if (const auto* k = std::get_if<ClustersInit>(&c.init)) init["sigma"] = k->sigma;
    if (const auto* l = std::get_if<LinesInit>(&c.init)) init["pitch"] = l->pitch;
    j["init"] = init;
    j["duration"] = c.duration;
    j["metric_epsilon"] = c.metric_epsilon;
    return j;
}

inline TrialConfig parse_trial_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return trial_config_from_json(j);
}

inline TrialConfig load_trial_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_trial_config(text);
}

}  // namespace swarmseg
