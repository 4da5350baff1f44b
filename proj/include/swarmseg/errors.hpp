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

#include <stdexcept>
#include <string>
#include <utility>

namespace swarmseg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value violates its contract. `field()` names the offender
/// using a dotted path such as "robot.v_max".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Runtime failure inside the simulator (as opposed to bad input).
class SimulationError : public Error {
public:
    using Error::Error;
};

class OvercrowdedArena : public SimulationError {
public:
    using SimulationError::SimulationError;
};

class PathologicalDensity : public SimulationError {
public:
    using SimulationError::SimulationError;
};

class MalformedWorld : public SimulationError {
public:
    using SimulationError::SimulationError;
};

class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

}  // namespace swarmseg
