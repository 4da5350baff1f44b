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

#include "swarmseg/analysis.hpp"
#include "swarmseg/config_io.hpp"
#include "swarmseg/controller.hpp"
#include "swarmseg/engine.hpp"
#include "swarmseg/errors.hpp"
#include "swarmseg/io.hpp"
#include "swarmseg/kinematics.hpp"
#include "swarmseg/metrics.hpp"
#include "swarmseg/parallel.hpp"
#include "swarmseg/plot.hpp"
#include "swarmseg/random.hpp"
#include "swarmseg/search.hpp"
#include "swarmseg/sensing.hpp"
#include "swarmseg/stats.hpp"
#include "swarmseg/world.hpp"
