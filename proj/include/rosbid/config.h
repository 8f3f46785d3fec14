// Copyright 2026 Google LLC
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

#include <string>
#include <string_view>

#include "rosbid/experiment.h"

namespace rosbid {

// Parses the YAML experiment schema documented in the README. Errors are
// ConfigError with "<source>:<line>:<column>: " prefixes.
ExperimentConfig ParseConfig(std::string_view text,
                             std::string_view source_name = "<config>");

// Reads and parses a file; unreadable files are ConfigError.
ExperimentConfig LoadConfig(const std::string& path);

// Applies ROSBID_SEED if set. Throws ConfigError if it is not an unsigned
// 64-bit integer.
void ApplyEnvironmentOverrides(ExperimentConfig& config);

// Deterministic JSON rendering of every field that affects results
// (output_dir excluded).
std::string CanonicalConfigJson(const ExperimentConfig& config);

// 16 hex digits of FNV-1a over CanonicalConfigJson.
std::string ConfigHash(const ExperimentConfig& config);

std::string_view OracleModeName(OracleMode mode);

}  // namespace rosbid
