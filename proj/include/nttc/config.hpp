/*
 * Copyright 2026 The nttc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nttc/datapath.hpp"
#include "nttc/ring.hpp"

namespace nttc {

inline constexpr std::string_view kOutDirEnv = "NTTC_OUT_DIR";

/// One job. Either `scheme` names a preset, or `modulus` and `length` give
/// an explicit ring; fields set alongside a preset must agree with it.
struct JobConfig {
    std::optional<std::string> scheme;
    std::optional<u64> modulus;
    std::optional<std::size_t> length;
    std::optional<Variant> variant;
    u64 seed = 1;
    std::size_t trials = 1000;
    std::optional<std::string> out_dir;
    PipelinePolicy policy;
};

/// `key = value` lines, '#' comments. Keys: scheme, q, n, variant, seed,
/// trials, out, max_adder_depth (integer or "inf"), register_inputs,
/// register_outputs.
JobConfig read_config(std::istream& is);
JobConfig load_config(const std::string& path);
void set_config_value(JobConfig& cfg, std::string_view key, std::string_view value);

/// Canonical key-value form; reports embed it.
std::vector<std::pair<std::string, std::string>> config_entries(const JobConfig& cfg);

struct ResolvedJob {
    std::string name;  // preset name, or "q<Q>"
    RingParams params;
};

ResolvedJob resolve_job(const JobConfig& cfg);

/// Flag (or config) value first, then the environment override, then ".".
std::string output_directory(const JobConfig& cfg);

}  // namespace nttc
