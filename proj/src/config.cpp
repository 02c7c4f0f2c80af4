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

#include "nttc/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "nttc/errors.hpp"

namespace nttc {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

u64 parse_u64(std::string_view key, std::string_view v) {
    u64 x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || v.empty()) {
        throw InvalidInput("config: '" + std::string(key) + "' expects a non-negative integer, got '" + std::string(v) + "'");
    }
    return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw InvalidInput("config: '" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

}  // namespace

void set_config_value(JobConfig& cfg, std::string_view key, std::string_view value) {
    const std::string_view v = trim(value);
    if (key == "scheme") {
        cfg.scheme = std::string(v);
    } else if (key == "q") {
        cfg.modulus = parse_u64(key, v);
    } else if (key == "n") {
        cfg.length = static_cast<std::size_t>(parse_u64(key, v));
    } else if (key == "variant") {
        cfg.variant = parse_variant(v);
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, v);
    } else if (key == "trials") {
        cfg.trials = static_cast<std::size_t>(parse_u64(key, v));
    } else if (key == "out") {
        cfg.out_dir = std::string(v);
    } else if (key == "max_adder_depth") {
        if (v == "inf") {
            cfg.policy.max_adder_depth = 0;
        } else {
            const u64 d = parse_u64(key, v);
            if (d == 0 || d > 1'000'000) throw InvalidInput("config: max_adder_depth must be >= 1 or 'inf'");
            cfg.policy.max_adder_depth = static_cast<int>(d);
        }
    } else if (key == "register_inputs") {
        cfg.policy.register_inputs = parse_bool(key, v);
    } else if (key == "register_outputs") {
        cfg.policy.register_outputs = parse_bool(key, v);
    } else {
        throw InvalidInput("config: unknown key '" + std::string(key) + "'");
    }
}

JobConfig read_config(std::istream& is) {
    JobConfig cfg;
    std::string line;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput("config line " + std::to_string(number) + ": expected key = value");
        }
        set_config_value(cfg, trim(s.substr(0, eq)), s.substr(eq + 1));
    }
    return cfg;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file '" + path + "'");
    return read_config(in);
}

std::vector<std::pair<std::string, std::string>> config_entries(const JobConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (cfg.scheme) kv.emplace_back("scheme", *cfg.scheme);
    if (cfg.modulus) kv.emplace_back("q", std::to_string(*cfg.modulus));
    if (cfg.length) kv.emplace_back("n", std::to_string(*cfg.length));
    if (cfg.variant) kv.emplace_back("variant", std::string(to_string(*cfg.variant)));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("trials", std::to_string(cfg.trials));
    kv.emplace_back("max_adder_depth",
                    cfg.policy.max_adder_depth == 0 ? "inf" : std::to_string(cfg.policy.max_adder_depth));
    kv.emplace_back("register_inputs", cfg.policy.register_inputs ? "true" : "false");
    kv.emplace_back("register_outputs", cfg.policy.register_outputs ? "true" : "false");
    return kv;
}

ResolvedJob resolve_job(const JobConfig& cfg) {
    if (cfg.scheme) {
        const auto preset = find_preset(*cfg.scheme);
        if (!preset) throw InvalidInput("unknown scheme '" + *cfg.scheme + "'");
        if ((cfg.modulus && *cfg.modulus != preset->modulus) || (cfg.length && *cfg.length != preset->length) ||
            (cfg.variant && *cfg.variant != preset->variant)) {
            throw InvalidInput("explicit parameters conflict with scheme '" + *cfg.scheme + "'");
        }
        return {std::string(preset->name), derive_params(preset->modulus, preset->length, preset->variant)};
    }
    if (!cfg.modulus || !cfg.length) throw InvalidInput("give --scheme, or both --q and --n");
    const RingParams p = derive_params(*cfg.modulus, *cfg.length, cfg.variant.value_or(Variant::full));
    return {"q" + std::to_string(p.modulus), p};
}

std::string output_directory(const JobConfig& cfg) {
    if (cfg.out_dir) return *cfg.out_dir;
    if (const char* env = std::getenv(std::string(kOutDirEnv).c_str()); env != nullptr && *env != '\0') return env;
    return ".";
}

}  // namespace nttc
