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

#include "nttc/vectors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace nttc {

void write_vectors(std::ostream& os, const std::vector<std::vector<u64>>& vectors) {
    char buf[32];
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto res = std::to_chars(buf, buf + sizeof buf, v[i], 16);
            if (i != 0) os << ' ';
            os << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
        }
        os << '\n';
    }
}

std::vector<std::vector<u64>> read_vectors(std::istream& is, std::size_t lanes) {
    std::vector<std::vector<u64>> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(is, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string tok;
        auto bad = [&](const std::string& why) {
            return InvalidInput("vectors line " + std::to_string(number) + ": " + why);
        };
        std::vector<u64> v;
        while (ss >> tok) {
            u64 x = 0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x, 16);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) throw bad("bad hex value '" + tok + "'");
            v.push_back(x);
        }
        if (v.empty()) continue;
        if (v.size() != lanes) {
            throw bad("expected " + std::to_string(lanes) + " values, got " + std::to_string(v.size()));
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace nttc
