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

#include <optional>
#include <string>
#include <vector>

#include "nttc/datapath.hpp"
#include "nttc/errors.hpp"

namespace nttc {

struct StimulusVector {
    std::vector<u64> values;  // one coefficient per lane
    bool inverse = false;
};

/// One entry per clock cycle; an empty entry drives zeros and mode 0.
using Stimulus = std::vector<std::optional<StimulusVector>>;

struct Observation {
    std::size_t cycle = 0;   // cycle the result appeared on dout
    std::size_t source = 0;  // cycle its vector was applied
    std::vector<u64> values;
};

struct SimRun {
    std::vector<Observation> outputs;
    std::size_t cycles = 0;
    /// Output cycles where lanes carried data from different vectors, or a
    /// mix of data and idle values.
    std::size_t garbled = 0;
    int latency = -1;         // cycle - source, when it is the same for every output
    bool latency_consistent = true;
    int ii = 0;               // largest gap between consecutive outputs; 0 with fewer than two
};

/// A value did not fit the declared width of its node (or went negative).
class WidthOverflow : public InvariantViolation {
public:
    WidthOverflow(std::size_t node, NodeTag tag, std::size_t cycle, const std::string& msg)
        : InvariantViolation(msg), node(node), tag(tag), cycle(cycle) {}
    std::size_t node;
    NodeTag tag;
    std::size_t cycle;
};

/// Two-phase cycle simulation starting from all registers at zero. Runs the
/// stimulus followed by `flush` idle cycles (default: latency + 1).
/// Throws InvalidInput for a vector of the wrong arity or a coefficient
/// >= 2^lane_width, WidthOverflow on the first out-of-range node value.
SimRun simulate(const DatapathIR& ir, const Stimulus& stimulus, std::optional<std::size_t> flush = std::nullopt);

/// Applies a fresh random vector (coefficients below `modulus`, alternating
/// modes) every `period` cycles over max(8, 3 * latency) cycles and returns
/// the spacing of the results on dout; 0 if a result went missing.
int measure_ii(const DatapathIR& ir, u64 modulus, u64 seed = 1, std::size_t period = 1);

}  // namespace nttc
