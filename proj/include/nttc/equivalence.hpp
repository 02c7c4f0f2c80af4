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
#include <utility>
#include <vector>

#include "nttc/netlist_sim.hpp"
#include "nttc/ring.hpp"

namespace nttc {

struct Mismatch {
    std::size_t vector = 0;  // index into the stimulus set
    bool inverse = false;
    std::size_t cycle = 0;   // output cycle
    std::size_t lane = 0;
    u64 expected = 0;
    u64 got = 0;
};

struct EquivalenceReport {
    u64 seed = 0;
    std::size_t trials = 0;
    std::size_t forward_vectors = 0;
    std::size_t inverse_vectors = 0;
    std::size_t mismatched_vectors = 0;
    std::size_t missing_outputs = 0;
    std::size_t garbled_cycles = 0;
    int latency = -1;
    int ii = 0;
    std::optional<Mismatch> first;
    std::string error;  // simulation abort, e.g. a width overflow

    bool pass() const {
        return error.empty() && mismatched_vectors == 0 && missing_outputs == 0 && garbled_cycles == 0;
    }
};

/// Corner vectors (all zero, all Q-1, unit deltas at lanes 0, 1, N/2, N-1)
/// followed by `trials` seeded random vectors, first in forward mode and
/// then in inverse mode.
std::vector<StimulusVector> equivalence_vectors(const RingParams& p, std::size_t trials, u64 seed);

/// Streams `vectors` back to back and compares every result against the
/// golden forward / inverse transform.
EquivalenceReport check_vectors(const DatapathIR& ir, const RingParams& p, const std::vector<StimulusVector>& vectors);

EquivalenceReport check_equivalence(const DatapathIR& ir, const RingParams& p, std::size_t trials, u64 seed);

/// Streams random vectors through `fwd` in forward mode, feeds the results
/// to `inv` in inverse mode and expects the original vectors back.
EquivalenceReport check_roundtrip(const DatapathIR& fwd, const DatapathIR& inv, const RingParams& p,
                                  std::size_t trials, u64 seed);

void write_report(std::ostream& os, const EquivalenceReport& r,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});

}  // namespace nttc
