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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "nttc/kernels.hpp"
#include "nttc/ring.hpp"

namespace nttc {

/// One pass through the reduction half of the butterfly: the quotient
/// estimate t = (x*R) >> 2n, the raw remainder x - t*Q, and the conditional
/// subtractions needed to land in [0, Q).
struct BarrettTrace {
    u64 x = 0;
    u64 t = 0;
    u64 r_raw = 0;
    int corrections = 0;
    u64 r = 0;
};

struct ButterflyResult {
    u64 a_out = 0;  // A + B*w mod Q
    u64 b_out = 0;  // A - B*w mod Q
    BarrettTrace trace;
};

BarrettTrace barrett_reduce(u64 x, const RingParams& p);

ButterflyResult butterfly_ct(u64 a, u64 b, u64 w, const RingParams& p);

kernels::BarrettConstants barrett_constants(const RingParams& p);

/// Bit widths of the reduction's internal signals, from value ranges over
/// x in [0, (Q-1)^2].
struct BarrettWidths {
    int product = 0;   // x
    int scaled = 0;    // x * R
    int quotient = 0;  // t
};

BarrettWidths barrett_widths(const RingParams& p);

enum class SweepStrategy { exhaustive, sampled };

struct CorrectionSweep {
    SweepStrategy strategy = SweepStrategy::sampled;
    u64 cases = 0;
    u64 unsound = 0;                    // cases where the result is not x mod Q
    std::array<u64, 4> histogram{};     // cases by correction count
    int max_corrections = 0;
    bool proven = false;                // true only for an exhaustive sweep
};

/// Exhaustive sweeps require Q^2 <= 2^32. The sampled sweep covers
/// `samples` uniform draws plus the top band [Q^2 - 2nQ, Q^2) and narrow
/// bands around 1024 evenly spaced multiples of Q.
CorrectionSweep sweep_corrections(const RingParams& p, SweepStrategy strategy, u64 seed = 1,
                                  u64 samples = 10'000'000);

int max_corrections(const RingParams& p, SweepStrategy strategy);

/// Number of correction stages the datapath needs: the exhaustive maximum
/// when Q is small enough to sweep, otherwise the analytic bound of 2.
int correction_stages(const RingParams& p);

/// One line per reduction: x t r_raw corrections r (decimal).
void write_trace(std::ostream& os, const BarrettTrace& t);

/// Forward transform computed with Barrett butterflies through the batched
/// kernels; must match ntt_forward bit for bit.
Poly ntt_forward_barrett(std::span<const u64> coeffs, const RingParams& p,
                         kernels::Isa isa = kernels::active_isa());

}  // namespace nttc
