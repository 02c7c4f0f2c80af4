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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nttc/modarith.hpp"

namespace nttc {

/// `full` runs log2(N) stages down to length-1 residues; `incomplete` stops one
/// stage early and leaves degree-1 residues (the ML-KEM layout).
enum class Variant { full, incomplete };

enum class Direction { forward, inverse };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

/// Every design-time constant of one ring instance Z_q[X]/(X^N + 1).
///
/// The transform is organised as `stride()` interleaved negacyclic transforms
/// of size M = 2^stages; psi has multiplicative order 2M and omega = psi^2.
struct RingParams {
    u64 modulus = 0;          // Q
    std::size_t length = 0;   // N
    int width = 0;            // ceil(log2 Q)
    u64 barrett_r = 0;        // floor(4^width / Q)
    u64 psi = 0;
    u64 omega = 0;
    int stages = 0;
    u64 inv_scale = 0;        // (2^stages)^-1 mod Q
    Variant variant = Variant::full;

    std::size_t transform_size() const { return std::size_t{1} << stages; }
    std::size_t stride() const { return length >> stages; }
    std::size_t butterflies_per_stage() const { return length / 2; }
    std::size_t butterfly_count() const { return butterflies_per_stage() * static_cast<std::size_t>(stages); }

    bool operator==(const RingParams&) const = default;
};

RingParams derive_params(u64 modulus, std::size_t length, Variant variant);

/// Smallest r in [2, Q-1] of exact multiplicative order `order`; 1 for order 1.
u64 find_root(u64 modulus, u64 order);

std::size_t bit_reverse(std::size_t i, int bits);

struct SchemePreset {
    std::string_view name;
    u64 modulus;
    std::size_t length;
    Variant variant;
};

std::span<const SchemePreset> scheme_presets();
std::optional<SchemePreset> find_preset(std::string_view name);
RingParams preset_params(std::string_view name);

void write_params(std::ostream& os, const RingParams& p);
/// Parses the key-value form produced by write_params and revalidates it.
RingParams read_params(std::istream& is);

// ---------------------------------------------------------------------------
// Twiddle schedules

enum class ScheduleKind {
    forward,       // negacyclic CT flow, psi^bitrev(k)
    inverse,       // position-wise inverses of `forward` (golden GS inverse)
    inverse_mode,  // cyclic CT flow used by the datapath in inverse mode
};

struct TwiddleEntry {
    std::size_t butterfly = 0;
    u64 twiddle = 0;
};

struct TwiddleSchedule {
    ScheduleKind kind = ScheduleKind::forward;
    std::vector<std::vector<TwiddleEntry>> stages;

    std::size_t butterfly_count() const;
};

/// Positions touched by butterfly `b` of stage `s` in the in-place flow.
struct ButterflySlot {
    std::size_t top = 0;
    std::size_t bottom = 0;
    std::size_t group = 0;
};

ButterflySlot butterfly_slot(const RingParams& p, int stage, std::size_t b);

/// Exponent e such that the forward twiddle of (stage, group) is psi^e.
u64 forward_twiddle_exponent(const RingParams& p, int stage, std::size_t group);

TwiddleSchedule twiddle_schedule(const RingParams& p, Direction dir);
TwiddleSchedule inverse_mode_schedule(const RingParams& p);

/// Constant for output lane m*stride + t in inverse mode: M^-1 * psi^-m.
std::vector<u64> inverse_output_scales(const RingParams& p);

/// Lane -> input port mapping the datapath applies in inverse mode.
std::vector<std::size_t> inverse_input_permutation(const RingParams& p);
/// Output lane -> internal lane feeding it in inverse mode.
std::vector<std::size_t> inverse_output_permutation(const RingParams& p);

// ---------------------------------------------------------------------------
// Golden model

using Poly = std::vector<u64>;

/// Natural-order input, bit-reversed output.
Poly ntt_forward(std::span<const u64> coeffs, const RingParams& p);

/// Bit-reversed input, natural-order output, scaled by inv_scale.
/// Gentleman-Sande flow over the position-wise inverse schedule.
Poly ntt_inverse(std::span<const u64> points, const RingParams& p);

/// Inverse computed the way the datapath does it: input bit-reversal, CT flow
/// over inverse_mode_schedule, output permutation and per-lane scaling.
Poly ntt_inverse_via_ct(std::span<const u64> points, const RingParams& p);

Poly negacyclic_mul_schoolbook(std::span<const u64> a, std::span<const u64> b, const RingParams& p);

Poly pointwise_mul(std::span<const u64> ahat, std::span<const u64> bhat, const RingParams& p);

void check_coefficients(std::span<const u64> v, const RingParams& p, std::string_view what);

}  // namespace nttc
