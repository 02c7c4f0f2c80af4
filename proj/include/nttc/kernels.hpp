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

// Batched modular-arithmetic kernels. Each operation has a portable scalar
// reference and (on x86-64) an AVX2 variant; the variant is chosen once at
// runtime and can be pinned with NTTC_FORCE_SCALAR=1. Variants must agree
// bit-for-bit with the scalar reference for every input in their domain.

#include <cstdint>
#include <span>
#include <string_view>

namespace nttc::kernels {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct BarrettConstants {
    u64 modulus = 0;
    u64 r = 0;      // floor(2^shift / modulus)
    int shift = 0;  // 2 * width
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

/// For each x < modulus^2: rem = x mod Q, quot = floor(x / Q), corr = number
/// of conditional subtractions taken after the quotient estimate. At most
/// three subtractions are attempted; a larger error shows up as rem >= Q.
void barrett_reduce_batch(const BarrettConstants& c, std::span<const u64> x, std::span<u64> rem,
                          std::span<u64> quot, std::span<std::uint8_t> corr, Isa isa = active_isa());

/// In place: top[j], bottom[j] <- top[j] + w*bottom[j], top[j] - w*bottom[j] (mod Q).
/// All operands < Q.
void ct_butterfly_batch(const BarrettConstants& c, std::span<u32> top, std::span<u32> bottom, u32 w,
                        Isa isa = active_isa());

namespace scalar {
void barrett_reduce_batch(const BarrettConstants& c, const u64* x, u64* rem, u64* quot, std::uint8_t* corr,
                          std::size_t count);
void ct_butterfly_batch(const BarrettConstants& c, u32* top, u32* bottom, u32 w, std::size_t count);
}  // namespace scalar

namespace avx2 {
void barrett_reduce_batch(const BarrettConstants& c, const u64* x, u64* rem, u64* quot, std::uint8_t* corr,
                          std::size_t count);
void ct_butterfly_batch(const BarrettConstants& c, u32* top, u32* bottom, u32 w, std::size_t count);
}  // namespace avx2

}  // namespace nttc::kernels
