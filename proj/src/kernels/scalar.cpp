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

#include "nttc/kernels.hpp"

namespace nttc::kernels::scalar {

namespace {

inline u64 reduce_one(const BarrettConstants& c, u64 x, u64& quot, std::uint8_t& corr) {
    __extension__ const u64 t = static_cast<u64>((static_cast<unsigned __int128>(x) * c.r) >> c.shift);
    u64 r = x - t * c.modulus;
    std::uint8_t k = 0;
    while (k < 3 && r >= c.modulus) {
        r -= c.modulus;
        ++k;
    }
    quot = t + k;
    corr = k;
    return r;
}

}  // namespace

void barrett_reduce_batch(const BarrettConstants& c, const u64* x, u64* rem, u64* quot, std::uint8_t* corr,
                          std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) rem[i] = reduce_one(c, x[i], quot[i], corr[i]);
}

void ct_butterfly_batch(const BarrettConstants& c, u32* top, u32* bottom, u32 w, std::size_t count) {
    const u64 q = c.modulus;
    for (std::size_t i = 0; i < count; ++i) {
        u64 quot;
        std::uint8_t corr;
        const u64 p = reduce_one(c, static_cast<u64>(bottom[i]) * w, quot, corr);
        const u64 a = top[i];
        u64 sum = a + p;
        if (sum >= q) sum -= q;
        u64 diff = a + q - p;
        if (diff >= q) diff -= q;
        top[i] = static_cast<u32>(sum);
        bottom[i] = static_cast<u32>(diff);
    }
}

}  // namespace nttc::kernels::scalar
