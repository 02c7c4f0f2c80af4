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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "nttc/kernels.hpp"

namespace nttc::kernels::avx2 {

namespace {

struct Lanes {
    __m256i q;
    __m256i q_minus_1;
    __m256i r;
    __m128i shift;       // shift - 32 when the wide path is used
    bool wide;
};

inline Lanes make_lanes(const BarrettConstants& c) {
    Lanes l;
    l.q = _mm256_set1_epi64x(static_cast<long long>(c.modulus));
    l.q_minus_1 = _mm256_set1_epi64x(static_cast<long long>(c.modulus - 1));
    l.r = _mm256_set1_epi64x(static_cast<long long>(c.r));
    l.wide = c.shift >= 32;
    l.shift = _mm_cvtsi32_si128(l.wide ? c.shift - 32 : c.shift);
    return l;
}

// x < 2^60, r < 2^32. Returns remainder; quotient estimate and correction
// count through the out-parameters.
inline __m256i reduce(const Lanes& l, __m256i x, __m256i& t, __m256i& corr) {
    const __m256i lo = _mm256_mul_epu32(x, l.r);
    if (l.wide) {
        const __m256i hi = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), l.r);
        t = _mm256_srl_epi64(_mm256_add_epi64(hi, _mm256_srli_epi64(lo, 32)), l.shift);
    } else {
        t = _mm256_srl_epi64(lo, l.shift);
    }
    __m256i rem = _mm256_sub_epi64(x, _mm256_mul_epu32(t, l.q));
    corr = _mm256_setzero_si256();
    for (int k = 0; k < 3; ++k) {
        const __m256i ge = _mm256_cmpgt_epi64(rem, l.q_minus_1);
        rem = _mm256_sub_epi64(rem, _mm256_and_si256(ge, l.q));
        corr = _mm256_sub_epi64(corr, ge);
    }
    return rem;
}

inline __m256i cond_sub(__m256i v, const Lanes& l) {
    const __m256i ge = _mm256_cmpgt_epi64(v, l.q_minus_1);
    return _mm256_sub_epi64(v, _mm256_and_si256(ge, l.q));
}

inline __m128i narrow(__m256i v) {
    const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6);
    return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(v, idx));
}

}  // namespace

void barrett_reduce_batch(const BarrettConstants& c, const u64* x, u64* rem, u64* quot, std::uint8_t* corr,
                          std::size_t count) {
    const Lanes l = make_lanes(c);
    std::size_t i = 0;
    alignas(32) u64 k[4];
    for (; i + 4 <= count; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i t, cv;
        const __m256i r = reduce(l, v, t, cv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(rem + i), r);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(quot + i), _mm256_add_epi64(t, cv));
        _mm256_store_si256(reinterpret_cast<__m256i*>(k), cv);
        for (int j = 0; j < 4; ++j) corr[i + j] = static_cast<std::uint8_t>(k[j]);
    }
    scalar::barrett_reduce_batch(c, x + i, rem + i, quot + i, corr + i, count - i);
}

void ct_butterfly_batch(const BarrettConstants& c, u32* top, u32* bottom, u32 w, std::size_t count) {
    const Lanes l = make_lanes(c);
    const __m256i wv = _mm256_set1_epi64x(w);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i a = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(top + i)));
        const __m256i b = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(bottom + i)));
        __m256i t, cv;
        const __m256i p = reduce(l, _mm256_mul_epu32(b, wv), t, cv);
        const __m256i sum = cond_sub(_mm256_add_epi64(a, p), l);
        const __m256i diff = cond_sub(_mm256_sub_epi64(_mm256_add_epi64(a, l.q), p), l);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(top + i), narrow(sum));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(bottom + i), narrow(diff));
    }
    scalar::ct_butterfly_batch(c, top + i, bottom + i, w, count - i);
}

}  // namespace nttc::kernels::avx2
