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

#include "nttc/barrett.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "nttc/errors.hpp"

namespace nttc {

BarrettTrace barrett_reduce(u64 x, const RingParams& p) {
    const u64 q = p.modulus;
    if (static_cast<u128>(x) >= static_cast<u128>(q) * q) {
        throw InvalidInput("barrett_reduce: x=" + std::to_string(x) + " not below Q^2");
    }
    BarrettTrace tr;
    tr.x = x;
    tr.t = static_cast<u64>((static_cast<u128>(x) * p.barrett_r) >> (2 * p.width));
    tr.r_raw = x - tr.t * q;
    tr.r = tr.r_raw;
    while (tr.r >= q) {
        tr.r -= q;
        ++tr.corrections;
    }
    return tr;
}

ButterflyResult butterfly_ct(u64 a, u64 b, u64 w, const RingParams& p) {
    const u64 q = p.modulus;
    if (a >= q || b >= q || w >= q) throw InvalidInput("butterfly_ct: operand not below Q");
    ButterflyResult out;
    out.trace = barrett_reduce(b * w, p);
    const u64 prod = out.trace.r;
    out.a_out = a + prod;
    if (out.a_out >= q) out.a_out -= q;
    if (a >= prod) {
        out.b_out = a - prod;
    } else {
        out.b_out = a - prod + q;
    }
    return out;
}

kernels::BarrettConstants barrett_constants(const RingParams& p) {
    return {p.modulus, p.barrett_r, 2 * p.width};
}

BarrettWidths barrett_widths(const RingParams& p) {
    const u128 x_max = static_cast<u128>(p.modulus - 1) * (p.modulus - 1);
    const u128 scaled = x_max * p.barrett_r;
    return {bit_length(x_max), bit_length(scaled), bit_length(scaled >> (2 * p.width))};
}

namespace {

struct SweepAccumulator {
    CorrectionSweep& out;
    kernels::BarrettConstants c;
    std::vector<u64> rem, quot;
    std::vector<std::uint8_t> corr;

    void run(std::span<const u64> xs) {
        rem.resize(xs.size());
        quot.resize(xs.size());
        corr.resize(xs.size());
        kernels::barrett_reduce_batch(c, xs, rem, quot, corr);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            // Division identity: x = quot*Q + rem with 0 <= rem < Q pins rem = x mod Q.
            const bool sound = rem[i] < c.modulus &&
                               static_cast<u128>(quot[i]) * c.modulus + rem[i] == static_cast<u128>(xs[i]);
            if (!sound) ++out.unsound;
            ++out.histogram[corr[i]];
            out.max_corrections = std::max<int>(out.max_corrections, corr[i]);
        }
        out.cases += xs.size();
    }
};

}  // namespace

CorrectionSweep sweep_corrections(const RingParams& p, SweepStrategy strategy, u64 seed, u64 samples) {
    const u64 q = p.modulus;
    const u64 domain = q * q;  // q < 2^30
    CorrectionSweep out;
    out.strategy = strategy;
    SweepAccumulator acc{out, barrett_constants(p), {}, {}, {}};
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<u64> xs;
    xs.reserve(kChunk);
    auto flush = [&] {
        acc.run(xs);
        xs.clear();
    };
    auto push = [&](u64 x) {
        xs.push_back(x);
        if (xs.size() == kChunk) flush();
    };

    if (strategy == SweepStrategy::exhaustive) {
        if (domain > (u64{1} << 32)) {
            throw InvalidInput("exhaustive Barrett sweep refused: Q^2 = " + std::to_string(domain) + " exceeds 2^32");
        }
        for (u64 x = 0; x < domain; ++x) push(x);
        flush();
        out.proven = true;
        return out;
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> dist(0, domain - 1);
    for (u64 i = 0; i < samples; ++i) push(dist(rng));
    const u64 band = 2 * static_cast<u64>(p.width) * q;
    for (u64 x = domain > band ? domain - band : 0; x < domain; ++x) push(x);
    const u64 half = 2 * static_cast<u64>(p.width);
    for (u64 j = 1; j <= 1024; ++j) {
        const u64 k = std::max<u64>(1, (q * j) / 1024);
        const u64 centre = k * q;
        for (u64 x = centre > half ? centre - half : 0; x < std::min(domain, centre + half); ++x) push(x);
    }
    flush();
    return out;
}

int max_corrections(const RingParams& p, SweepStrategy strategy) {
    return sweep_corrections(p, strategy).max_corrections;
}

int correction_stages(const RingParams& p) {
    static std::mutex mu;
    static std::map<u64, int> cache;
    const u64 q = p.modulus;
    if (q * q > (u64{1} << 32)) return 2;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(q); it != cache.end()) return it->second;
    }
    const auto sweep = sweep_corrections(p, SweepStrategy::exhaustive);
    if (sweep.unsound != 0) throw InvariantViolation("Barrett reduction unsound for Q=" + std::to_string(q));
    std::lock_guard lock(mu);
    cache[q] = sweep.max_corrections;
    return sweep.max_corrections;
}

void write_trace(std::ostream& os, const BarrettTrace& t) {
    os << t.x << ' ' << t.t << ' ' << t.r_raw << ' ' << t.corrections << ' ' << t.r << '\n';
}

Poly ntt_forward_barrett(std::span<const u64> coeffs, const RingParams& p, kernels::Isa isa) {
    check_coefficients(coeffs, p, "ntt_forward_barrett");
    const auto c = barrett_constants(p);
    const auto sched = twiddle_schedule(p, Direction::forward);
    std::vector<kernels::u32> a(coeffs.begin(), coeffs.end());
    for (int s = 0; s < p.stages; ++s) {
        const std::size_t len = p.length >> (s + 1);
        const auto& entries = sched.stages[static_cast<std::size_t>(s)];
        for (std::size_t g = 0; g < (std::size_t{1} << s); ++g) {
            const std::size_t start = g * 2 * len;
            const auto w = static_cast<kernels::u32>(entries[g * len].twiddle);
            std::span<kernels::u32> top(a.data() + start, len);
            std::span<kernels::u32> bottom(a.data() + start + len, len);
            kernels::ct_butterfly_batch(c, top, bottom, w, isa);
        }
    }
    return Poly(a.begin(), a.end());
}

}  // namespace nttc
