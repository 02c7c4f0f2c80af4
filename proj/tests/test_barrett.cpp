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

#include <doctest.h>

#include <random>
#include <sstream>

#include "nttc/barrett.hpp"
#include "nttc/errors.hpp"
#include "oracles.hpp"

using namespace nttc;

TEST_SUITE("barrett") {

TEST_CASE("trace fields obey the division identity") {
    std::mt19937_64 rng(21);
    for (const char* name : {"kyber", "dilithium", "falcon512"}) {
        const RingParams p = preset_params(name);
        const u64 q = p.modulus;
        std::uniform_int_distribution<u64> d(0, q * q - 1);
        for (int i = 0; i < 20000; ++i) {
            const u64 x = i < 100 ? q * q - 1 - static_cast<u64>(i) : d(rng);
            const BarrettTrace t = barrett_reduce(x, p);
            CHECK(t.r == x % q);
            CHECK(t.t == static_cast<u64>((static_cast<boost::multiprecision::uint128_t>(x) * p.barrett_r) >> (2 * p.width)));
            CHECK(t.r_raw == x - t.t * q);
            CHECK(t.r_raw == t.r + static_cast<u64>(t.corrections) * q);
            CHECK(t.corrections <= 2);
        }
    }
}

TEST_CASE("reduction rejects x >= Q^2") {
    const RingParams p = preset_params("kyber");
    CHECK_THROWS_AS(barrett_reduce(3329ull * 3329ull, p), InvalidInput);
    CHECK_NOTHROW(barrett_reduce(3329ull * 3329ull - 1, p));
}

TEST_CASE("kyber exhaustive sweep is sound") {
    const RingParams p = preset_params("kyber");
    const CorrectionSweep s = sweep_corrections(p, SweepStrategy::exhaustive);
    CHECK(s.proven);
    CHECK(s.cases == 3329ull * 3329ull);
    CHECK(s.unsound == 0);
    CHECK(s.max_corrections <= 2);
    u64 total = 0;
    for (auto h : s.histogram) total += h;
    CHECK(total == s.cases);
    CHECK(correction_stages(p) == s.max_corrections);
}

TEST_CASE("toy exhaustive sweep against the oracle") {
    const RingParams p = derive_params(17, 8, Variant::full);
    int worst = 0;
    for (u64 x = 0; x < 17 * 17; ++x) {
        const u64 t = (x * oracle::barrett_r(17, 5)) >> 10;
        u64 r = x - t * 17;
        int k = 0;
        while (r >= 17) {
            r -= 17;
            ++k;
        }
        worst = std::max(worst, k);
        CHECK(barrett_reduce(x, p).corrections == k);
    }
    CHECK(max_corrections(p, SweepStrategy::exhaustive) == worst);
}

TEST_CASE("exhaustive sweep refuses moduli that are too large") {
    CHECK_THROWS_AS(sweep_corrections(preset_params("dilithium"), SweepStrategy::exhaustive), InvalidInput);
}

TEST_CASE("dilithium sampled sweep including boundary bands") {
    const RingParams p = preset_params("dilithium");
    const CorrectionSweep s = sweep_corrections(p, SweepStrategy::sampled, 7, 200000);
    CHECK_FALSE(s.proven);
    CHECK(s.cases > 200000);
    CHECK(s.unsound == 0);
    CHECK(s.max_corrections <= 2);
    CHECK(correction_stages(p) == 2);
}

TEST_CASE("signal widths") {
    const RingParams p = preset_params("dilithium");
    const BarrettWidths w = barrett_widths(p);
    const u64 q = p.modulus;
    const auto xmax = static_cast<boost::multiprecision::uint128_t>(q - 1) * (q - 1);
    auto bits = [](boost::multiprecision::uint128_t v) {
        int b = 0;
        while (v != 0) {
            v >>= 1;
            ++b;
        }
        return b;
    };
    CHECK(w.product == bits(xmax));
    CHECK(w.scaled == bits(xmax * p.barrett_r));
    CHECK(w.quotient == bits((xmax * p.barrett_r) >> (2 * p.width)));
}

TEST_CASE("butterfly outputs") {
    std::mt19937_64 rng(22);
    const RingParams p = preset_params("dilithium");
    std::uniform_int_distribution<u64> d(0, p.modulus - 1);
    for (int i = 0; i < 1000; ++i) {
        const u64 a = d(rng), b = d(rng), w = d(rng);
        const auto r = butterfly_ct(a, b, w, p);
        const u64 prod = oracle::mulm(b, w, p.modulus);
        CHECK(r.a_out == (a + prod) % p.modulus);
        CHECK(r.b_out == (a + p.modulus - prod) % p.modulus);
    }
}

TEST_CASE("trace text") {
    std::ostringstream os;
    write_trace(os, barrett_reduce(100, derive_params(17, 8, Variant::full)));
    CHECK(os.str().find("100 ") == 0);
}

}  // TEST_SUITE
