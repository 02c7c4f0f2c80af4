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

#include <sstream>

#include "nttc/errors.hpp"
#include "nttc/ring.hpp"
#include "oracles.hpp"

using namespace nttc;

namespace {

RingParams toy() { return derive_params(17, 8, Variant::full); }

std::vector<RingParams> all_rings() {
    std::vector<RingParams> v{toy()};
    for (const auto& s : scheme_presets()) v.push_back(preset_params(s.name));
    return v;
}

}  // namespace

TEST_SUITE("ring") {

TEST_CASE("preset constants") {
    struct Row {
        const char* name;
        u64 q;
        std::size_t n;
        int width;
        int stages;
        u64 inv_scale;
    };
    // inv_scale values checked below by multiplication, widths by ceil(log2 Q).
    const Row rows[] = {
        {"kyber", 3329, 256, 12, 7, 3303},
        {"dilithium", 8380417, 256, 23, 8, 8347681},
        {"falcon512", 12289, 512, 14, 9, 12265},
        {"falcon1024", 12289, 1024, 14, 10, 12277},
    };
    for (const auto& r : rows) {
        CAPTURE(r.name);
        const RingParams p = preset_params(r.name);
        CHECK(p.modulus == r.q);
        CHECK(p.length == r.n);
        CHECK(p.width == r.width);
        CHECK(p.width == oracle::ceil_log2(r.q));
        CHECK(p.stages == r.stages);
        CHECK(p.inv_scale == r.inv_scale);
        CHECK(oracle::mulm(p.inv_scale, (u64{1} << r.stages) % r.q, r.q) == 1);
        CHECK(p.barrett_r == oracle::barrett_r(r.q, r.width));
        const u64 m = p.transform_size();
        CHECK(p.psi == oracle::root_of_order(r.q, 2 * m));
        CHECK(p.omega == oracle::mulm(p.psi, p.psi, r.q));
    }
    CHECK(preset_params("kyber").psi == 17);
    CHECK(preset_params("dilithium").psi == 1753);
    CHECK(preset_params("kyber").barrett_r == 5039);
    CHECK(preset_params("dilithium").barrett_r == 8396807);
}

TEST_CASE("toy ring") {
    const RingParams p = toy();
    CHECK(p.psi == 3);
    CHECK(p.omega == 9);
    CHECK(p.width == 5);
    CHECK(p.barrett_r == 60);
    CHECK(p.inv_scale == 15);
    CHECK(p.butterfly_count() == 12);
}

TEST_CASE("derive_params rejects bad rings") {
    CHECK_THROWS_AS(derive_params(15, 8, Variant::full), InvalidInput);
    CHECK_THROWS_AS(derive_params(17, 6, Variant::full), InvalidInput);
    CHECK_THROWS_AS(derive_params(13, 8, Variant::full), InvalidInput);     // 16 does not divide 12
    CHECK_THROWS_AS(derive_params(3329, 256, Variant::full), InvalidInput);  // needs a 512th root
    CHECK_THROWS_AS(derive_params(1073741827, 2, Variant::full), InvalidInput);
    CHECK_THROWS_AS(derive_params(2, 2, Variant::full), InvalidInput);
    CHECK_THROWS_AS(parse_variant("half"), InvalidInput);
}

TEST_CASE("find_root matches brute force") {
    for (const auto& [q, ord] : std::vector<std::pair<u64, u64>>{{17, 8}, {17, 16}, {97, 32}, {3329, 256}, {12289, 2048}, {7681, 512}}) {
        CAPTURE(q);
        CAPTURE(ord);
        CHECK(find_root(q, ord) == oracle::root_of_order(q, ord));
    }
}

TEST_CASE("forward transform equals direct evaluation") {
    std::mt19937_64 rng(11);
    for (const auto& p : all_rings()) {
        CAPTURE(p.modulus);
        CAPTURE(p.length);
        for (int t = 0; t < 3; ++t) {
            const auto a = oracle::random_poly(rng, p.length, p.modulus);
            CHECK(ntt_forward(a, p) == oracle::ntt_naive(a, p.modulus, p.transform_size(), p.psi));
        }
    }
}

TEST_CASE("toy X^7 and delta vectors") {
    const RingParams p = toy();
    std::vector<u64> x7(8, 0);
    x7[7] = 1;
    CHECK(ntt_forward(x7, p) == oracle::ntt_naive(x7, 17, 8, 3));
    std::vector<u64> delta(8, 0);
    delta[0] = 1;
    CHECK(ntt_forward(delta, p) == std::vector<u64>(8, 1));
}

TEST_CASE("inverse undoes forward and matches direct interpolation") {
    std::mt19937_64 rng(12);
    for (const auto& p : all_rings()) {
        CAPTURE(p.length);
        for (int t = 0; t < 3; ++t) {
            const auto a = oracle::random_poly(rng, p.length, p.modulus);
            const auto y = ntt_forward(a, p);
            CHECK(ntt_inverse(y, p) == a);
            CHECK(ntt_inverse_via_ct(y, p) == a);
            CHECK(ntt_inverse(a, p) == oracle::intt_naive(a, p.modulus, p.transform_size(), p.psi));
        }
    }
}

TEST_CASE("convolution theorem against schoolbook") {
    std::mt19937_64 rng(13);
    for (const auto& p : all_rings()) {
        CAPTURE(p.length);
        for (int t = 0; t < 4; ++t) {
            const auto a = oracle::random_poly(rng, p.length, p.modulus);
            const auto b = oracle::random_poly(rng, p.length, p.modulus);
            const auto c = ntt_inverse(pointwise_mul(ntt_forward(a, p), ntt_forward(b, p), p), p);
            CHECK(c == oracle::schoolbook(a, b, p.modulus));
            CHECK(negacyclic_mul_schoolbook(a, b, p) == c);
        }
    }
}

TEST_CASE("forward schedule uses psi^bitrev twiddles") {
    for (const auto& p : all_rings()) {
        CAPTURE(p.length);
        const auto fwd = twiddle_schedule(p, Direction::forward);
        const auto inv = twiddle_schedule(p, Direction::inverse);
        REQUIRE(fwd.stages.size() == static_cast<std::size_t>(p.stages));
        CHECK(fwd.butterfly_count() == p.butterfly_count());
        for (int s = 0; s < p.stages; ++s) {
            const auto& row = fwd.stages[static_cast<std::size_t>(s)];
            REQUIRE(row.size() == p.length / 2);
            for (std::size_t b = 0; b < row.size(); ++b) {
                const std::size_t len = p.length >> (s + 1);
                const std::size_t group = b / len;
                const u64 e = oracle::brv((std::size_t{1} << s) + group, p.stages);
                CHECK(row[b].twiddle == oracle::powm_fast(p.psi, e, p.modulus));
                CHECK(oracle::mulm(row[b].twiddle, inv.stages[static_cast<std::size_t>(s)][b].twiddle, p.modulus) == 1);
            }
        }
    }
}

TEST_CASE("kyber base-case moduli are odd powers of psi") {
    const RingParams p = preset_params("kyber");
    std::vector<u64> x(256, 0);
    x[1] = 1;
    const auto y = ntt_forward(x, p);
    // Residues mod X^2 - zeta_k, zeta_k = psi^(2 brv(k) + 1): X stays (0, 1)
    // and X^2 becomes (zeta_k, 0).
    for (std::size_t k = 0; k < 128; ++k) {
        CHECK(y[2 * k] == 0);
        CHECK(y[2 * k + 1] == 1);
    }
    std::vector<u64> x2(256, 0);
    x2[2] = 1;
    const auto z = ntt_forward(x2, p);
    for (std::size_t k = 0; k < 128; ++k) {
        const u64 zeta = oracle::powm_fast(17, 2 * oracle::brv(k, 7) + 1, 3329);
        CHECK(z[2 * k] == zeta);
        CHECK(z[2 * k + 1] == 0);
    }
}

TEST_CASE("inverse-mode schedule pairs with forward twiddles") {
    for (const auto& p : all_rings()) {
        const auto fwd = twiddle_schedule(p, Direction::forward);
        const auto im = inverse_mode_schedule(p);
        CHECK(im.kind == ScheduleKind::inverse_mode);
        const u64 m = p.transform_size();
        for (int s = 0; s < p.stages; ++s) {
            const u64 ratio = oracle::powm_fast(p.psi, m >> (s + 1), p.modulus);
            for (std::size_t b = 0; b < p.length / 2; ++b) {
                const u64 wf = fwd.stages[static_cast<std::size_t>(s)][b].twiddle;
                const u64 wi = im.stages[static_cast<std::size_t>(s)][b].twiddle;
                CHECK(oracle::mulm(wf, wi, p.modulus) == ratio);
            }
        }
        const auto scales = inverse_output_scales(p);
        CHECK(scales.size() == p.length);
        const auto perm = inverse_input_permutation(p);
        std::vector<bool> seen(p.length, false);
        for (auto v : perm) seen.at(v) = true;
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("params text round trip") {
    for (const auto& p : all_rings()) {
        std::stringstream ss;
        write_params(ss, p);
        CHECK(read_params(ss) == p);
    }
    std::istringstream bad("Q = 15\nN = 8\nvariant = full\n");
    CHECK_THROWS_AS(read_params(bad), InvalidInput);
}

TEST_CASE("coefficient range checks") {
    const RingParams p = toy();
    std::vector<u64> v(8, 0);
    v[3] = 17;
    CHECK_THROWS_AS(ntt_forward(v, p), InvalidInput);
    CHECK_THROWS_AS(ntt_forward(std::vector<u64>(4, 0), p), InvalidInput);
}

}  // TEST_SUITE
