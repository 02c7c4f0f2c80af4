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

#include "nttc/modarith.hpp"

#include <string>

#include "nttc/errors.hpp"

namespace nttc {

u64 pow_mod(u64 base, u64 exp, u64 q) {
    u64 result = 1 % q;
    base %= q;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, q);
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 q) {
    i128 old_r = static_cast<i128>(a % q), r = static_cast<i128>(q);
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 quot = old_r / r;
        i128 tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw InvalidInput("no inverse of " + std::to_string(a) + " modulo " + std::to_string(q));
    }
    old_s %= static_cast<i128>(q);
    if (old_s < 0) old_s += q;
    return static_cast<u64>(old_s);
}

bool is_prime(u64 q) {
    if (q < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (q % p == 0) return q == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    u64 d = q - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, q);
        if (x == 1 || x == q - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, q);
            if (x == q - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 v) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

u64 multiplicative_order(u64 a, u64 q) {
    u64 order = q - 1;
    for (u64 p : prime_factors(q - 1)) {
        while (order % p == 0 && pow_mod(a, order / p, q) == 1) order /= p;
    }
    return order;
}

int bit_length(u128 v) {
    int n = 0;
    while (v != 0) {
        v >>= 1;
        ++n;
    }
    return n;
}

int ceil_log2(u64 v) {
    int n = 0;
    while ((u128{1} << n) < v) ++n;
    return n;
}

}  // namespace nttc
