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

#include <cstdint>
#include <vector>

namespace nttc {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

inline u64 mul_mod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<u128>(a) * b % q); }

inline u64 add_mod(u64 a, u64 b, u64 q) {
    u64 s = a + b;
    return s >= q ? s - q : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + q - b; }

u64 pow_mod(u64 base, u64 exp, u64 q);

/// Modular inverse via extended Euclid. Throws InvalidInput when gcd(a, q) != 1.
u64 inv_mod(u64 a, u64 q);

bool is_prime(u64 q);

/// Distinct prime factors in increasing order.
std::vector<u64> prime_factors(u64 v);

/// Multiplicative order of a modulo prime q (a must be a unit).
u64 multiplicative_order(u64 a, u64 q);

/// Number of bits needed to hold v (0 for v == 0).
int bit_length(u128 v);

/// Smallest n with 2^n >= v, v >= 1.
int ceil_log2(u64 v);

inline bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace nttc
