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

// Shared machinery for the exact and heuristic constant-multiplication
// searches. Fundamentals are odd; the A-operation only uses left shifts.

#include <optional>
#include <unordered_map>
#include <vector>

#include "nttc/adder_graph.hpp"

namespace nttc::detail {

/// value = (lhs << lhs_shift) +/- (rhs << rhs_shift), always positive.
struct Derivation {
    u64 lhs = 0;
    int lhs_shift = 0;
    u64 rhs = 0;
    int rhs_shift = 0;
    bool subtract = false;
};

inline bool pow2_at_least_2(u64 k, int& shift) {
    if (k < 2 || (k & (k - 1)) != 0) return false;
    shift = __builtin_ctzll(k);
    return true;
}

/// Is c = A(u, v) for some left-shift-only adder? Fills the derivation.
inline bool in_a(u64 c, u64 u, u64 v, Derivation* d) {
    int a = 0;
    for (int swap = 0; swap < 2; ++swap) {
        const u64 x = swap ? v : u;
        const u64 y = swap ? u : v;
        // c = x*2^a + y
        if (c > y && (c - y) % x == 0 && pow2_at_least_2((c - y) / x, a)) {
            if (d) *d = {x, a, y, 0, false};
            return true;
        }
        // c = x*2^a - y
        if ((c + y) % x == 0 && pow2_at_least_2((c + y) / x, a)) {
            if (d) *d = {x, a, y, 0, true};
            return true;
        }
        // c = y - x*2^a
        if (y > c && (y - c) % x == 0 && pow2_at_least_2((y - c) / x, a)) {
            if (d) *d = {y, 0, x, a, true};
            return true;
        }
        if (u == v) break;
    }
    return false;
}

/// Enumerates A(u, v) restricted to values <= bound.
template <class F>
void for_each_a(u64 u, u64 v, u64 bound, F&& emit) {
    for (int swap = 0; swap < 2; ++swap) {
        const u64 x = swap ? v : u;
        const u64 y = swap ? u : v;
        for (int a = 1; a < 63; ++a) {
            const u128 xs = static_cast<u128>(x) << a;
            if (xs > static_cast<u128>(bound) + y) break;
            const u64 xv = static_cast<u64>(xs);
            if (xs + y <= bound) emit(xv + y, Derivation{x, a, y, 0, false});
            if (xv > y) {
                emit(xv - y, Derivation{x, a, y, 0, true});
            } else {
                emit(y - xv, Derivation{y, 0, x, a, true});
            }
        }
        if (u == v) break;
    }
}

/// Assembles a graph from fundamentals listed in dependency order, each
/// with its derivation from earlier entries (or 1), and output taps for
/// `targets`. Fundamentals not reachable from an output are dropped.
AdderGraph assemble_graph(int width, const std::vector<std::pair<u64, Derivation>>& steps,
                          const std::vector<u64>& targets);

}  // namespace nttc::detail
