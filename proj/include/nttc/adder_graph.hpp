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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nttc/modarith.hpp"

namespace nttc {

/// Canonical signed-digit form, most significant digit first, over {+, 0, -}.
struct CsdForm {
    std::string digits;
    u64 value = 0;

    int nonzero() const;
    int adder_cost() const { return nonzero() - 1; }
};

CsdForm csd_recode(u64 c);

/// Nonzero digits of the CSD (non-adjacent) form of c; 0 for c == 0.
inline int csd_weight(u64 c) { return __builtin_popcountll((3 * c) ^ c); }
inline int csd_cost(u64 c) { return csd_weight(c) - 1; }
inline int binary_cost(u64 c) { return __builtin_popcountll(c) - 1; }

inline u64 odd_part(u64 c) { return c >> __builtin_ctzll(c); }

enum class AdderOp { input, add, sub };

/// value = (negate_lhs ? -(lhs << lhs_shift) : (lhs << lhs_shift)) op (rhs << rhs_shift)
struct AdderNode {
    AdderOp op = AdderOp::input;
    int lhs = -1;
    int lhs_shift = 0;
    int rhs = -1;
    int rhs_shift = 0;
    bool negate_lhs = false;
    u64 fundamental = 1;

    bool operator==(const AdderNode&) const = default;
};

struct GraphOutput {
    u64 constant = 0;
    int node = 0;
    int shift = 0;

    bool operator==(const GraphOutput&) const = default;
};

/// Shift-and-add network computing one or more constant multiples of a
/// single input. Node 0 is always the input; every other node is an adder.
struct AdderGraph {
    int input_width = 0;
    std::vector<AdderNode> nodes;
    std::vector<GraphOutput> outputs;

    int cost() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
    int depth() const;
    std::vector<int> node_depths() const;
    const GraphOutput* output_for(u64 constant) const;
    u64 max_constant() const;

    bool operator==(const AdderGraph&) const = default;
};

/// Graph that only carries wires: every constant is a power of two.
AdderGraph wire_graph(int input_width);

/// Structural checks: DAG order, odd positive fundamentals that match the
/// node arithmetic, outputs referencing valid nodes. Throws InvariantViolation.
void validate_graph(const AdderGraph& g);

/// input_width + ceil(log2 c_max) + 1.
int evaluation_width(const AdderGraph& g);

/// c*x for every output, computed with no intermediate truncation and
/// reported modulo 2^width. Throws InvalidInput when x >= 2^width.
std::map<u64, u128> graph_eval(const AdderGraph& g, u128 x, int width);

/// Exhaustive over [0, 2^min(12, input_width)) plus `samples` seeded draws
/// at full input width. Returns false on the first mismatch.
bool verify_graph(const AdderGraph& g, u64 samples = 100'000, u64 seed = 7);

/// Text exchange format:
///   # comment
///   0 INPUT
///   1 ADD 0<<2 + 0<<0
///   2 SUB 1<<4 - 0<<0
///   OUT 13 = 2<<0
/// A negated left operand is written with a leading '-'.
void write_graph(std::ostream& os, const AdderGraph& g);
AdderGraph read_graph(std::istream& is);
std::string graph_to_string(const AdderGraph& g);

}  // namespace nttc
