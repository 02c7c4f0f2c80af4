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
#include <string>
#include <vector>

#include "nttc/mcm.hpp"
#include "nttc/ring.hpp"

namespace nttc {

enum class NodeKind : std::uint8_t {
    input,     // one coefficient lane of the input bus
    mode,      // 0 = forward, 1 = inverse
    add,       // (a << a_shift) + (b << b_shift)
    sub,       // (a << a_shift) - (b << b_shift), never negative
    add_const, // a + constant
    cond_sub,  // a >= constant ? a - constant : a
    mux,       // a ? b : c
    shl,       // a << a_shift (wires)
    shr,       // a >> a_shift (part-select)
    reg,       // a, one cycle later
};

std::string_view to_string(NodeKind k);

/// Every node carries the (stage, butterfly) it belongs to. Stage -1 is the
/// input boundary and stage == stages the inverse-mode output bank; for
/// those the butterfly field holds the lane.
struct NodeTag {
    std::int32_t stage = -1;
    std::int32_t butterfly = -1;

    bool operator==(const NodeTag&) const = default;
};

struct Node {
    NodeKind kind = NodeKind::input;
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t c = -1;
    std::int32_t a_shift = 0;
    std::int32_t b_shift = 0;
    u64 constant = 0;
    std::int32_t lane = -1;
    u128 max_value = 0;
    std::int32_t width = 1;
    NodeTag tag;

    bool operator==(const Node&) const = default;
};

struct PipelinePolicy {
    /// Adder levels allowed between registers; 0 means unbounded.
    int max_adder_depth = 2;
    bool register_inputs = true;
    bool register_outputs = true;
};

/// Fully unrolled, feed-forward datapath. Nodes are in topological order.
struct DatapathIR {
    std::size_t lanes = 0;
    int lane_width = 0;
    std::int32_t mode_node = -1;
    std::vector<std::int32_t> inputs;   // per lane
    std::vector<std::int32_t> outputs;  // per lane
    std::vector<Node> nodes;
    int latency = 0;
    PipelinePolicy policy;

    // Constant-multiplier adders actually instantiated, and what the same
    // multipliers would cost realized straight from CSD.
    long opt_adders = 0;
    long csd_adders = 0;
};

/// Assembles the combinational datapath and pipelines it per `policy`.
/// Rejects schedules or plans that do not cover every (stage, butterfly),
/// naming the offending coordinate.
DatapathIR build_datapath(const RingParams& p, const TwiddleSchedule& fwd, const TwiddleSchedule& inv_mode,
                          const DesignPlan& plan, const PipelinePolicy& policy);

/// Convenience: schedules, plans and datapath for a ring.
DatapathIR generate_design(const RingParams& p, const PipelinePolicy& policy);
DatapathIR generate_design(const RingParams& p, const PipelinePolicy& policy, ConstantOptimizer& opt);

/// Removes existing registers and re-inserts them so that no register-to-
/// register path exceeds the adder-depth bound and every path is balanced.
DatapathIR insert_pipeline(const DatapathIR& ir, const PipelinePolicy& policy);

/// Adder levels of the longest combinational path, ignoring registers.
int combinational_depth(const DatapathIR& ir);

/// Adder levels of the longest path that starts and ends at a register or
/// port, i.e. the critical path the pipeline leaves in place.
int register_to_register_depth(const DatapathIR& ir);

/// Structural audit; throws InvariantViolation on the first failure:
/// operand order, node kinds (no multipliers exist), widths consistent with
/// value bounds, register balance on every path, mode driving only mux
/// selects, outputs aligned to the recorded latency.
void check_structure(const DatapathIR& ir);

/// Distinct (stage, butterfly) tags inside the transform stages.
std::size_t count_butterflies(const DatapathIR& ir);

/// Number of register stages between any primary input and the node.
std::vector<int> register_depths(const DatapathIR& ir);

}  // namespace nttc
