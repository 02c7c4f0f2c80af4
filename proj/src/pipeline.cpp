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

#include <algorithm>
#include <vector>

#include "nttc/datapath.hpp"
#include "nttc/errors.hpp"

namespace nttc {

namespace {

bool is_adder(NodeKind k) {
    return k == NodeKind::add || k == NodeKind::sub || k == NodeKind::add_const || k == NodeKind::cond_sub;
}

// Same nodes with every register bypassed; order and tags are kept.
DatapathIR strip_registers(const DatapathIR& ir) {
    DatapathIR out = ir;
    out.nodes.clear();
    out.latency = 0;
    std::vector<std::int32_t> map(ir.nodes.size(), -1);
    auto remap = [&](std::int32_t id) { return id < 0 ? id : map[static_cast<std::size_t>(id)]; };
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        if (n.kind == NodeKind::reg) {
            map[i] = remap(n.a);
            continue;
        }
        Node c = n;
        c.a = remap(n.a);
        c.b = remap(n.b);
        c.c = remap(n.c);
        map[i] = static_cast<std::int32_t>(out.nodes.size());
        out.nodes.push_back(c);
    }
    out.mode_node = remap(ir.mode_node);
    for (auto& v : out.inputs) v = remap(v);
    for (auto& v : out.outputs) v = remap(v);
    return out;
}

std::vector<int> adder_levels(const DatapathIR& ir) {
    std::vector<int> level(ir.nodes.size(), 0);
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        int l = 0;
        for (const auto op : {n.a, n.b, n.c}) {
            if (op >= 0) l = std::max(l, level[static_cast<std::size_t>(op)]);
        }
        level[i] = l + (is_adder(n.kind) ? 1 : 0);
    }
    return level;
}

}  // namespace

int combinational_depth(const DatapathIR& ir) {
    const auto level = adder_levels(strip_registers(ir));
    return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

int register_to_register_depth(const DatapathIR& ir) {
    std::vector<int> level(ir.nodes.size(), 0);
    int worst = 0;
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        if (n.kind == NodeKind::reg) continue;
        int l = 0;
        for (const auto op : {n.a, n.b, n.c}) {
            if (op >= 0) l = std::max(l, level[static_cast<std::size_t>(op)]);
        }
        level[i] = l + (is_adder(n.kind) ? 1 : 0);
        worst = std::max(worst, level[i]);
    }
    return worst;
}

DatapathIR insert_pipeline(const DatapathIR& ir, const PipelinePolicy& policy) {
    if (policy.max_adder_depth < 0) throw InvalidInput("pipeline: adder depth bound must be >= 0");
    const DatapathIR comb = strip_registers(ir);
    const auto level = adder_levels(comb);
    const int depth = policy.max_adder_depth;
    const int in = policy.register_inputs ? 1 : 0;

    std::vector<int> when(comb.nodes.size(), 0);
    for (std::size_t i = 0; i < comb.nodes.size(); ++i) {
        const NodeKind k = comb.nodes[i].kind;
        if (k == NodeKind::input || k == NodeKind::mode) continue;
        const int st = (depth == 0 || level[i] == 0) ? 0 : (level[i] - 1) / depth;
        when[i] = st + in;
    }
    int last = 0;
    for (const auto o : comb.outputs) last = std::max(last, when[static_cast<std::size_t>(o)]);
    const int latency = last + (policy.register_outputs ? 1 : 0);

    DatapathIR out = comb;
    out.nodes.clear();
    out.policy = policy;
    out.latency = latency;
    out.nodes.reserve(comb.nodes.size() * 2);
    std::vector<std::int32_t> map(comb.nodes.size(), -1);
    std::vector<std::vector<std::int32_t>> chain(comb.nodes.size());

    // u (old id) delayed by k cycles, sharing one register chain per source.
    auto delayed = [&](std::int32_t u, int k) -> std::int32_t {
        auto& ch = chain[static_cast<std::size_t>(u)];
        while (static_cast<int>(ch.size()) < k) {
            const std::int32_t prev = ch.empty() ? map[static_cast<std::size_t>(u)] : ch.back();
            const Node& src = comb.nodes[static_cast<std::size_t>(u)];
            Node r;
            r.kind = NodeKind::reg;
            r.a = prev;
            r.max_value = src.max_value;
            r.width = src.width;
            r.tag = src.tag;
            out.nodes.push_back(r);
            ch.push_back(static_cast<std::int32_t>(out.nodes.size() - 1));
        }
        return k == 0 ? map[static_cast<std::size_t>(u)] : ch[static_cast<std::size_t>(k - 1)];
    };

    for (std::size_t i = 0; i < comb.nodes.size(); ++i) {
        Node n = comb.nodes[i];
        for (std::int32_t* op : {&n.a, &n.b, &n.c}) {
            if (*op < 0) continue;
            const int gap = when[i] - when[static_cast<std::size_t>(*op)];
            if (gap < 0) throw InvariantViolation("pipeline: operand scheduled after its consumer");
            *op = delayed(*op, gap);
        }
        out.nodes.push_back(n);
        map[i] = static_cast<std::int32_t>(out.nodes.size() - 1);
    }
    out.mode_node = map[static_cast<std::size_t>(comb.mode_node)];
    for (auto& v : out.inputs) v = map[static_cast<std::size_t>(v)];
    for (auto& v : out.outputs) v = delayed(v, latency - when[static_cast<std::size_t>(v)]);
    return out;
}

}  // namespace nttc
