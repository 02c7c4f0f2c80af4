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

#include "nttc/datapath.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "nttc/barrett.hpp"
#include "nttc/errors.hpp"

namespace nttc {

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::input: return "input";
        case NodeKind::mode: return "mode";
        case NodeKind::add: return "add";
        case NodeKind::sub: return "sub";
        case NodeKind::add_const: return "add_const";
        case NodeKind::cond_sub: return "cond_sub";
        case NodeKind::mux: return "mux";
        case NodeKind::shl: return "shl";
        case NodeKind::shr: return "shr";
        case NodeKind::reg: return "reg";
    }
    return "?";
}

namespace {

std::int32_t width_of(u128 max_value) { return std::max(1, bit_length(max_value)); }

std::string coord(int s, std::size_t b) {
    return "(stage " + std::to_string(s) + ", butterfly " + std::to_string(b) + ")";
}

class Builder {
public:
    Builder(const RingParams& p, DatapathIR& ir) : p_(p), ir_(ir), corrections_(correction_stages(p)) {}

    NodeTag tag;

    std::int32_t push(Node n) {
        n.tag = tag;
        n.width = width_of(n.max_value);
        ir_.nodes.push_back(n);
        return static_cast<std::int32_t>(ir_.nodes.size() - 1);
    }

    u128 max_of(std::int32_t id) const { return ir_.nodes[static_cast<std::size_t>(id)].max_value; }

    std::int32_t add(std::int32_t a, int sa, std::int32_t b, int sb) {
        Node n;
        n.kind = NodeKind::add;
        n.a = a;
        n.a_shift = sa;
        n.b = b;
        n.b_shift = sb;
        n.max_value = (max_of(a) << sa) + (max_of(b) << sb);
        return push(n);
    }

    // Caller guarantees a<<sa >= b<<sb and supplies the tightest known bound.
    std::int32_t sub(std::int32_t a, int sa, std::int32_t b, int sb, u128 bound) {
        Node n;
        n.kind = NodeKind::sub;
        n.a = a;
        n.a_shift = sa;
        n.b = b;
        n.b_shift = sb;
        n.max_value = std::min(bound, max_of(a) << sa);
        return push(n);
    }

    std::int32_t add_const(std::int32_t a, u64 k) {
        Node n;
        n.kind = NodeKind::add_const;
        n.a = a;
        n.constant = k;
        n.max_value = max_of(a) + k;
        return push(n);
    }

    std::int32_t cond_sub(std::int32_t a, u64 k) {
        Node n;
        n.kind = NodeKind::cond_sub;
        n.a = a;
        n.constant = k;
        const u128 m = max_of(a);
        n.max_value = m >= k ? std::max<u128>(k - 1, m - k) : m;
        return push(n);
    }

    std::int32_t mux(std::int32_t sel, std::int32_t when1, std::int32_t when0) {
        if (when1 == when0) return when1;
        Node n;
        n.kind = NodeKind::mux;
        n.a = sel;
        n.b = when1;
        n.c = when0;
        n.max_value = std::max(max_of(when1), max_of(when0));
        return push(n);
    }

    std::int32_t shift(NodeKind kind, std::int32_t a, int k) {
        if (k == 0) return a;
        Node n;
        n.kind = kind;
        n.a = a;
        n.a_shift = k;
        n.max_value = kind == NodeKind::shl ? max_of(a) << k : max_of(a) >> k;
        return push(n);
    }

    // One node per adder of g, fed by x.
    std::vector<std::int32_t> instantiate(const AdderGraph& g, std::int32_t x) {
        std::vector<std::int32_t> ids(g.nodes.size(), x);
        const u128 mx = max_of(x);
        for (std::size_t i = 1; i < g.nodes.size(); ++i) {
            const AdderNode& gn = g.nodes[i];
            const auto l = ids[static_cast<std::size_t>(gn.lhs)];
            const auto r = ids[static_cast<std::size_t>(gn.rhs)];
            const u128 bound = static_cast<u128>(gn.fundamental) * mx;
            if (gn.negate_lhs) {
                if (gn.op == AdderOp::sub) throw InvariantViolation("adder graph node computes a negative value");
                ids[i] = sub(r, gn.rhs_shift, l, gn.lhs_shift, bound);
            } else if (gn.op == AdderOp::sub) {
                ids[i] = sub(l, gn.lhs_shift, r, gn.rhs_shift, bound);
            } else {
                ids[i] = add(l, gn.lhs_shift, r, gn.rhs_shift);
            }
        }
        return ids;
    }

    std::int32_t tap(const AdderGraph& g, const std::vector<std::int32_t>& ids, u64 c) {
        const GraphOutput* o = g.output_for(c);
        if (o == nullptr) throw InvariantViolation("adder graph has no output for constant " + std::to_string(c));
        return shift(NodeKind::shl, ids[static_cast<std::size_t>(o->node)], o->shift);
    }

    // x mod Q for x <= (Q-1)^2; passes x through when it is already reduced.
    std::int32_t barrett(std::int32_t x, const ScmResult& mr, const ScmResult& mq) {
        const u64 q = p_.modulus;
        if (max_of(x) < q) return x;
        if (max_of(x) > static_cast<u128>(q - 1) * (q - 1)) {
            throw InvariantViolation("reduction input bound exceeds (Q-1)^2");
        }
        const auto xr = tap(mr.graph, instantiate(mr.graph, x), p_.barrett_r);
        const auto t = shift(NodeKind::shr, xr, 2 * p_.width);
        const auto tq = tap(mq.graph, instantiate(mq.graph, t), q);
        std::int32_t r = sub(x, 0, tq, 0, static_cast<u128>(corrections_ + 1) * q - 1);
        for (int i = 0; i < corrections_; ++i) r = cond_sub(r, q);
        if (max_of(r) >= q) throw InvariantViolation("reduction output bound exceeds Q-1");
        ir_.opt_adders += mr.cost() + mq.cost();
        ir_.csd_adders += mr.csd_cost + mq.csd_cost;
        return r;
    }

    std::pair<std::int32_t, std::int32_t> butterfly(std::int32_t a, std::int32_t b, const ButterflyPlan& bp) {
        const McmResult& m1 = *bp.mult1;
        const auto ids = instantiate(m1.graph, b);
        ir_.opt_adders += m1.cost();
        ir_.csd_adders += m1.csd_cost;
        const auto pf = tap(m1.graph, ids, bp.twiddle);
        const auto pi = tap(m1.graph, ids, bp.twiddle_inv);
        const auto prod = barrett(mux(ir_.mode_node, pi, pf), *bp.mult2, *bp.mult3);
        const u64 q = p_.modulus;
        const auto top = cond_sub(add(a, 0, prod, 0), q);
        const auto bot = cond_sub(sub(add_const(a, q), 0, prod, 0, 2 * static_cast<u128>(q) - 1), q);
        return {top, bot};
    }

private:
    const RingParams& p_;
    DatapathIR& ir_;
    int corrections_;
};

void check_schedule(const RingParams& p, const TwiddleSchedule& s, ScheduleKind kind, const char* what) {
    if (s.kind != kind) throw InvalidInput(std::string("build_datapath: wrong kind for the ") + what + " schedule");
    if (s.stages.size() != static_cast<std::size_t>(p.stages)) {
        throw InvalidInput(std::string("build_datapath: ") + what + " schedule has " + std::to_string(s.stages.size()) +
                           " stages, ring needs " + std::to_string(p.stages));
    }
    const std::size_t per = p.butterflies_per_stage();
    for (int st = 0; st < p.stages; ++st) {
        const auto& entries = s.stages[static_cast<std::size_t>(st)];
        for (std::size_t b = 0; b < per; ++b) {
            if (b >= entries.size() || entries[b].butterfly != b) {
                throw InvalidInput(std::string("build_datapath: ") + what + " schedule does not cover " + coord(st, b));
            }
            if (entries[b].twiddle == 0 || entries[b].twiddle >= p.modulus) {
                throw InvalidInput(std::string("build_datapath: ") + what + " twiddle out of range at " + coord(st, b));
            }
        }
        if (entries.size() != per) {
            throw InvalidInput(std::string("build_datapath: ") + what + " schedule has extra butterflies at stage " +
                               std::to_string(st));
        }
    }
}

}  // namespace

DatapathIR build_datapath(const RingParams& p, const TwiddleSchedule& fwd, const TwiddleSchedule& inv_mode,
                          const DesignPlan& plan, const PipelinePolicy& policy) {
    check_schedule(p, fwd, ScheduleKind::forward, "forward");
    check_schedule(p, inv_mode, ScheduleKind::inverse_mode, "inverse-mode");
    const std::size_t n = p.length;
    if (plan.butterflies.size() != static_cast<std::size_t>(p.stages)) {
        throw InvalidInput("build_datapath: plan stage count does not match the ring");
    }
    for (int st = 0; st < p.stages; ++st) {
        const auto& row = plan.butterflies[static_cast<std::size_t>(st)];
        for (std::size_t b = 0; b < p.butterflies_per_stage(); ++b) {
            if (b >= row.size()) throw InvalidInput("build_datapath: plan does not cover " + coord(st, b));
            const auto& bp = row[b];
            const auto& ef = fwd.stages[static_cast<std::size_t>(st)][b];
            const auto& ei = inv_mode.stages[static_cast<std::size_t>(st)][b];
            if (bp.twiddle != ef.twiddle || bp.twiddle_inv != ei.twiddle) {
                throw InvalidInput("build_datapath: plan twiddles disagree with the schedule at " + coord(st, b));
            }
            if (!bp.mult1 || !bp.mult2 || !bp.mult3) {
                throw InvalidInput("build_datapath: plan is missing a multiplier at " + coord(st, b));
            }
        }
    }
    if (plan.output_scales.size() != n) throw InvalidInput("build_datapath: plan needs one output scale per lane");
    const auto scales = inverse_output_scales(p);
    for (std::size_t i = 0; i < n; ++i) {
        if (!plan.output_scales[i] || plan.output_scales[i]->constant != scales[i]) {
            throw InvalidInput("build_datapath: output scale mismatch at lane " + std::to_string(i));
        }
    }

    DatapathIR ir;
    ir.lanes = n;
    ir.lane_width = p.width;
    Builder bld(p, ir);

    bld.tag = {-1, -1};
    Node m;
    m.kind = NodeKind::mode;
    m.max_value = 1;
    ir.mode_node = bld.push(m);
    for (std::size_t i = 0; i < n; ++i) {
        bld.tag = {-1, static_cast<std::int32_t>(i)};
        Node in;
        in.kind = NodeKind::input;
        in.lane = static_cast<std::int32_t>(i);
        in.max_value = p.modulus - 1;
        ir.inputs.push_back(bld.push(in));
    }

    const auto in_perm = inverse_input_permutation(p);
    std::vector<std::int32_t> cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        bld.tag = {-1, static_cast<std::int32_t>(i)};
        cur[i] = bld.mux(ir.mode_node, ir.inputs[in_perm[i]], ir.inputs[i]);
    }

    for (int st = 0; st < p.stages; ++st) {
        for (std::size_t b = 0; b < p.butterflies_per_stage(); ++b) {
            bld.tag = {st, static_cast<std::int32_t>(b)};
            const ButterflySlot slot = butterfly_slot(p, st, b);
            const auto [t, u] = bld.butterfly(cur[slot.top], cur[slot.bottom],
                                              plan.butterflies[static_cast<std::size_t>(st)][b]);
            cur[slot.top] = t;
            cur[slot.bottom] = u;
        }
    }

    const auto out_perm = inverse_output_permutation(p);
    const auto mr = plan.butterflies.empty() || plan.butterflies[0].empty() ? nullptr : plan.butterflies[0][0].mult2;
    const auto mq = plan.butterflies.empty() || plan.butterflies[0].empty() ? nullptr : plan.butterflies[0][0].mult3;
    if (!mr || !mq) throw InvalidInput("build_datapath: ring has no butterflies");
    ir.outputs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bld.tag = {p.stages, static_cast<std::int32_t>(i)};
        const ScmResult& sc = *plan.output_scales[i];
        const auto src = cur[out_perm[i]];
        const auto prod = bld.tap(sc.graph, bld.instantiate(sc.graph, src), sc.constant);
        ir.opt_adders += sc.cost();
        ir.csd_adders += sc.csd_cost;
        ir.outputs[i] = bld.mux(ir.mode_node, bld.barrett(prod, *mr, *mq), cur[i]);
    }

    return insert_pipeline(ir, policy);
}

DatapathIR generate_design(const RingParams& p, const PipelinePolicy& policy, ConstantOptimizer& opt) {
    const auto fwd = twiddle_schedule(p, Direction::forward);
    const auto inv = inverse_mode_schedule(p);
    const auto plan = plan_design(p, fwd, inv, opt);
    return build_datapath(p, fwd, inv, plan, policy);
}

DatapathIR generate_design(const RingParams& p, const PipelinePolicy& policy) {
    ConstantOptimizer opt(p);
    return generate_design(p, policy, opt);
}

std::size_t count_butterflies(const DatapathIR& ir) {
    std::int32_t stages = 0;
    for (const auto& n : ir.nodes) stages = std::max(stages, n.tag.stage);
    std::set<std::pair<std::int32_t, std::int32_t>> seen;
    for (const auto& n : ir.nodes) {
        if (n.tag.stage >= 0 && n.tag.stage < stages) seen.emplace(n.tag.stage, n.tag.butterfly);
    }
    return seen.size();
}

std::vector<int> register_depths(const DatapathIR& ir) {
    std::vector<int> rd(ir.nodes.size(), 0);
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        switch (n.kind) {
            case NodeKind::input:
            case NodeKind::mode: rd[i] = 0; break;
            case NodeKind::reg: rd[i] = rd[static_cast<std::size_t>(n.a)] + 1; break;
            default: {
                int d = 0;
                for (const auto op : {n.a, n.b, n.c}) {
                    if (op >= 0) d = std::max(d, rd[static_cast<std::size_t>(op)]);
                }
                rd[i] = d;
            }
        }
    }
    return rd;
}

namespace {

int operand_count(NodeKind k) {
    switch (k) {
        case NodeKind::input:
        case NodeKind::mode: return 0;
        case NodeKind::add:
        case NodeKind::sub: return 2;
        case NodeKind::mux: return 3;
        default: return 1;
    }
}

std::string where(const DatapathIR& ir, std::size_t i) {
    const auto& t = ir.nodes[i].tag;
    return "node n" + std::to_string(i) + " " + coord(t.stage, static_cast<std::size_t>(std::max(0, t.butterfly)));
}

}  // namespace

void check_structure(const DatapathIR& ir) {
    const std::size_t count = ir.nodes.size();
    if (ir.mode_node < 0 || static_cast<std::size_t>(ir.mode_node) >= count ||
        ir.nodes[static_cast<std::size_t>(ir.mode_node)].kind != NodeKind::mode) {
        throw InvariantViolation("datapath has no mode input");
    }
    if (ir.inputs.size() != ir.lanes || ir.outputs.size() != ir.lanes) {
        throw InvariantViolation("datapath lane count does not match its ports");
    }
    std::vector<bool> from_mode(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        const Node& n = ir.nodes[i];
        const int ops = operand_count(n.kind);
        const std::int32_t operands[3] = {n.a, n.b, n.c};
        for (int k = 0; k < 3; ++k) {
            const bool used = k < ops;
            if (used && (operands[k] < 0 || static_cast<std::size_t>(operands[k]) >= i)) {
                throw InvariantViolation(where(ir, i) + ": operand is not an earlier node");
            }
            if (!used && operands[k] != -1) throw InvariantViolation(where(ir, i) + ": stray operand");
        }
        if (n.width != width_of(n.max_value)) throw InvariantViolation(where(ir, i) + ": width disagrees with its bound");
        if (n.kind == NodeKind::input && (n.lane < 0 || static_cast<std::size_t>(n.lane) >= ir.lanes)) {
            throw InvariantViolation(where(ir, i) + ": input lane out of range");
        }
        if (n.kind == NodeKind::reg && n.max_value != ir.nodes[static_cast<std::size_t>(n.a)].max_value) {
            throw InvariantViolation(where(ir, i) + ": register bound differs from its source");
        }
        if ((n.kind == NodeKind::add_const || n.kind == NodeKind::cond_sub) && n.constant == 0) {
            throw InvariantViolation(where(ir, i) + ": zero constant");
        }
        from_mode[i] = n.kind == NodeKind::mode || (n.kind == NodeKind::reg && from_mode[static_cast<std::size_t>(n.a)]);
        for (int k = 0; k < ops; ++k) {
            const bool is_select = n.kind == NodeKind::mux && k == 0;
            const bool sel_ok = from_mode[static_cast<std::size_t>(operands[k])];
            if (n.kind == NodeKind::reg) continue;
            if (is_select && !sel_ok) throw InvariantViolation(where(ir, i) + ": mux select is not the mode bit");
            if (!is_select && sel_ok) throw InvariantViolation(where(ir, i) + ": mode bit used as data");
        }
    }

    const auto rd = register_depths(ir);
    for (std::size_t i = 0; i < count; ++i) {
        const Node& n = ir.nodes[i];
        if (n.kind == NodeKind::reg) continue;
        const int ops = operand_count(n.kind);
        const std::int32_t operands[3] = {n.a, n.b, n.c};
        for (int k = 0; k < ops; ++k) {
            if (rd[static_cast<std::size_t>(operands[k])] != rd[i]) {
                throw InvariantViolation(where(ir, i) + ": unbalanced pipeline, operands arrive in different cycles");
            }
        }
    }
    std::vector<bool> lane_seen(ir.lanes, false);
    for (const auto in : ir.inputs) {
        const Node& n = ir.nodes.at(static_cast<std::size_t>(in));
        if (n.kind != NodeKind::input || lane_seen[static_cast<std::size_t>(n.lane)]) {
            throw InvariantViolation("datapath input ports are not one node per lane");
        }
        lane_seen[static_cast<std::size_t>(n.lane)] = true;
    }
    for (std::size_t lane = 0; lane < ir.lanes; ++lane) {
        const auto o = static_cast<std::size_t>(ir.outputs[lane]);
        if (o >= count) throw InvariantViolation("output lane " + std::to_string(lane) + " has no driver");
        if (rd[o] != ir.latency) {
            throw InvariantViolation("output lane " + std::to_string(lane) + " arrives after " + std::to_string(rd[o]) +
                                     " cycles, latency is " + std::to_string(ir.latency));
        }
        if (ir.nodes[o].width > ir.lane_width) {
            throw InvariantViolation("output lane " + std::to_string(lane) + " is wider than the port");
        }
    }
}

}  // namespace nttc
