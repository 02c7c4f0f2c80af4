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

#include <map>
#include <sstream>

#include "nttc/datapath.hpp"
#include "nttc/errors.hpp"
#include "nttc/metrics.hpp"
#include "nttc/verilog.hpp"

using namespace nttc;

namespace {

RingParams toy() { return derive_params(17, 8, Variant::full); }

PipelinePolicy policy(int depth, bool in, bool out) {
    PipelinePolicy p;
    p.max_adder_depth = depth;
    p.register_inputs = in;
    p.register_outputs = out;
    return p;
}

const DatapathIR& cached(const std::string& scheme) {
    static std::map<std::string, DatapathIR> cache;
    auto it = cache.find(scheme);
    if (it == cache.end()) it = cache.emplace(scheme, generate_design(preset_params(scheme), PipelinePolicy{})).first;
    return it->second;
}

std::map<NodeKind, long> kind_counts(const DatapathIR& ir) {
    std::map<NodeKind, long> m;
    for (const auto& n : ir.nodes) ++m[n.kind];
    return m;
}

// Operand slot of the first node of `kind` that reads a register.
std::pair<std::size_t, std::int32_t*> find_registered_operand(DatapathIR& ir, NodeKind kind) {
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        Node& n = ir.nodes[i];
        if (n.kind != kind) continue;
        for (std::int32_t* op : {&n.a, &n.b}) {
            if (*op >= 0 && ir.nodes[static_cast<std::size_t>(*op)].kind == NodeKind::reg) return {i, op};
        }
    }
    return {0, nullptr};
}

}  // namespace

TEST_SUITE("rtl") {

TEST_CASE("butterfly counts") {
    const DatapathIR t = generate_design(toy(), PipelinePolicy{});
    check_structure(t);
    CHECK(count_butterflies(t) == 12);
    CHECK(count_butterflies(cached("kyber")) == 896);
    CHECK(count_butterflies(cached("dilithium")) == 1024);
    check_structure(cached("kyber"));
    check_structure(cached("dilithium"));
}

TEST_CASE("default-policy latencies are stable") {
    // Regression constants for depth 2 with registered inputs and outputs.
    CHECK(cached("kyber").latency == 54);
    CHECK(cached("dilithium").latency == 74);
}

TEST_CASE("one register per adder level at depth 1") {
    const DatapathIR ir = generate_design(toy(), policy(1, false, true));
    check_structure(ir);
    CHECK(ir.latency == combinational_depth(ir));
    CHECK(register_to_register_depth(ir) == 1);
}

TEST_CASE("unbounded depth leaves only io registers") {
    const RingParams p = toy();
    CHECK(generate_design(p, policy(0, true, true)).latency == 2);
    CHECK(generate_design(p, policy(0, true, false)).latency == 1);
    const DatapathIR comb = generate_design(p, policy(0, false, false));
    CHECK(comb.latency == 0);
    CHECK(structural_report(comb).total.regs == 0);
    check_structure(comb);
}

TEST_CASE("adder depth bound holds between registers") {
    const RingParams p = preset_params("kyber");
    const DatapathIR comb = generate_design(p, policy(0, false, false));
    const int full = combinational_depth(comb);
    for (int d : {1, 2, 3, 5}) {
        CAPTURE(d);
        const DatapathIR ir = insert_pipeline(comb, policy(d, true, true));
        check_structure(ir);
        CHECK(register_to_register_depth(ir) <= d);
        CHECK(ir.latency == (full + d - 1) / d + 1);
    }
}

TEST_CASE("re-pipelining is idempotent") {
    const DatapathIR a = generate_design(toy(), PipelinePolicy{});
    const DatapathIR b = insert_pipeline(a, a.policy);
    CHECK(a.nodes == b.nodes);
    CHECK(a.outputs == b.outputs);
    CHECK(a.latency == b.latency);
    const DatapathIR c = insert_pipeline(insert_pipeline(a, policy(1, false, false)), a.policy);
    CHECK(c.nodes == a.nodes);
}

TEST_CASE("structural audit catches an unbalanced path") {
    DatapathIR ir = generate_design(toy(), PipelinePolicy{});
    auto [node, op] = find_registered_operand(ir, NodeKind::add);
    REQUIRE(op != nullptr);
    *op = ir.nodes[static_cast<std::size_t>(*op)].a;  // bypass one register
    CHECK_THROWS_WITH_AS(check_structure(ir), doctest::Contains("unbalanced"), InvariantViolation);
}

TEST_CASE("structural audit catches mode used as data") {
    DatapathIR ir = generate_design(toy(), policy(0, false, false));
    for (auto& n : ir.nodes) {
        if (n.kind == NodeKind::add) {
            n.b = ir.mode_node;
            break;
        }
    }
    CHECK_THROWS_AS(check_structure(ir), InvariantViolation);
}

TEST_CASE("structural audit catches a stale width") {
    DatapathIR ir = generate_design(toy(), PipelinePolicy{});
    for (auto& n : ir.nodes) {
        if (n.kind == NodeKind::sub) {
            n.width += 1;
            break;
        }
    }
    CHECK_THROWS_AS(check_structure(ir), InvariantViolation);
}

TEST_CASE("plan mismatches name the coordinate") {
    const RingParams p = toy();
    ConstantOptimizer opt(p);
    const auto fwd = twiddle_schedule(p, Direction::forward);
    const auto inv = inverse_mode_schedule(p);
    DesignPlan plan = plan_design(p, fwd, inv, opt);
    std::swap(plan.butterflies[1][2], plan.butterflies[1][0]);
    CHECK_THROWS_WITH_AS(build_datapath(p, fwd, inv, plan, PipelinePolicy{}),
                         doctest::Contains("(stage 1, butterfly"), InvalidInput);
    DesignPlan short_plan = plan_design(p, fwd, inv, opt);
    short_plan.butterflies[2].pop_back();
    CHECK_THROWS_WITH_AS(build_datapath(p, fwd, inv, short_plan, PipelinePolicy{}),
                         doctest::Contains("(stage 2, butterfly 3)"), InvalidInput);
    auto gap = fwd;
    gap.stages[0].erase(gap.stages[0].begin() + 1);
    CHECK_THROWS_WITH_AS(build_datapath(p, gap, inv, plan_design(p, fwd, inv, opt), PipelinePolicy{}),
                         doctest::Contains("(stage 0, butterfly 1)"), InvalidInput);
    CHECK_THROWS_AS(build_datapath(p, inv, inv, plan_design(p, fwd, inv, opt), PipelinePolicy{}), InvalidInput);
}

TEST_CASE("emitted verilog is multiplier-free and deterministic") {
    const DatapathIR ir = generate_design(toy(), PipelinePolicy{});
    const std::string a = emit_verilog(ir, "q17_ntt8");
    const std::string b = emit_verilog(generate_design(toy(), PipelinePolicy{}), "q17_ntt8");
    CHECK(a == b);
    CHECK(a.find('*') == std::string::npos);
    CHECK(a.find("module q17_ntt8") != std::string::npos);
    CHECK(a.find("input  wire [39:0] din") != std::string::npos);
    CHECK(a.find("output wire [39:0] dout") != std::string::npos);
}

TEST_CASE("dilithium ports and text") {
    const std::string v = emit_verilog(cached("dilithium"), design_name("dilithium", 256));
    CHECK(v.find("module dilithium_ntt256 (") != std::string::npos);
    CHECK(v.find("input  wire [5887:0] din") != std::string::npos);
    CHECK(v.find("output wire [5887:0] dout") != std::string::npos);
    std::size_t stars = 0;
    std::istringstream ss(v);
    for (std::string line; std::getline(ss, line);) {
        const auto code = line.substr(0, line.find("//"));
        stars += static_cast<std::size_t>(std::count(code.begin(), code.end(), '*'));
    }
    CHECK(stars == 0);
}

TEST_CASE("reparsed verilog matches the IR") {
    for (const char* scheme : {"kyber", "dilithium"}) {
        CAPTURE(scheme);
        const DatapathIR& ir = cached(scheme);
        const std::string text = emit_verilog(ir, "m");
        const DatapathIR back = parse_verilog(text);
        CHECK(back.nodes.size() == ir.nodes.size());
        CHECK(kind_counts(back) == kind_counts(ir));
        CHECK(back.latency == ir.latency);
        CHECK(back.outputs == ir.outputs);
        CHECK(back.inputs == ir.inputs);
        CHECK(count_butterflies(back) == count_butterflies(ir));
        check_structure(back);
        CHECK(emit_verilog(back, "m") == text);
    }
}

TEST_CASE("parser rejects text outside the subset") {
    const std::string text = emit_verilog(generate_design(toy(), PipelinePolicy{}), "m");
    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string t = text;
        const auto at = t.find(from);
        REQUIRE(at != std::string::npos);
        t.replace(at, from.size(), to);
        return t;
    };
    CHECK_THROWS_AS(parse_verilog(mutate(" + ", " * ")), InvalidInput);
    CHECK_THROWS_AS(parse_verilog(mutate("endmodule", "")), InvalidInput);
    CHECK_THROWS_AS(parse_verilog(mutate("localparam LATENCY", "localparam LATENCYX")), InvalidInput);
    CHECK_THROWS_WITH_AS(parse_verilog(mutate("wire [0:0] n0 = mode;", "wire [0:0] n0 = nope;")),
                         doctest::Contains("line"), InvalidInput);
}

TEST_CASE("metrics report") {
    const DatapathIR t = generate_design(toy(), PipelinePolicy{});
    const StructuralReport r = structural_report(t);
    CHECK(r.butterflies == 12);
    CHECK(r.latency == t.latency);
    CHECK(r.critical_depth <= 2);
    std::ostringstream os;
    write_report(os, r, {{"design", "q17_ntt8"}});
    const std::string s = os.str();
    for (const char* key : {"design = q17_ntt8", "adders = ", "subs = ", "muxes = ", "regs = ", "latency = ",
                            "butterflies = 12", "csd_adders = ", "opt_adders = ", "stage0.adders = ", "output.regs = "}) {
        CHECK(s.find(key) != std::string::npos);
    }
    const StructuralReport d = structural_report(cached("dilithium"));
    CHECK(d.opt_adders < d.csd_adders);
    CHECK(d.butterflies == 1024);
    long sum = 0;
    for (const auto& [stage, c] : d.stages) sum += c.adders + c.subs;
    CHECK(sum == d.total.adders + d.total.subs);
}

TEST_CASE("mode selects only products, input order and the output bank") {
    const DatapathIR& ir = cached("kyber");
    for (const auto& n : ir.nodes) {
        if (n.kind != NodeKind::mux) continue;
        const bool boundary = n.tag.stage == -1 || n.tag.stage == 7;
        const bool product = n.tag.stage >= 0 && n.tag.stage < 7;
        CHECK((boundary || product));
    }
}

}  // TEST_SUITE
