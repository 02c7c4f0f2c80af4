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
#include <ostream>
#include <sstream>

#include "nttc/errors.hpp"
#include "nttc/verilog.hpp"

namespace nttc {

std::string design_name(std::string_view scheme, std::size_t length) {
    return std::string(scheme) + "_ntt" + std::to_string(length);
}

namespace {

std::string ref(std::int32_t id) { return "n" + std::to_string(id); }

std::string shifted(std::int32_t id, int k) {
    if (k == 0) return ref(id);
    return "{" + ref(id) + ", " + std::to_string(k) + "'b0}";
}

std::string literal(u64 v) { return std::to_string(std::max(1, bit_length(v))) + "'d" + std::to_string(v); }

std::string range(int hi, int lo) { return "[" + std::to_string(hi) + ":" + std::to_string(lo) + "]"; }

std::string expression(const DatapathIR& ir, const Node& n) {
    switch (n.kind) {
        case NodeKind::mode: return "mode";
        case NodeKind::input: {
            const int lo = n.lane * ir.lane_width;
            return "din" + range(lo + n.width - 1, lo);
        }
        case NodeKind::add: return shifted(n.a, n.a_shift) + " + " + shifted(n.b, n.b_shift);
        case NodeKind::sub: return shifted(n.a, n.a_shift) + " - " + shifted(n.b, n.b_shift);
        case NodeKind::add_const: return ref(n.a) + " + " + literal(n.constant);
        case NodeKind::cond_sub: {
            const std::string k = literal(n.constant);
            return "(" + ref(n.a) + " >= " + k + ") ? " + ref(n.a) + " - " + k + " : " + ref(n.a);
        }
        case NodeKind::mux: return ref(n.a) + " ? " + ref(n.b) + " : " + ref(n.c);
        case NodeKind::shl: return shifted(n.a, n.a_shift);
        case NodeKind::shr: return ref(n.a) + range(n.a_shift + n.width - 1, n.a_shift);
        case NodeKind::reg: break;
    }
    throw InvariantViolation("emit_verilog: registers have no expression");
}

}  // namespace

void emit_verilog(std::ostream& os, const DatapathIR& ir, std::string_view module,
                  const std::vector<std::string>& banner) {
    const long bus = static_cast<long>(ir.lanes) * ir.lane_width;
    for (const auto& line : banner) os << "// " << line << '\n';
    os << "module " << module << " (\n"
       << "    input  wire clk,\n"
       << "    input  wire rst,\n"
       << "    input  wire mode,\n"
       << "    input  wire [" << bus - 1 << ":0] din,\n"
       << "    output wire [" << bus - 1 << ":0] dout\n"
       << ");\n";
    os << "    localparam LANES = " << ir.lanes << ";\n"
       << "    localparam LANE_WIDTH = " << ir.lane_width << ";\n"
       << "    localparam LATENCY = " << ir.latency << ";\n"
       << "    localparam MAX_ADDER_DEPTH = " << ir.policy.max_adder_depth << ";\n"
       << "    localparam REGISTER_INPUTS = " << (ir.policy.register_inputs ? 1 : 0) << ";\n"
       << "    localparam REGISTER_OUTPUTS = " << (ir.policy.register_outputs ? 1 : 0) << ";\n"
       << "    localparam OPT_ADDERS = " << ir.opt_adders << ";\n"
       << "    localparam CSD_ADDERS = " << ir.csd_adders << ";\n\n";

    NodeTag tag{-2, -2};
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        if (!(n.tag == tag)) {
            tag = n.tag;
            os << "    // @ " << tag.stage << ' ' << tag.butterfly << '\n';
        }
        const std::string decl = range(n.width - 1, 0) + " " + ref(static_cast<std::int32_t>(i));
        if (n.kind == NodeKind::reg) {
            os << "    reg " << decl << ";\n";
        } else {
            os << "    wire " << decl << " = " << expression(ir, n) << ";\n";
        }
    }

    os << "\n    always @(posedge clk) begin\n        if (rst) begin\n";
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        if (n.kind == NodeKind::reg) os << "            n" << i << " <= " << n.width << "'d0;\n";
    }
    os << "        end else begin\n";
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        const Node& n = ir.nodes[i];
        if (n.kind == NodeKind::reg) os << "            n" << i << " <= " << ref(n.a) << ";\n";
    }
    os << "        end\n    end\n\n";
    for (std::size_t lane = 0; lane < ir.outputs.size(); ++lane) {
        const int lo = static_cast<int>(lane) * ir.lane_width;
        os << "    assign dout" << range(lo + ir.lane_width - 1, lo) << " = " << ref(ir.outputs[lane]) << ";\n";
    }
    os << "endmodule\n";
}

std::string emit_verilog(const DatapathIR& ir, std::string_view module, const std::vector<std::string>& banner) {
    std::ostringstream os;
    emit_verilog(os, ir, module, banner);
    return os.str();
}

}  // namespace nttc
