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

#include "nttc/metrics.hpp"

#include <map>
#include <ostream>

namespace nttc {

namespace {

void tally(NodeCounts& c, const Node& n) {
    switch (n.kind) {
        case NodeKind::add:
        case NodeKind::add_const: ++c.adders; break;
        case NodeKind::sub:
        case NodeKind::cond_sub: ++c.subs; break;
        case NodeKind::mux: ++c.muxes; break;
        case NodeKind::reg:
            ++c.regs;
            c.reg_bits += n.width;
            break;
        default: break;
    }
}

void write_counts(std::ostream& os, const std::string& prefix, const NodeCounts& c) {
    os << prefix << "adders = " << c.adders << '\n'
       << prefix << "subs = " << c.subs << '\n'
       << prefix << "muxes = " << c.muxes << '\n'
       << prefix << "regs = " << c.regs << '\n'
       << prefix << "reg_bits = " << c.reg_bits << '\n';
}

}  // namespace

StructuralReport structural_report(const DatapathIR& ir) {
    StructuralReport r;
    std::map<int, NodeCounts> per;
    for (const auto& n : ir.nodes) {
        tally(r.total, n);
        tally(per[n.tag.stage], n);
    }
    r.latency = ir.latency;
    r.butterflies = count_butterflies(ir);
    r.csd_adders = ir.csd_adders;
    r.opt_adders = ir.opt_adders;
    r.critical_depth = register_to_register_depth(ir);
    r.stages.assign(per.begin(), per.end());
    return r;
}

void write_report(std::ostream& os, const StructuralReport& r,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
    for (const auto& [k, v] : extra) os << k << " = " << v << '\n';
    write_counts(os, "", r.total);
    os << "latency = " << r.latency << '\n'
       << "butterflies = " << r.butterflies << '\n'
       << "csd_adders = " << r.csd_adders << '\n'
       << "opt_adders = " << r.opt_adders << '\n'
       << "critical_adder_depth = " << r.critical_depth << '\n';
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        const auto& [stage, c] = r.stages[i];
        std::string name = "stage" + std::to_string(stage);
        if (stage < 0) name = "input";
        if (stage > 0 && i + 1 == r.stages.size()) name = "output";
        write_counts(os, name + ".", c);
    }
}

}  // namespace nttc
