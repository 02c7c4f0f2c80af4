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

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nttc/datapath.hpp"

namespace nttc {

struct NodeCounts {
    long adders = 0;    // add, add_const
    long subs = 0;      // sub, cond_sub
    long muxes = 0;
    long regs = 0;
    long reg_bits = 0;
};

struct StructuralReport {
    NodeCounts total;
    int latency = 0;
    std::size_t butterflies = 0;
    long csd_adders = 0;
    long opt_adders = 0;
    int critical_depth = 0;
    /// Keyed by node stage: -1 input boundary, last entry the output bank.
    std::vector<std::pair<int, NodeCounts>> stages;
};

StructuralReport structural_report(const DatapathIR& ir);

/// `key = value` lines; `extra` pairs are written first, in order.
void write_report(std::ostream& os, const StructuralReport& r,
                  const std::vector<std::pair<std::string, std::string>>& extra = {});

}  // namespace nttc
