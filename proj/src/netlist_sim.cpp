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

#include "nttc/netlist_sim.hpp"

#include <algorithm>
#include <random>

namespace nttc {

namespace {

constexpr std::int64_t kIdle = -1;
constexpr std::int64_t kMixed = -2;

std::int64_t merge(std::int64_t x, std::int64_t y) { return x == y ? x : kMixed; }

std::string describe(const DatapathIR& ir, std::size_t i, std::size_t cycle, const std::string& what) {
    const Node& n = ir.nodes[i];
    return "width overflow at node n" + std::to_string(i) + " (" + std::string(to_string(n.kind)) + ", stage " +
           std::to_string(n.tag.stage) + ", butterfly " + std::to_string(n.tag.butterfly) + ") in cycle " +
           std::to_string(cycle) + ": " + what;
}

}  // namespace

SimRun simulate(const DatapathIR& ir, const Stimulus& stimulus, std::optional<std::size_t> flush) {
    if (ir.outputs.empty() || ir.outputs.size() != ir.lanes) throw InvalidInput("simulate: design has no output lanes");
    const std::size_t count = ir.nodes.size();
    const std::size_t lanes = ir.lanes;
    const u64 port_limit = u64{1} << ir.lane_width;
    for (std::size_t c = 0; c < stimulus.size(); ++c) {
        if (!stimulus[c]) continue;
        const auto& v = stimulus[c]->values;
        if (v.size() != lanes) {
            throw InvalidInput("stimulus cycle " + std::to_string(c) + " has " + std::to_string(v.size()) +
                               " coefficients, design has " + std::to_string(lanes) + " lanes");
        }
        for (std::size_t l = 0; l < lanes; ++l) {
            if (v[l] >= port_limit) {
                throw InvalidInput("stimulus cycle " + std::to_string(c) + " lane " + std::to_string(l) +
                                   " does not fit " + std::to_string(ir.lane_width) + " bits");
            }
        }
    }

    std::vector<u128> val(count, 0);
    std::vector<std::int64_t> tag(count, kIdle);
    std::vector<u128> state(count, 0);
    std::vector<std::int64_t> state_tag(count, kIdle);
    std::vector<std::size_t> regs;
    std::vector<int> widths(count);
    for (std::size_t i = 0; i < count; ++i) {
        widths[i] = ir.nodes[i].width;
        if (ir.nodes[i].kind == NodeKind::reg) regs.push_back(i);
    }

    SimRun run;
    const std::size_t total = stimulus.size() + flush.value_or(static_cast<std::size_t>(ir.latency) + 1);
    run.cycles = total;
    for (std::size_t cycle = 0; cycle < total; ++cycle) {
        const StimulusVector* in = cycle < stimulus.size() && stimulus[cycle] ? &*stimulus[cycle] : nullptr;
        const std::int64_t in_tag = in != nullptr ? static_cast<std::int64_t>(cycle) : kIdle;
        for (std::size_t i = 0; i < count; ++i) {
            const Node& n = ir.nodes[i];
            const auto a = static_cast<std::size_t>(n.a);
            const auto b = static_cast<std::size_t>(n.b);
            u128 v = 0;
            std::int64_t t = kIdle;
            switch (n.kind) {
                case NodeKind::input:
                    v = in != nullptr ? in->values[static_cast<std::size_t>(n.lane)] : 0;
                    t = in_tag;
                    break;
                case NodeKind::mode:
                    v = in != nullptr && in->inverse ? 1 : 0;
                    t = in_tag;
                    break;
                case NodeKind::reg:
                    v = state[i];
                    t = state_tag[i];
                    break;
                case NodeKind::add:
                    v = (val[a] << n.a_shift) + (val[b] << n.b_shift);
                    t = merge(tag[a], tag[b]);
                    break;
                case NodeKind::sub: {
                    const u128 l = val[a] << n.a_shift;
                    const u128 r = val[b] << n.b_shift;
                    if (r > l) throw WidthOverflow(i, n.tag, cycle, describe(ir, i, cycle, "negative difference"));
                    v = l - r;
                    t = merge(tag[a], tag[b]);
                    break;
                }
                case NodeKind::add_const:
                    v = val[a] + n.constant;
                    t = tag[a];
                    break;
                case NodeKind::cond_sub:
                    v = val[a] >= n.constant ? val[a] - n.constant : val[a];
                    t = tag[a];
                    break;
                case NodeKind::mux:
                    v = val[a] != 0 ? val[b] : val[static_cast<std::size_t>(n.c)];
                    t = merge(merge(tag[a], tag[b]), tag[static_cast<std::size_t>(n.c)]);
                    break;
                case NodeKind::shl:
                    v = val[a] << n.a_shift;
                    t = tag[a];
                    break;
                case NodeKind::shr:
                    v = val[a] >> n.a_shift;
                    t = tag[a];
                    break;
            }
            if (widths[i] < 128 && (v >> widths[i]) != 0) {
                throw WidthOverflow(i, n.tag, cycle,
                                    describe(ir, i, cycle, "value needs more than " + std::to_string(widths[i]) + " bits"));
            }
            val[i] = v;
            tag[i] = t;
        }

        std::int64_t out_tag = tag[static_cast<std::size_t>(ir.outputs.front())];
        for (const auto o : ir.outputs) out_tag = merge(out_tag, tag[static_cast<std::size_t>(o)]);
        if (out_tag >= 0) {
            Observation obs;
            obs.cycle = cycle;
            obs.source = static_cast<std::size_t>(out_tag);
            obs.values.reserve(lanes);
            for (const auto o : ir.outputs) obs.values.push_back(static_cast<u64>(val[static_cast<std::size_t>(o)]));
            run.outputs.push_back(std::move(obs));
        } else if (out_tag == kMixed) {
            ++run.garbled;
        }

        for (const auto r : regs) {
            const auto src = static_cast<std::size_t>(ir.nodes[r].a);
            state[r] = val[src];
            state_tag[r] = tag[src];
        }
    }

    for (std::size_t k = 0; k < run.outputs.size(); ++k) {
        const auto& o = run.outputs[k];
        const int lat = static_cast<int>(o.cycle - o.source);
        if (k == 0) run.latency = lat;
        else if (lat != run.latency) run.latency_consistent = false;
        if (k > 0) run.ii = std::max(run.ii, static_cast<int>(o.cycle - run.outputs[k - 1].cycle));
    }
    if (!run.latency_consistent) run.latency = -1;
    return run;
}

int measure_ii(const DatapathIR& ir, u64 modulus, u64 seed, std::size_t period) {
    if (period == 0) throw InvalidInput("measure_ii: period must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> coef(0, modulus - 1);
    const std::size_t cycles = std::max<std::size_t>(8, 3 * static_cast<std::size_t>(ir.latency));
    Stimulus stim(cycles);
    std::size_t applied = 0;
    for (std::size_t c = 0; c < cycles; c += period) {
        StimulusVector v;
        v.values.resize(ir.lanes);
        for (auto& x : v.values) x = coef(rng);
        v.inverse = (applied & 1) != 0;
        stim[c] = std::move(v);
        ++applied;
    }
    const SimRun run = simulate(ir, stim);
    if (run.outputs.size() != applied || !run.latency_consistent) return 0;
    return run.ii;
}

}  // namespace nttc
