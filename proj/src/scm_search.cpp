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
#include <set>
#include <string>

#include "mcm_internal.hpp"
#include "nttc/errors.hpp"
#include "nttc/mcm.hpp"

namespace nttc {

namespace detail {

AdderGraph assemble_graph(int width, const std::vector<std::pair<u64, Derivation>>& steps,
                          const std::vector<u64>& targets) {
    std::unordered_map<u64, std::size_t> step_of;
    for (std::size_t i = 0; i < steps.size(); ++i) step_of.emplace(steps[i].first, i);

    // Mark the steps reachable from the targets.
    std::vector<bool> used(steps.size(), false);
    std::vector<u64> work;
    for (u64 t : targets) work.push_back(odd_part(t));
    while (!work.empty()) {
        const u64 v = work.back();
        work.pop_back();
        if (v == 1) continue;
        auto it = step_of.find(v);
        if (it == step_of.end()) throw InvariantViolation("assemble_graph: no derivation for fundamental " + std::to_string(v));
        if (used[it->second]) continue;
        used[it->second] = true;
        work.push_back(steps[it->second].second.lhs);
        work.push_back(steps[it->second].second.rhs);
    }

    AdderGraph g = wire_graph(width);
    std::unordered_map<u64, int> node_of{{1, 0}};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!used[i] || node_of.count(steps[i].first)) continue;
        const auto& d = steps[i].second;
        AdderNode n;
        n.op = d.subtract ? AdderOp::sub : AdderOp::add;
        n.lhs = node_of.at(d.lhs);
        n.lhs_shift = d.lhs_shift;
        n.rhs = node_of.at(d.rhs);
        n.rhs_shift = d.rhs_shift;
        n.fundamental = steps[i].first;
        node_of[n.fundamental] = static_cast<int>(g.nodes.size());
        g.nodes.push_back(n);
    }
    std::set<u64> seen;
    for (u64 t : targets) {
        if (!seen.insert(t).second) continue;
        const u64 o = odd_part(t);
        g.outputs.push_back({t, node_of.at(o), __builtin_ctzll(t)});
    }
    validate_graph(g);
    return g;
}

}  // namespace detail

using detail::Derivation;
using detail::for_each_a;
using detail::in_a;

ExactSearch exact_scm_search(u64 c, int max_cost, int width, u64 budget) {
    if (c == 0) throw InvalidInput("exact_scm_search: constant must be positive");
    const u64 odd = odd_part(c);
    ExactSearch res;
    res.fundamental_bound = u64{1} << (bit_length(odd) + 1);
    const u64 bound = res.fundamental_bound;
    auto found = [&](std::vector<std::pair<u64, Derivation>> steps) {
        res.graph = detail::assemble_graph(width, steps, {c});
    };

    if (odd == 1) {
        res.graph = detail::assemble_graph(width, {}, {c});
        return res;
    }
    res.searched_cost = 0;
    if (max_cost < 1) return res;

    // Cost 1: c in A(1, 1).
    Derivation d;
    ++res.examined;
    if (in_a(odd, 1, 1, &d)) {
        found({{odd, d}});
        return res;
    }
    res.searched_cost = 1;
    if (max_cost < 2) return res;

    std::vector<std::pair<u64, Derivation>> level1;
    for_each_a(1, 1, bound, [&](u64 v, const Derivation& dv) {
        if (v != 1) level1.emplace_back(v, dv);
    });
    std::sort(level1.begin(), level1.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    level1.erase(std::unique(level1.begin(), level1.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                 level1.end());

    // Cost 2: c in A(1, f1) or A(f1, f1).
    for (const auto& [f1, d1] : level1) {
        ++res.examined;
        if (in_a(odd, 1, f1, &d) || in_a(odd, f1, f1, &d)) {
            found({{f1, d1}, {odd, d}});
            return res;
        }
    }
    res.searched_cost = 2;
    if (max_cost < 3) return res;

    // Cost 3: every ready set {1, f1, f2} with f2 one adder away from {1, f1}.
    for (const auto& [f1, d1] : level1) {
        std::vector<std::pair<u64, Derivation>> level2;
        auto collect = [&](u64 v, const Derivation& dv) {
            if (v != 1 && v != f1) level2.emplace_back(v, dv);
        };
        for_each_a(1, 1, bound, collect);
        for_each_a(1, f1, bound, collect);
        for_each_a(f1, f1, bound, collect);
        std::sort(level2.begin(), level2.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        level2.erase(std::unique(level2.begin(), level2.end(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; }),
                     level2.end());
        for (const auto& [f2, d2] : level2) {
            if (++res.examined > budget) {
                res.exhausted = true;
                return res;
            }
            if (in_a(odd, 1, f2, &d) || in_a(odd, f1, f2, &d) || in_a(odd, f2, f2, &d)) {
                found({{f1, d1}, {f2, d2}, {odd, d}});
                return res;
            }
        }
    }
    res.searched_cost = 3;
    return res;
}

AdderGraph csd_graph(u64 c, int width) {
    const u64 odd = odd_part(c);
    const CsdForm f = csd_recode(odd);
    std::vector<std::pair<u64, Derivation>> steps;
    u64 acc = 1;
    int gap = 0;
    for (std::size_t i = 1; i < f.digits.size(); ++i) {
        ++gap;
        const char digit = f.digits[i];
        if (digit == '0') continue;
        const u64 next = digit == '+' ? (acc << gap) + 1 : (acc << gap) - 1;
        steps.emplace_back(next, Derivation{acc, gap, 1, 0, digit == '-'});
        acc = next;
        gap = 0;
    }
    return detail::assemble_graph(width, steps, {c});
}

ScmResult scm_decompose(u64 c, int width, u64 budget) {
    if (c == 0) throw InvalidInput("scm_decompose: constant must be positive");
    if (width < bit_length(c) && width < 1) throw InvalidInput("scm_decompose: width too small");
    ScmResult res;
    res.constant = c;
    res.csd_cost = csd_cost(c);
    res.binary_cost = binary_cost(c);

    const ExactSearch ex = exact_scm_search(c, kExactSearchDepth, width, budget);
    if (ex.graph) {
        res.graph = *ex.graph;
        res.optimal = true;
        res.certificate = OptimalityCertificate{c, ex.searched_cost, ex.fundamental_bound, ex.examined, false};
        return res;
    }
    res.budget_exhausted = ex.exhausted;

    AdderGraph best = csd_graph(c, width);
    const u64 target = c;
    AdderGraph h = hcub(std::span<const u64>(&target, 1), width);
    if (h.cost() < best.cost() || (h.cost() == best.cost() && h.depth() < best.depth())) best = std::move(h);
    res.graph = std::move(best);
    if (!ex.exhausted && ex.searched_cost >= 0 && res.graph.cost() == ex.searched_cost + 1) {
        // The heuristic landed exactly one above the ruled-out cost.
        res.optimal = true;
        res.certificate = OptimalityCertificate{c, ex.searched_cost, ex.fundamental_bound, ex.examined, false};
    }
    return res;
}

}  // namespace nttc
