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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nttc/adder_graph.hpp"
#include "nttc/ring.hpp"

namespace nttc {

/// Record of a failed exhaustive search: no graph with at most
/// `searched_cost` adders (fundamentals bounded by `fundamental_bound`)
/// computes `constant`.
struct OptimalityCertificate {
    u64 constant = 0;
    int searched_cost = -1;
    u64 fundamental_bound = 0;
    u64 graphs_examined = 0;
    bool solution_found = false;
};

struct ScmResult {
    u64 constant = 0;
    AdderGraph graph;
    int csd_cost = 0;
    int binary_cost = 0;
    bool optimal = false;
    bool budget_exhausted = false;
    std::optional<OptimalityCertificate> certificate;

    int cost() const { return graph.cost(); }
};

struct McmResult {
    std::vector<u64> targets;  // distinct, ascending
    AdderGraph graph;
    int csd_cost = 0;          // sum of independent CSD costs of the targets
    int independent_cost = 0;  // sum of the best single-constant graphs

    int cost() const { return graph.cost(); }
};

inline constexpr u64 kDefaultSearchBudget = 50'000'000;
/// Exhaustive search is attempted up to this many adders.
inline constexpr int kExactSearchDepth = 3;

struct ExactSearch {
    std::optional<AdderGraph> graph;  // cheapest graph found, if any
    int searched_cost = -1;           // every cost <= this was ruled out
    u64 examined = 0;
    u64 fundamental_bound = 0;
    bool exhausted = false;           // budget ran out before finishing
};

/// Bounded exhaustive search over adder graphs of up to `max_cost` adders.
ExactSearch exact_scm_search(u64 c, int max_cost, int width, u64 budget = kDefaultSearchBudget);

/// Graph realizing c straight from its CSD digits (cost = nonzero - 1).
AdderGraph csd_graph(u64 c, int width);

ScmResult scm_decompose(u64 c, int width, u64 budget = kDefaultSearchBudget);

/// One shared graph with an output per distinct target. Cost never exceeds
/// the sum of independent CSD costs.
McmResult mcm_decompose(std::span<const u64> targets, int width);

/// Hcub-style fundamental-set growth on its own (no CSD fallback).
AdderGraph hcub(std::span<const u64> targets, int width);

// ---------------------------------------------------------------------------

/// Constant multipliers of one butterfly: Mult1 over the forward and
/// inverse-mode twiddles, Mult2 (x R) and Mult3 (x Q) of the reduction.
struct ButterflyPlan {
    u64 twiddle = 0;
    u64 twiddle_inv = 0;
    std::shared_ptr<const McmResult> mult1;
    std::shared_ptr<const ScmResult> mult2;
    std::shared_ptr<const ScmResult> mult3;

    int cost() const { return mult1->cost() + mult2->cost() + mult3->cost(); }
    int csd_cost() const { return mult1->csd_cost + mult2->csd_cost + mult3->csd_cost; }
};

/// Memoizes per-constant and per-pair results; safe to share between threads
/// and deterministic regardless of call order.
class ConstantOptimizer {
public:
    explicit ConstantOptimizer(const RingParams& p);
    ~ConstantOptimizer();
    ConstantOptimizer(const ConstantOptimizer&) = delete;
    ConstantOptimizer& operator=(const ConstantOptimizer&) = delete;

    const RingParams& params() const { return params_; }

    std::shared_ptr<const ScmResult> scm(u64 c, int width);
    std::shared_ptr<const McmResult> pair(u64 a, u64 b, int width);

    /// Rejects pairs outside [1, Q-1] or whose product is not the
    /// psi^(M/2^(s+1)) ratio linking a forward twiddle to its inverse-mode
    /// counterpart at some stage s.
    ButterflyPlan butterfly(u64 twiddle, u64 twiddle_inv);

    std::shared_ptr<const ScmResult> barrett_r();
    std::shared_ptr<const ScmResult> barrett_q();

private:
    struct Impl;
    RingParams params_;
    std::unique_ptr<Impl> impl_;
};

ButterflyPlan optimize_butterfly_constants(u64 twiddle, u64 twiddle_inv, const RingParams& p);

/// Plans for every butterfly, indexed [stage][butterfly], plus the SCM for
/// every inverse-mode output lane. Distinct constants are optimized once.
struct DesignPlan {
    std::vector<std::vector<ButterflyPlan>> butterflies;
    std::vector<std::shared_ptr<const ScmResult>> output_scales;
};

DesignPlan plan_design(const RingParams& p, const TwiddleSchedule& fwd, const TwiddleSchedule& inv_mode,
                       ConstantOptimizer& opt);

}  // namespace nttc
