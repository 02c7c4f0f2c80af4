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

#include "nttc/mcm.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <tuple>

#include "mcm_internal.hpp"
#include "nttc/barrett.hpp"
#include "nttc/errors.hpp"

namespace nttc {

namespace {

std::vector<std::pair<u64, detail::Derivation>> graph_steps(const AdderGraph& g) {
    std::vector<std::pair<u64, detail::Derivation>> steps;
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        const u64 l = g.nodes[static_cast<std::size_t>(n.lhs)].fundamental;
        const u64 r = g.nodes[static_cast<std::size_t>(n.rhs)].fundamental;
        detail::Derivation d{l, n.lhs_shift, r, n.rhs_shift, n.op == AdderOp::sub};
        if (n.negate_lhs) {
            if (n.op == AdderOp::sub) throw InvariantViolation("graph_steps: node computes a negative value");
            d = {r, n.rhs_shift, l, n.lhs_shift, true};
        }
        steps.emplace_back(n.fundamental, d);
    }
    return steps;
}

bool better(const AdderGraph& a, const AdderGraph& b) {
    return a.cost() < b.cost() || (a.cost() == b.cost() && a.depth() < b.depth());
}

// Runs fn(i) for i in [0, count) on a small pool; results land by index.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

McmResult mcm_decompose(std::span<const u64> targets, int width) {
    if (targets.empty()) throw InvalidInput("mcm_decompose: empty target set");
    McmResult res;
    std::set<u64> distinct;
    for (u64 t : targets) {
        if (t == 0) throw InvalidInput("mcm_decompose: constants must be positive");
        distinct.insert(t);
    }
    res.targets.assign(distinct.begin(), distinct.end());

    std::vector<std::pair<u64, detail::Derivation>> union_steps;
    for (u64 t : res.targets) {
        res.csd_cost += csd_cost(t);
        const ScmResult s = scm_decompose(t, width);
        res.independent_cost += s.cost();
        for (auto& step : graph_steps(s.graph)) union_steps.push_back(step);
    }
    AdderGraph independent = detail::assemble_graph(width, union_steps, res.targets);
    AdderGraph shared = hcub(res.targets, width);
    res.graph = better(independent, shared) ? std::move(independent) : std::move(shared);
    if (res.graph.cost() > res.csd_cost) {
        throw InvariantViolation("mcm_decompose: result costs more than the independent CSD baseline");
    }
    return res;
}

// ---------------------------------------------------------------------------

struct ConstantOptimizer::Impl {
    std::mutex mu;
    std::map<std::pair<u64, int>, std::shared_ptr<const ScmResult>> scm;
    std::map<std::tuple<u64, u64, int>, std::shared_ptr<const McmResult>> pairs;
};

ConstantOptimizer::ConstantOptimizer(const RingParams& p) : params_(p), impl_(std::make_unique<Impl>()) {}
ConstantOptimizer::~ConstantOptimizer() = default;

std::shared_ptr<const ScmResult> ConstantOptimizer::scm(u64 c, int width) {
    const auto key = std::make_pair(c, width);
    {
        std::lock_guard lock(impl_->mu);
        if (auto it = impl_->scm.find(key); it != impl_->scm.end()) return it->second;
    }
    auto res = std::make_shared<const ScmResult>(scm_decompose(c, width));
    std::lock_guard lock(impl_->mu);
    return impl_->scm.emplace(key, std::move(res)).first->second;
}

std::shared_ptr<const McmResult> ConstantOptimizer::pair(u64 a, u64 b, int width) {
    const auto key = std::make_tuple(std::min(a, b), std::max(a, b), width);
    {
        std::lock_guard lock(impl_->mu);
        if (auto it = impl_->pairs.find(key); it != impl_->pairs.end()) return it->second;
    }
    const u64 targets[2] = {a, b};
    auto res = std::make_shared<const McmResult>(mcm_decompose(targets, width));
    std::lock_guard lock(impl_->mu);
    return impl_->pairs.emplace(key, std::move(res)).first->second;
}

std::shared_ptr<const ScmResult> ConstantOptimizer::barrett_r() {
    return scm(params_.barrett_r, barrett_widths(params_).product);
}

std::shared_ptr<const ScmResult> ConstantOptimizer::barrett_q() {
    return scm(params_.modulus, barrett_widths(params_).quotient);
}

ButterflyPlan ConstantOptimizer::butterfly(u64 twiddle, u64 twiddle_inv) {
    const u64 q = params_.modulus;
    if (twiddle == 0 || twiddle >= q || twiddle_inv == 0 || twiddle_inv >= q) {
        throw InvalidInput("butterfly constants must lie in [1, Q-1]");
    }
    const u64 ratio = mul_mod(twiddle, twiddle_inv, q);
    bool consistent = false;
    for (int s = 0; s < params_.stages && !consistent; ++s) {
        consistent = ratio == pow_mod(params_.psi, params_.transform_size() >> (s + 1), q);
    }
    if (!consistent) {
        throw InvalidInput("inconsistent twiddle pair (" + std::to_string(twiddle) + ", " + std::to_string(twiddle_inv) +
                           "): not a forward/inverse-mode pair of any stage");
    }
    ButterflyPlan plan;
    plan.twiddle = twiddle;
    plan.twiddle_inv = twiddle_inv;
    plan.mult1 = pair(twiddle, twiddle_inv, params_.width);
    plan.mult2 = barrett_r();
    plan.mult3 = barrett_q();
    return plan;
}

ButterflyPlan optimize_butterfly_constants(u64 twiddle, u64 twiddle_inv, const RingParams& p) {
    ConstantOptimizer opt(p);
    return opt.butterfly(twiddle, twiddle_inv);
}

DesignPlan plan_design(const RingParams& p, const TwiddleSchedule& fwd, const TwiddleSchedule& inv_mode,
                       ConstantOptimizer& opt) {
    if (fwd.kind != ScheduleKind::forward || inv_mode.kind != ScheduleKind::inverse_mode) {
        throw InvalidInput("plan_design: expected a forward and an inverse-mode schedule");
    }
    const auto stages = static_cast<std::size_t>(p.stages);
    if (fwd.stages.size() != stages || inv_mode.stages.size() != stages) {
        throw InvalidInput("plan_design: schedule stage count does not match the ring");
    }

    // Optimize each distinct pair once, then fan out.
    std::vector<std::pair<u64, u64>> distinct;
    {
        std::set<std::pair<u64, u64>> seen;
        for (std::size_t s = 0; s < stages; ++s) {
            if (fwd.stages[s].size() != inv_mode.stages[s].size()) {
                throw InvalidInput("plan_design: schedules differ in butterfly count at stage " + std::to_string(s));
            }
            for (std::size_t b = 0; b < fwd.stages[s].size(); ++b) {
                auto key = std::make_pair(fwd.stages[s][b].twiddle, inv_mode.stages[s][b].twiddle);
                if (seen.insert(key).second) distinct.push_back(key);
            }
        }
    }
    const auto scales = inverse_output_scales(p);
    std::vector<u64> distinct_scales(scales.begin(), scales.end());
    std::sort(distinct_scales.begin(), distinct_scales.end());
    distinct_scales.erase(std::unique(distinct_scales.begin(), distinct_scales.end()), distinct_scales.end());

    opt.barrett_r();
    opt.barrett_q();
    parallel_for(distinct.size() + distinct_scales.size(), [&](std::size_t i) {
        if (i < distinct.size()) {
            opt.butterfly(distinct[i].first, distinct[i].second);
        } else {
            opt.scm(distinct_scales[i - distinct.size()], p.width);
        }
    });

    DesignPlan plan;
    plan.butterflies.resize(stages);
    for (std::size_t s = 0; s < stages; ++s) {
        for (std::size_t b = 0; b < fwd.stages[s].size(); ++b) {
            plan.butterflies[s].push_back(opt.butterfly(fwd.stages[s][b].twiddle, inv_mode.stages[s][b].twiddle));
        }
    }
    for (u64 c : scales) plan.output_scales.push_back(opt.scm(c, p.width));
    return plan;
}

}  // namespace nttc
