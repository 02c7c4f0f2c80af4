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

// Fundamental-set growth for multiple constant multiplication, after the
// Hcub scheme: synthesize any target one adder away from the ready set,
// otherwise adjoin the successor with the best cumulative benefit
// 10^-d' * (d - d') summed over the remaining targets.

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mcm_internal.hpp"
#include "nttc/errors.hpp"
#include "nttc/mcm.hpp"

namespace nttc {

using detail::Derivation;
using detail::for_each_a;
using detail::in_a;

namespace {

class Hcub {
public:
    Hcub(const std::vector<u64>& odd_targets, u64 bound) : todo_(odd_targets), bound_(bound) {
        ready_.push_back(1);
        ready_set_.insert(1);
        for_each_a(1, 1, bound_, [&](u64 v, const Derivation& d) { add_successor(v, d); });
    }

    void run() {
        while (true) {
            synthesize_adjacent();
            if (todo_.empty()) return;
            step();
        }
    }

    const std::vector<std::pair<u64, Derivation>>& steps() const { return steps_; }

private:
    void add_successor(u64 v, const Derivation& d) {
        if (ready_set_.count(v)) return;
        if (succ_.emplace(v, d).second) succ_list_.push_back(v);
    }

    void add_ready(u64 v, const Derivation& d) {
        if (!ready_set_.insert(v).second) return;
        ready_.push_back(v);
        steps_.emplace_back(v, d);
        succ_.erase(v);
        for (u64 r : ready_) {
            for_each_a(v, r, bound_, [&](u64 s, const Derivation& ds) { add_successor(s, ds); });
        }
    }

    void synthesize_adjacent() {
        bool changed = true;
        while (changed && !todo_.empty()) {
            changed = false;
            for (auto it = todo_.begin(); it != todo_.end(); ++it) {
                const u64 t = *it;
                if (ready_set_.count(t)) {
                    todo_.erase(it);
                    changed = true;
                    break;
                }
                if (auto s = succ_.find(t); s != succ_.end()) {
                    const Derivation d = s->second;
                    todo_.erase(it);
                    add_ready(t, d);
                    changed = true;
                    break;
                }
            }
        }
    }

    int residual_cost(u64 d) const {
        if (d == 0) return 1 << 20;
        d = odd_part(d);
        if (d > bound_) return 1 << 20;
        return ready_set_.count(d) ? 0 : csd_cost(d);
    }

    // Adders still needed for t once x is available, building the remaining
    // term t -/+ x*2^a from scratch in CSD.
    int residual(u64 x, u64 t) const {
        int best = residual_cost(t > x ? t - x : x - t);
        best = std::min(best, residual_cost(t + x));
        for (int a = 1; a < 63; ++a) {
            const u128 xs = static_cast<u128>(x) << a;
            if (xs > static_cast<u128>(t) + bound_) break;
            const u64 xv = static_cast<u64>(xs);
            best = std::min(best, residual_cost(t > xv ? t - xv : xv - t));
            if (xs + t <= bound_) best = std::min(best, residual_cost(xv + t));
        }
        return best;
    }

    int distance_with(u64 s, u64 t) const {
        if (in_a(t, s, s, nullptr)) return 1;
        for (u64 r : ready_) {
            if (in_a(t, s, r, nullptr)) return 1;
        }
        return 1 + residual(s, t);
    }

    void step() {
        std::vector<u64> cand;
        cand.reserve(succ_.size());
        for (u64 v : succ_list_) {
            if (succ_.count(v)) cand.push_back(v);
        }
        succ_list_ = cand;
        std::sort(cand.begin(), cand.end());

        std::vector<int> est(todo_.size());
        for (std::size_t i = 0; i < todo_.size(); ++i) {
            const u64 t = todo_[i];
            int e = 1 << 20;
            for (u64 r : ready_) e = std::min(e, 1 + residual(r, t));
            for (u64 s : cand) e = std::min(e, 2 + residual(s, t));
            est[i] = e;
        }

        double best_benefit = 0.0;
        u64 best = 0;
        for (u64 s : cand) {
            double h = 0.0;
            for (std::size_t i = 0; i < todo_.size(); ++i) {
                const int dn = distance_with(s, todo_[i]);
                if (dn < est[i]) h += std::pow(10.0, -dn) * (est[i] - dn);
            }
            if (h > best_benefit) {
                best_benefit = h;
                best = s;
            }
        }
        if (best != 0) {
            add_ready(best, succ_.at(best));
            return;
        }
        // No successor improves any estimate: spell out the smallest target in CSD.
        const u64 t = *std::min_element(todo_.begin(), todo_.end());
        const CsdForm f = csd_recode(t);
        u64 acc = 1;
        int gap = 0;
        for (std::size_t i = 1; i < f.digits.size(); ++i) {
            ++gap;
            if (f.digits[i] == '0') continue;
            const bool minus = f.digits[i] == '-';
            const u64 next = minus ? (acc << gap) - 1 : (acc << gap) + 1;
            add_ready(next, Derivation{acc, gap, 1, 0, minus});
            acc = next;
            gap = 0;
        }
    }

    std::vector<u64> todo_;
    u64 bound_;
    std::vector<u64> ready_;
    std::unordered_set<u64> ready_set_;
    std::unordered_map<u64, Derivation> succ_;
    std::vector<u64> succ_list_;
    std::vector<std::pair<u64, Derivation>> steps_;
};

}  // namespace

AdderGraph hcub(std::span<const u64> targets, int width) {
    std::vector<u64> odd;
    u64 max_odd = 1;
    for (u64 t : targets) {
        if (t == 0) throw InvalidInput("hcub: constant must be positive");
        const u64 o = odd_part(t);
        max_odd = std::max(max_odd, o);
        if (o != 1) odd.push_back(o);
    }
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    const u64 bound = u64{1} << (bit_length(max_odd) + 1);
    Hcub h(odd, bound);
    h.run();
    return detail::assemble_graph(width, h.steps(), std::vector<u64>(targets.begin(), targets.end()));
}

}  // namespace nttc
