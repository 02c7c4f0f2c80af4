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

#include "nttc/equivalence.hpp"

#include <ostream>
#include <random>

namespace nttc {

std::vector<StimulusVector> equivalence_vectors(const RingParams& p, std::size_t trials, u64 seed) {
    const std::size_t n = p.length;
    std::vector<StimulusVector> out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> coef(0, p.modulus - 1);
    for (const bool inverse : {false, true}) {
        out.push_back({std::vector<u64>(n, 0), inverse});
        out.push_back({std::vector<u64>(n, p.modulus - 1), inverse});
        for (const std::size_t lane : {std::size_t{0}, std::size_t{1}, n / 2, n - 1}) {
            StimulusVector v{std::vector<u64>(n, 0), inverse};
            v.values[lane] = 1;
            out.push_back(std::move(v));
        }
        for (std::size_t t = 0; t < trials; ++t) {
            StimulusVector v{std::vector<u64>(n), inverse};
            for (auto& x : v.values) x = coef(rng);
            out.push_back(std::move(v));
        }
    }
    return out;
}

namespace {

EquivalenceReport compare(const DatapathIR& ir, const std::vector<StimulusVector>& vectors,
                          const std::vector<Poly>& expected, SimRun* keep = nullptr) {
    EquivalenceReport r;
    for (const auto& v : vectors) (v.inverse ? r.inverse_vectors : r.forward_vectors) += 1;
    Stimulus stim(vectors.begin(), vectors.end());
    SimRun run;
    try {
        run = simulate(ir, stim);
    } catch (const WidthOverflow& e) {
        r.error = e.what();
        return r;
    }
    r.latency = run.latency;
    r.ii = run.ii;
    r.garbled_cycles = run.garbled;
    std::vector<bool> seen(vectors.size(), false);
    for (const auto& obs : run.outputs) {
        const std::size_t k = obs.source;
        seen[k] = true;
        bool bad = false;
        for (std::size_t lane = 0; lane < obs.values.size(); ++lane) {
            if (obs.values[lane] == expected[k][lane]) continue;
            bad = true;
            if (!r.first) r.first = Mismatch{k, vectors[k].inverse, obs.cycle, lane, expected[k][lane], obs.values[lane]};
        }
        r.mismatched_vectors += bad ? 1 : 0;
    }
    for (const bool s : seen) r.missing_outputs += s ? 0 : 1;
    if (keep != nullptr) *keep = std::move(run);
    return r;
}

}  // namespace

EquivalenceReport check_vectors(const DatapathIR& ir, const RingParams& p, const std::vector<StimulusVector>& vectors) {
    std::vector<Poly> expected;
    expected.reserve(vectors.size());
    for (const auto& v : vectors) {
        check_coefficients(v.values, p, "stimulus vector");
        expected.push_back(v.inverse ? ntt_inverse(v.values, p) : ntt_forward(v.values, p));
    }
    return compare(ir, vectors, expected);
}

EquivalenceReport check_equivalence(const DatapathIR& ir, const RingParams& p, std::size_t trials, u64 seed) {
    auto r = check_vectors(ir, p, equivalence_vectors(p, trials, seed));
    r.seed = seed;
    r.trials = trials;
    return r;
}

EquivalenceReport check_roundtrip(const DatapathIR& fwd, const DatapathIR& inv, const RingParams& p,
                                  std::size_t trials, u64 seed) {
    std::vector<StimulusVector> originals;
    for (auto& v : equivalence_vectors(p, trials, seed)) {
        if (!v.inverse) originals.push_back(std::move(v));
    }
    std::vector<Poly> transformed;
    for (const auto& v : originals) transformed.push_back(ntt_forward(v.values, p));
    SimRun first;
    EquivalenceReport a = compare(fwd, originals, transformed, &first);
    a.seed = seed;
    a.trials = trials;
    if (!a.pass()) return a;

    std::vector<StimulusVector> chained;
    std::vector<Poly> back;
    for (const auto& obs : first.outputs) {
        chained.push_back({obs.values, true});
        back.push_back(originals[obs.source].values);
    }
    EquivalenceReport b = compare(inv, chained, back);
    b.seed = seed;
    b.trials = trials;
    b.forward_vectors = a.forward_vectors;
    if (b.latency >= 0 && a.latency >= 0) b.latency += a.latency;
    return b;
}

void write_report(std::ostream& os, const EquivalenceReport& r,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
    bool has_seed = false;
    for (const auto& [k, v] : extra) {
        os << k << " = " << v << '\n';
        has_seed = has_seed || k == "seed";
    }
    if (!has_seed) os << "seed = " << r.seed << '\n' << "trials = " << r.trials << '\n';
    os << "forward_vectors = " << r.forward_vectors << '\n'
       << "inverse_vectors = " << r.inverse_vectors << '\n'
       << "mismatched_vectors = " << r.mismatched_vectors << '\n'
       << "missing_outputs = " << r.missing_outputs << '\n'
       << "garbled_cycles = " << r.garbled_cycles << '\n'
       << "latency = " << r.latency << '\n'
       << "ii = " << r.ii << '\n';
    if (r.first) {
        const auto& m = *r.first;
        os << "first_mismatch = vector " << m.vector << (m.inverse ? " inverse" : " forward") << " cycle " << m.cycle
           << " lane " << m.lane << " expected " << m.expected << " got " << m.got << '\n';
    }
    if (!r.error.empty()) os << "error = " << r.error << '\n';
    os << "result = " << (r.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace nttc
