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

#include <random>
#include <sstream>

#include "nttc/equivalence.hpp"
#include "nttc/errors.hpp"
#include "nttc/netlist_sim.hpp"
#include "nttc/vectors.hpp"
#include "nttc/verilog.hpp"
#include "oracles.hpp"

using namespace nttc;

namespace {

RingParams toy() { return derive_params(17, 8, Variant::full); }

const DatapathIR& design(const std::string& scheme) {
    static std::map<std::string, DatapathIR> cache;
    auto it = cache.find(scheme);
    if (it == cache.end()) {
        const RingParams p = scheme == "toy" ? toy() : preset_params(scheme);
        it = cache.emplace(scheme, generate_design(p, PipelinePolicy{})).first;
    }
    return it->second;
}

Stimulus repeat(const std::vector<u64>& v, bool inverse, std::size_t cycles) {
    return Stimulus(cycles, StimulusVector{v, inverse});
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("zero in, zero out after the latency") {
    const DatapathIR& ir = design("toy");
    const SimRun run = simulate(ir, repeat(std::vector<u64>(8, 0), false, 5));
    REQUIRE(run.outputs.size() == 5);
    for (const auto& o : run.outputs) {
        CHECK(o.cycle - o.source == static_cast<std::size_t>(ir.latency));
        CHECK(o.values == std::vector<u64>(8, 0));
    }
    CHECK(run.latency == ir.latency);
}

TEST_CASE("delta gives all ones") {
    for (const char* s : {"toy", "dilithium"}) {
        const DatapathIR& ir = design(s);
        std::vector<u64> delta(ir.lanes, 0);
        delta[0] = 1;
        const SimRun run = simulate(ir, repeat(delta, false, 1));
        REQUIRE(run.outputs.size() == 1);
        CHECK(run.outputs[0].values == std::vector<u64>(ir.lanes, 1));
    }
}

TEST_CASE("dilithium back-to-back random vectors match the golden model") {
    const RingParams p = preset_params("dilithium");
    const DatapathIR& ir = design("dilithium");
    std::mt19937_64 rng(41);
    Stimulus stim;
    std::vector<std::vector<u64>> want;
    for (int i = 0; i < 100; ++i) {
        auto v = oracle::random_poly(rng, 256, p.modulus);
        want.push_back(oracle::ntt_naive(v, p.modulus, 256, p.psi));
        stim.push_back(StimulusVector{std::move(v), false});
    }
    const SimRun run = simulate(ir, stim);
    REQUIRE(run.outputs.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) CHECK(run.outputs[i].values == want[run.outputs[i].source]);
    CHECK(run.ii == 1);
    CHECK(run.latency == ir.latency);
    CHECK(run.garbled == 0);
}

TEST_CASE("initiation interval") {
    const DatapathIR& ir = design("kyber");
    CHECK(measure_ii(ir, 3329, 1) == 1);
    CHECK(measure_ii(ir, 3329, 1, 2) == 2);
    CHECK(measure_ii(ir, 3329, 1, 3) == 3);
    PipelinePolicy none;
    none.max_adder_depth = 0;
    none.register_inputs = none.register_outputs = false;
    const DatapathIR comb = generate_design(toy(), none);
    CHECK(measure_ii(comb, 17, 1) == 1);
    const SimRun run = simulate(comb, repeat(std::vector<u64>(8, 3), true, 4));
    CHECK(run.latency == 0);
}

TEST_CASE("width overflow names the node") {
    DatapathIR ir = design("toy");
    std::size_t victim = 0;
    for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
        if (ir.nodes[i].kind == NodeKind::add && ir.nodes[i].tag.stage == 1) {
            victim = i;
            break;
        }
    }
    REQUIRE(victim != 0);
    ir.nodes[victim].width = 1;
    std::mt19937_64 rng(2);
    Stimulus stim;
    for (int i = 0; i < 20; ++i) stim.push_back(StimulusVector{oracle::random_poly(rng, 8, 17), false});
    try {
        simulate(ir, stim);
        FAIL("expected a width overflow");
    } catch (const WidthOverflow& e) {
        CHECK(e.node == victim);
        CHECK(e.tag.stage == 1);
        CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
    }
    const EquivalenceReport r = check_equivalence(ir, toy(), 10, 1);
    CHECK_FALSE(r.pass());
    CHECK(r.error.find("width overflow") != std::string::npos);
}

TEST_CASE("stimulus validation") {
    const DatapathIR& ir = design("toy");
    CHECK_THROWS_AS(simulate(ir, repeat(std::vector<u64>(7, 0), false, 1)), InvalidInput);
    CHECK_THROWS_AS(simulate(ir, repeat(std::vector<u64>(8, 32), false, 1)), InvalidInput);
}

TEST_CASE("toy design passes ten thousand trials") {
    const EquivalenceReport r = check_equivalence(design("toy"), toy(), 10000, 9);
    CHECK(r.pass());
    CHECK(r.forward_vectors == 10006);
    CHECK(r.inverse_vectors == 10006);
    CHECK(r.ii == 1);
}

TEST_CASE("perturbed twiddle mux is caught and located") {
    DatapathIR ir = design("toy");
    bool done = false;
    for (auto& n : ir.nodes) {
        if (n.kind == NodeKind::mux && n.tag.stage == 1 && n.tag.butterfly == 2) {
            std::swap(n.b, n.c);
            done = true;
            break;
        }
    }
    REQUIRE(done);
    const EquivalenceReport r = check_equivalence(ir, toy(), 50, 3);
    CHECK_FALSE(r.pass());
    REQUIRE(r.first.has_value());
    CHECK(r.mismatched_vectors > 0);
    CHECK(r.first->cycle >= static_cast<std::size_t>(ir.latency));
    CHECK(r.first->lane < 8);
    CHECK(r.first->expected != r.first->got);
}

TEST_CASE("roundtrip through chained designs is the identity") {
    for (const char* s : {"toy", "kyber"}) {
        const RingParams p = std::string(s) == "toy" ? toy() : preset_params(s);
        const EquivalenceReport r = check_roundtrip(design(s), design(s), p, 50, 4);
        CHECK(r.pass());
        CHECK(r.inverse_vectors == 56);
    }
}

TEST_CASE("reparsed netlist simulates identically") {
    const DatapathIR& ir = design("kyber");
    const DatapathIR back = parse_verilog(emit_verilog(ir, "k"));
    std::mt19937_64 rng(5);
    Stimulus stim;
    for (int i = 0; i < 30; ++i) {
        if (i % 7 == 3) {
            stim.emplace_back();
            continue;
        }
        stim.push_back(StimulusVector{oracle::random_poly(rng, 256, 3329), (i & 1) != 0});
    }
    const SimRun a = simulate(ir, stim);
    const SimRun b = simulate(back, stim);
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) {
        CHECK(a.outputs[i].cycle == b.outputs[i].cycle);
        CHECK(a.outputs[i].values == b.outputs[i].values);
    }
}

TEST_CASE("reports are deterministic for a seed") {
    auto text = [] {
        std::ostringstream os;
        write_report(os, check_equivalence(design("toy"), toy(), 200, 42));
        return os.str();
    };
    const std::string a = text();
    CHECK(a == text());
    CHECK(a.find("seed = 42") != std::string::npos);
    CHECK(a.find("result = PASS") != std::string::npos);
}

TEST_CASE("vector files") {
    const std::vector<std::vector<u64>> v{{0, 1, 0xabc, 16}, {3, 3, 3, 3}};
    std::stringstream ss;
    ss << "# header\n";
    write_vectors(ss, v);
    ss << "\n   # trailing comment\n";
    CHECK(read_vectors(ss, 4) == v);
    std::istringstream wrong_arity("1 2 3\n");
    CHECK_THROWS_WITH_AS(read_vectors(wrong_arity, 4), doctest::Contains("line 1"), InvalidInput);
    std::istringstream bad_hex("1 2 3 zz\n");
    CHECK_THROWS_AS(read_vectors(bad_hex, 4), InvalidInput);
}

}  // TEST_SUITE
