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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include "nttc/barrett.hpp"
#include "nttc/config.hpp"
#include "nttc/datapath.hpp"
#include "nttc/equivalence.hpp"
#include "nttc/errors.hpp"
#include "nttc/mcm.hpp"
#include "nttc/metrics.hpp"
#include "nttc/vectors.hpp"
#include "nttc/verilog.hpp"

namespace fs = std::filesystem;
using namespace nttc;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kInvalid = 2, kInternal = 3 };

const std::string kTool = std::string("nttc ") + NTTC_VERSION;

// Writes next to the target and renames, so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw InvalidInput("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using Entries = std::vector<std::pair<std::string, std::string>>;

Entries provenance(const JobConfig& cfg) {
    Entries kv{{"tool", kTool}};
    for (auto& e : config_entries(cfg)) kv.push_back(std::move(e));
    return kv;
}

// Options shared by every subcommand. Values are applied on top of the
// config file, so flags win.
struct JobFlags {
    std::string config;
    std::map<std::string, std::string> values;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "flat key = value job file");
        add(cmd, "--scheme", "scheme", "preset: kyber, dilithium, falcon512, falcon1024");
        add(cmd, "--q", "q", "explicit prime modulus");
        add(cmd, "--n", "n", "explicit ring length (power of two)");
        add(cmd, "--variant", "variant", "full or incomplete");
        add(cmd, "--seed", "seed", "random seed");
        add(cmd, "--trials", "trials", "random vectors per mode");
        add(cmd, "--out", "out", "output directory (else $NTTC_OUT_DIR, else .)");
        add(cmd, "--max-adder-depth", "max_adder_depth", "adder levels per pipeline stage, or inf");
        add(cmd, "--register-inputs", "register_inputs", "true or false");
        add(cmd, "--register-outputs", "register_outputs", "true or false");
    }

    void add(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        cmd->add_option_function<std::string>(flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    JobConfig resolve() const {
        JobConfig cfg = config.empty() ? JobConfig{} : load_config(config);
        for (const auto& [k, v] : values) set_config_value(cfg, k, v);
        return cfg;
    }
};

int cmd_params(const JobConfig& cfg) {
    const ResolvedJob job = resolve_job(cfg);
    std::ostringstream os;
    write_params(os, job.params);
    std::cout << os.str();
    const fs::path path = fs::path(output_directory(cfg)) / (job.name + "_n" + std::to_string(job.params.length) + ".params");
    write_atomic(path, os.str());
    std::cout << "wrote " << path.string() << '\n';
    return kPass;
}

int cmd_mcm(const JobConfig& cfg, const std::vector<u64>& constants, int width) {
    const fs::path dir = output_directory(cfg);
    if (!constants.empty()) {
        for (const u64 c : constants) {
            if (c == 0) throw InvalidInput("constant must be positive");
            const int w = width > 0 ? width : std::max(1, bit_length(c));
            const ScmResult r = scm_decompose(c, w);
            std::cout << "constant " << c << ": cost " << r.cost() << " (csd " << r.csd_cost << ", binary "
                      << r.binary_cost << "), depth " << r.graph.depth() << (r.optimal ? ", optimal" : "") << '\n';
            if (r.certificate && r.certificate->searched_cost >= 0) {
                std::cout << "  no graph with <= " << r.certificate->searched_cost << " adders exists ("
                          << r.certificate->graphs_examined << " candidates examined)\n";
            }
            const std::string text = graph_to_string(r.graph);
            std::cout << text;
            write_atomic(dir / ("const" + std::to_string(c) + ".graph"), text);
        }
        return kPass;
    }

    const ResolvedJob job = resolve_job(cfg);
    const RingParams& p = job.params;
    ConstantOptimizer opt(p);
    const auto fwd = twiddle_schedule(p, Direction::forward);
    const auto inv = inverse_mode_schedule(p);
    const DesignPlan plan = plan_design(p, fwd, inv, opt);

    long pairs = 0, m1_opt = 0, m1_csd = 0, red_opt = 0, red_csd = 0, sc_opt = 0, sc_csd = 0;
    std::set<std::pair<u64, u64>> distinct;
    std::ostringstream graphs;
    graphs << "# " << kTool << " constant multipliers for " << job.name << '\n';
    for (const auto& row : plan.butterflies) {
        for (const auto& bp : row) {
            ++pairs;
            m1_opt += bp.mult1->cost();
            m1_csd += bp.mult1->csd_cost;
            red_opt += bp.mult2->cost() + bp.mult3->cost();
            red_csd += bp.mult2->csd_cost + bp.mult3->csd_cost;
            if (distinct.emplace(bp.twiddle, bp.twiddle_inv).second) {
                graphs << "# pair " << bp.twiddle << ' ' << bp.twiddle_inv << '\n' << graph_to_string(bp.mult1->graph);
            }
        }
    }
    for (const auto& s : plan.output_scales) {
        sc_opt += s->cost();
        sc_csd += s->csd_cost;
    }
    const auto r = opt.barrett_r();
    const auto q = opt.barrett_q();
    graphs << "# barrett R " << p.barrett_r << '\n' << graph_to_string(r->graph);
    graphs << "# barrett Q " << p.modulus << '\n' << graph_to_string(q->graph);

    std::ostringstream sum;
    for (const auto& [k, v] : provenance(cfg)) sum << k << " = " << v << '\n';
    sum << "butterfly_pairs = " << pairs << '\n'
        << "distinct_pairs = " << distinct.size() << '\n'
        << "mult1_opt_adders = " << m1_opt << '\n'
        << "mult1_csd_adders = " << m1_csd << '\n'
        << "reduction_opt_adders = " << red_opt << '\n'
        << "reduction_csd_adders = " << red_csd << '\n'
        << "output_scale_opt_adders = " << sc_opt << '\n'
        << "output_scale_csd_adders = " << sc_csd << '\n'
        << "barrett_r_cost = " << r->cost() << '\n'
        << "barrett_q_cost = " << q->cost() << '\n'
        << "opt_adders = " << m1_opt + red_opt + sc_opt << '\n'
        << "csd_adders = " << m1_csd + red_csd + sc_csd << '\n';
    std::cout << sum.str();
    write_atomic(dir / (job.name + "_mcm.txt"), sum.str());
    write_atomic(dir / (job.name + "_mcm.graphs"), graphs.str());
    return kPass;
}

struct Design {
    ResolvedJob job;
    std::string name;
    DatapathIR ir;
};

Design build(const JobConfig& cfg, const std::string& netlist) {
    Design d{resolve_job(cfg), {}, {}};
    d.name = design_name(d.job.name, d.job.params.length);
    if (netlist.empty()) {
        d.ir = generate_design(d.job.params, cfg.policy);
    } else {
        d.ir = parse_verilog(read_file(netlist));
        if (d.ir.lanes != d.job.params.length || d.ir.lane_width != d.job.params.width) {
            throw InvalidInput("netlist ports do not match the ring");
        }
    }
    check_structure(d.ir);
    if (count_butterflies(d.ir) != d.job.params.butterfly_count()) {
        throw InvariantViolation("design instantiates " + std::to_string(count_butterflies(d.ir)) +
                                 " butterflies, ring needs " + std::to_string(d.job.params.butterfly_count()));
    }
    return d;
}

int cmd_generate(const JobConfig& cfg) {
    const Design d = build(cfg, "");
    const fs::path dir = output_directory(cfg);
    Entries banner = provenance(cfg);
    std::vector<std::string> lines{d.name + ": fully unrolled, pipelined, multiplier-free NTT"};
    for (const auto& [k, v] : banner) lines.push_back(k + " = " + v);
    const std::string text = emit_verilog(d.ir, d.name, lines);
    if (text.find('*') != std::string::npos) {
        // Only comments may contain '*'; emitted comments never do.
        throw InvariantViolation("emitted Verilog contains '*'");
    }
    std::ostringstream rep;
    banner.emplace_back("design", d.name);
    write_report(rep, structural_report(d.ir), banner);
    write_atomic(dir / (d.name + ".v"), text);
    write_atomic(dir / (d.name + ".metrics"), rep.str());
    std::cout << rep.str() << "wrote " << (dir / (d.name + ".v")).string() << '\n';
    return kPass;
}

int cmd_verify(const JobConfig& cfg, const std::string& netlist, const std::string& vectors_path, bool inverse,
               bool export_vectors) {
    const Design d = build(cfg, netlist);
    const RingParams& p = d.job.params;
    const fs::path dir = output_directory(cfg);
    Entries head = provenance(cfg);
    head.emplace_back("design", d.name);
    if (!netlist.empty()) head.emplace_back("netlist", fs::path(netlist).filename().string());

    EquivalenceReport rep;
    int ii = 0;
    std::optional<EquivalenceReport> round;
    if (!vectors_path.empty()) {
        std::ifstream in(vectors_path);
        if (!in) throw InvalidInput("cannot open '" + vectors_path + "'");
        std::vector<StimulusVector> stim;
        for (auto& v : read_vectors(in, p.length)) stim.push_back({std::move(v), inverse});
        if (stim.empty()) throw InvalidInput("vector file is empty");
        head.emplace_back("vectors", fs::path(vectors_path).filename().string());
        rep = check_vectors(d.ir, p, stim);
    } else {
        if (cfg.trials == 0) throw InvalidInput("trials must be >= 1");
        rep = check_equivalence(d.ir, p, cfg.trials, cfg.seed);
        if (rep.pass()) round = check_roundtrip(d.ir, d.ir, p, std::min<std::size_t>(cfg.trials, 100), cfg.seed);
    }
    if (rep.error.empty()) ii = measure_ii(d.ir, p.modulus, cfg.seed);
    if (export_vectors) {
        const auto stim = equivalence_vectors(p, cfg.trials, cfg.seed);
        for (const bool inv : {false, true}) {
            std::vector<std::vector<u64>> in_v, out_v;
            for (const auto& v : stim) {
                if (v.inverse != inv) continue;
                in_v.push_back(v.values);
                out_v.push_back(inv ? ntt_inverse(v.values, p) : ntt_forward(v.values, p));
            }
            const std::string tag = inv ? "inv" : "fwd";
            std::ostringstream a, b;
            a << "# " << d.name << ' ' << tag << " stimulus, seed " << cfg.seed << '\n';
            b << "# " << d.name << ' ' << tag << " expected, seed " << cfg.seed << '\n';
            write_vectors(a, in_v);
            write_vectors(b, out_v);
            write_atomic(dir / (d.name + "." + tag + ".in.hex"), a.str());
            write_atomic(dir / (d.name + "." + tag + ".out.hex"), b.str());
        }
    }

    std::ostringstream os;
    write_report(os, rep, head);
    os << "design_latency = " << d.ir.latency << '\n' << "measured_ii = " << ii << '\n';
    if (round) os << "roundtrip = " << (round->pass() ? "PASS" : "FAIL") << '\n';
    const bool ok = rep.pass() && ii == 1 && rep.latency == d.ir.latency && (!round || round->pass());
    os << "verdict = " << (ok ? "PASS" : "FAIL") << '\n';
    std::cout << os.str();
    write_atomic(dir / (d.name + ".verify"), os.str());
    return ok ? kPass : kMismatch;
}

int cmd_report(const JobConfig& cfg, const std::string& netlist) {
    const Design d = build(cfg, netlist);
    const RingParams& p = d.job.params;
    Entries head = provenance(cfg);
    head.emplace_back("design", d.name);
    const BarrettWidths bw = barrett_widths(p);
    head.emplace_back("modulus", std::to_string(p.modulus));
    head.emplace_back("stages", std::to_string(p.stages));
    head.emplace_back("barrett_r", std::to_string(p.barrett_r));
    head.emplace_back("barrett_corrections", std::to_string(correction_stages(p)));
    head.emplace_back("barrett_product_bits", std::to_string(bw.product));
    head.emplace_back("barrett_scaled_bits", std::to_string(bw.scaled));
    head.emplace_back("barrett_quotient_bits", std::to_string(bw.quotient));
    std::ostringstream os;
    write_report(os, structural_report(d.ir), head);
    std::cout << os.str();
    write_atomic(fs::path(output_directory(cfg)) / (d.name + ".report"), os.str());
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nttc: multiplier-free pipelined NTT hardware compiler"};
    app.set_version_flag("--version", kTool);
    app.require_subcommand(1);

    JobFlags params_f, mcm_f, gen_f, ver_f, rep_f;
    auto* params = app.add_subcommand("params", "derive and export ring parameters");
    params_f.attach(params);

    auto* mcm = app.add_subcommand("mcm", "optimize constant multipliers");
    mcm_f.attach(mcm);
    std::vector<u64> constants;
    int width = 0;
    mcm->add_option("--const", constants, "constants to decompose (repeatable)");
    mcm->add_option("--width", width, "input width for --const graphs");

    auto* gen = app.add_subcommand("generate", "emit Verilog and a metrics report");
    gen_f.attach(gen);

    auto* ver = app.add_subcommand("verify", "simulate the design against the golden transform");
    ver_f.attach(ver);
    std::string netlist, vectors, mode = "fwd";
    bool export_vectors = false;
    ver->add_option("--netlist", netlist, "verify this Verilog file instead of a fresh design");
    ver->add_option("--vectors", vectors, "hex vector file to use instead of random vectors");
    ver->add_option("--mode", mode, "mode for --vectors: fwd or inv")->check(CLI::IsMember({"fwd", "inv"}));
    ver->add_flag("--export-vectors", export_vectors, "write stimulus and expected-output hex files");

    auto* rep = app.add_subcommand("report", "structural metrics of a design");
    rep_f.attach(rep);
    std::string rep_netlist;
    rep->add_option("--netlist", rep_netlist, "report on this Verilog file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    }

    try {
        if (params->parsed()) return cmd_params(params_f.resolve());
        if (mcm->parsed()) return cmd_mcm(mcm_f.resolve(), constants, width);
        if (gen->parsed()) return cmd_generate(gen_f.resolve());
        if (ver->parsed()) return cmd_verify(ver_f.resolve(), netlist, vectors, mode == "inv", export_vectors);
        if (rep->parsed()) return cmd_report(rep_f.resolve(), rep_netlist);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
