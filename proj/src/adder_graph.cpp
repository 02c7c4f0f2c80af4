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

#include "nttc/adder_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "nttc/errors.hpp"

namespace nttc {

namespace {


i128 node_value(const AdderNode& n, i128 lhs, i128 rhs) {
    i128 l = lhs << n.lhs_shift;
    if (n.negate_lhs) l = -l;
    const i128 r = rhs << n.rhs_shift;
    return n.op == AdderOp::add ? l + r : l - r;
}

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

}  // namespace

std::vector<int> AdderGraph::node_depths() const {
    std::vector<int> d(nodes.size(), 0);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        d[i] = 1 + std::max(d[static_cast<std::size_t>(nodes[i].lhs)], d[static_cast<std::size_t>(nodes[i].rhs)]);
    }
    return d;
}

int AdderGraph::depth() const {
    int best = 0;
    const auto d = node_depths();
    for (const auto& o : outputs) best = std::max(best, d[static_cast<std::size_t>(o.node)]);
    return best;
}

const GraphOutput* AdderGraph::output_for(u64 constant) const {
    for (const auto& o : outputs) {
        if (o.constant == constant) return &o;
    }
    return nullptr;
}

u64 AdderGraph::max_constant() const {
    u64 m = 1;
    for (const auto& o : outputs) m = std::max(m, o.constant);
    return m;
}

AdderGraph wire_graph(int input_width) {
    AdderGraph g;
    g.input_width = input_width;
    g.nodes.push_back(AdderNode{});
    return g;
}

void validate_graph(const AdderGraph& g) {
    if (g.nodes.empty() || g.nodes[0].op != AdderOp::input || g.nodes[0].fundamental != 1) {
        throw InvariantViolation("adder graph: node 0 must be the input with fundamental 1");
    }
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        const std::string where = "adder graph node " + std::to_string(i);
        if (n.op == AdderOp::input) throw InvariantViolation(where + ": second INPUT node");
        if (n.lhs < 0 || n.rhs < 0 || static_cast<std::size_t>(n.lhs) >= i || static_cast<std::size_t>(n.rhs) >= i) {
            throw InvariantViolation(where + ": operand does not reference an earlier node");
        }
        if (n.lhs_shift < 0 || n.rhs_shift < 0 || n.lhs_shift > 62 || n.rhs_shift > 62) {
            throw InvariantViolation(where + ": shift out of range");
        }
        const i128 v = node_value(n, g.nodes[static_cast<std::size_t>(n.lhs)].fundamental,
                                  g.nodes[static_cast<std::size_t>(n.rhs)].fundamental);
        if (v <= 0 || static_cast<u128>(v) != n.fundamental) {
            throw InvariantViolation(where + ": recorded fundamental does not match its operands");
        }
        if ((n.fundamental & 1) == 0) throw InvariantViolation(where + ": even fundamental");
    }
    for (const auto& o : g.outputs) {
        if (o.node < 0 || static_cast<std::size_t>(o.node) >= g.nodes.size() || o.shift < 0 || o.shift > 62) {
            throw InvariantViolation("adder graph output " + std::to_string(o.constant) + ": bad node reference");
        }
        if ((static_cast<u128>(g.nodes[static_cast<std::size_t>(o.node)].fundamental) << o.shift) != o.constant) {
            throw InvariantViolation("adder graph output " + std::to_string(o.constant) + ": tap computes a different constant");
        }
    }
}

int evaluation_width(const AdderGraph& g) {
    return g.input_width + ceil_log2(g.max_constant()) + 1;
}

std::map<u64, u128> graph_eval(const AdderGraph& g, u128 x, int width) {
    if (width <= 0 || width > 120) throw InvalidInput("graph_eval: width out of range");
    if (x >> width) throw InvalidInput("graph_eval: input does not fit the evaluation width");
    std::vector<i128> v(g.nodes.size());
    v[0] = static_cast<i128>(x);
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        v[i] = node_value(n, v[static_cast<std::size_t>(n.lhs)], v[static_cast<std::size_t>(n.rhs)]);
    }
    const u128 mask = (u128{1} << width) - 1;
    std::map<u64, u128> out;
    for (const auto& o : g.outputs) {
        out[o.constant] = static_cast<u128>(v[static_cast<std::size_t>(o.node)] << o.shift) & mask;
    }
    return out;
}

bool verify_graph(const AdderGraph& g, u64 samples, u64 seed) {
    const int w = evaluation_width(g);
    auto check = [&](u128 x) {
        for (const auto& [c, val] : graph_eval(g, x, w)) {
            if (val != static_cast<u128>(c) * x) return false;
        }
        return true;
    };
    const int small = std::min(12, g.input_width);
    for (u128 x = 0; x < (u128{1} << small); ++x) {
        if (!check(x)) return false;
    }
    std::mt19937_64 rng(seed);
    const u64 mask = g.input_width >= 64 ? ~u64{0} : (u64{1} << g.input_width) - 1;
    for (u64 i = 0; i < samples; ++i) {
        if (!check(rng() & mask)) return false;
    }
    return true;
}

void write_graph(std::ostream& os, const AdderGraph& g) {
    os << "# adder graph: input width " << g.input_width << ", cost " << g.cost() << '\n';
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        if (n.op == AdderOp::input) {
            os << i << " INPUT\n";
            continue;
        }
        os << i << (n.op == AdderOp::add ? " ADD " : " SUB ") << (n.negate_lhs ? "-" : "") << n.lhs << "<<"
           << n.lhs_shift << (n.op == AdderOp::add ? " + " : " - ") << n.rhs << "<<" << n.rhs_shift << '\n';
    }
    for (const auto& o : g.outputs) os << "OUT " << o.constant << " = " << o.node << "<<" << o.shift << '\n';
}

std::string graph_to_string(const AdderGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

AdderGraph read_graph(std::istream& is) {
    AdderGraph g;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw InvalidInput("adder graph line " + std::to_string(lineno) + ": " + why);
    };
    auto parse_ref = [&](const std::string& tok, int& node, int& shift, bool* negate) {
        std::string t = tok;
        if (negate != nullptr) {
            *negate = !t.empty() && t[0] == '-';
            if (*negate) t.erase(0, 1);
        }
        const auto pos = t.find("<<");
        if (pos == std::string::npos) fail("expected id<<shift, got '" + tok + "'");
        try {
            node = std::stoi(t.substr(0, pos));
            shift = std::stoi(t.substr(pos + 2));
        } catch (const std::exception&) {
            fail("malformed operand '" + tok + "'");
        }
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) {
            if (h == 0 && line.rfind("# adder graph: input width ", 0) == 0) {
                g.input_width = std::stoi(line.substr(27));
            }
            line.erase(h);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "OUT") {
            if (tok.size() != 4 || tok[2] != "=") fail("expected OUT c = id<<s");
            GraphOutput o;
            o.constant = std::stoull(tok[1]);
            parse_ref(tok[3], o.node, o.shift, nullptr);
            g.outputs.push_back(o);
            continue;
        }
        const auto id = static_cast<std::size_t>(std::stoul(tok[0]));
        if (id != g.nodes.size()) fail("node ids must be consecutive from 0");
        AdderNode n;
        if (tok.size() == 2 && tok[1] == "INPUT") {
            g.nodes.push_back(n);
            continue;
        }
        if (tok.size() != 5 || (tok[1] != "ADD" && tok[1] != "SUB")) fail("expected id ADD|SUB a<<s +|- b<<s");
        n.op = tok[1] == "ADD" ? AdderOp::add : AdderOp::sub;
        if ((n.op == AdderOp::add && tok[3] != "+") || (n.op == AdderOp::sub && tok[3] != "-")) {
            fail("operator sign does not match node kind");
        }
        parse_ref(tok[2], n.lhs, n.lhs_shift, &n.negate_lhs);
        parse_ref(tok[4], n.rhs, n.rhs_shift, nullptr);
        if (n.lhs < 0 || n.rhs < 0 || static_cast<std::size_t>(n.lhs) >= id || static_cast<std::size_t>(n.rhs) >= id) {
            fail("operand does not reference an earlier node");
        }
        const i128 v = node_value(n, g.nodes[static_cast<std::size_t>(n.lhs)].fundamental,
                                  g.nodes[static_cast<std::size_t>(n.rhs)].fundamental);
        if (v <= 0 || (v >> 64) != 0) fail("node value " + u128_str(static_cast<u128>(v < 0 ? -v : v)) + " out of range");
        n.fundamental = static_cast<u64>(v);
        g.nodes.push_back(n);
    }
    validate_graph(g);
    return g;
}

}  // namespace nttc
