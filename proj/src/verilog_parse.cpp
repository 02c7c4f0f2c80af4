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

#include <charconv>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nttc/errors.hpp"
#include "nttc/verilog.hpp"

namespace nttc {

namespace {

struct Token {
    enum Kind { ident, number, sized, punct, tag, end } kind = end;
    std::string text;
    u64 value = 0;
    int width = 0;  // sized literals
    long a = 0;     // tag stage
    long b = 0;     // tag butterfly
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw InvalidInput("verilog line " + std::to_string(line) + ": " + msg);
}

u64 to_u64(std::string_view s, int base, int line) {
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) fail(line, "bad number '" + std::string(s) + "'");
    return v;
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    auto peek = [&](std::size_t k) { return i + k < src.size() ? src[i + k] : '\0'; };
    while (i < src.size()) {
        const char ch = src[i];
        if (ch == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (ch == '/' && peek(1) == '/') {
            const std::size_t eol = std::min(src.find('\n', i), src.size());
            const std::string_view body = src.substr(i + 2, eol - i - 2);
            const std::size_t at = body.find_first_not_of(' ');
            if (at != std::string_view::npos && body.substr(at, 2) == "@ ") {
                Token t;
                t.kind = Token::tag;
                t.line = line;
                std::string rest(body.substr(at + 2));
                std::size_t used = 0;
                try {
                    t.a = std::stol(rest, &used);
                    rest = rest.substr(used);
                    t.b = std::stol(rest, &used);
                } catch (const std::exception&) {
                    fail(line, "malformed tag comment");
                }
                out.push_back(t);
            }
            i = eol;
            continue;
        }
        if (ch == '/' && peek(1) == '*') {
            const std::size_t close = src.find("*/", i + 2);
            if (close == std::string_view::npos) fail(line, "unterminated comment");
            for (std::size_t k = i; k < close; ++k) line += src[k] == '\n';
            i = close + 2;
            continue;
        }
        Token t;
        t.line = line;
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Token::ident;
            t.text = std::string(src.substr(i, j - i));
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            const u64 num = to_u64(src.substr(i, j - i), 10, line);
            if (j < src.size() && src[j] == '\'') {
                const char base = j + 1 < src.size() ? src[j + 1] : '\0';
                const int radix = base == 'd' ? 10 : base == 'b' ? 2 : base == 'h' ? 16 : 0;
                if (radix == 0) fail(line, "unsupported literal base");
                std::size_t k = j + 2;
                while (k < src.size() && std::isxdigit(static_cast<unsigned char>(src[k]))) ++k;
                t.kind = Token::sized;
                t.width = static_cast<int>(num);
                t.value = to_u64(src.substr(j + 2, k - j - 2), radix, line);
                if (t.width < 64 && (t.value >> t.width) != 0) fail(line, "literal does not fit its width");
                i = k;
            } else {
                t.kind = Token::number;
                t.value = num;
                i = j;
            }
        } else {
            t.kind = Token::punct;
            if ((ch == '<' || ch == '>') && peek(1) == '=') {
                t.text = std::string(src.substr(i, 2));
                i += 2;
            } else if (std::string_view("()[]{};,:?=+-@").find(ch) != std::string_view::npos) {
                t.text = std::string(1, ch);
                ++i;
            } else {
                fail(line, std::string("unexpected character '") + ch + "'");
            }
        }
        out.push_back(std::move(t));
    }
    Token e;
    e.line = line;
    out.push_back(e);
    return out;
}

struct Expr {
    enum Kind { ident, literal, concat, select, binary, ternary } kind = ident;
    std::string name;
    u64 value = 0;
    int shift = 0;      // concat zeros
    int hi = 0, lo = 0; // select
    std::string op;
    std::vector<Expr> kids;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    DatapathIR run();

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    NodeTag tag_{-1, -1};
    DatapathIR ir_;
    std::map<std::string, std::int32_t, std::less<>> names_;
    std::map<std::string, long, std::less<>> params_;
    std::vector<bool> reg_bound_;

    const Token& cur() {
        while (toks_[pos_].kind == Token::tag) {
            tag_ = {static_cast<std::int32_t>(toks_[pos_].a), static_cast<std::int32_t>(toks_[pos_].b)};
            ++pos_;
        }
        return toks_[pos_];
    }
    int line() { return cur().line; }
    bool is(std::string_view p) {
        const Token& t = cur();
        return (t.kind == Token::punct || t.kind == Token::ident) && t.text == p;
    }
    void expect(std::string_view p) {
        if (!is(p)) fail(line(), "expected '" + std::string(p) + "'");
        ++pos_;
    }
    std::string ident() {
        const Token& t = cur();
        if (t.kind != Token::ident) fail(t.line, "expected identifier");
        ++pos_;
        return t.text;
    }
    u64 number() {
        const Token& t = cur();
        if (t.kind != Token::number) fail(t.line, "expected number");
        ++pos_;
        return t.value;
    }
    std::pair<int, int> range() {
        expect("[");
        const auto hi = static_cast<int>(number());
        expect(":");
        const auto lo = static_cast<int>(number());
        expect("]");
        if (hi < lo) fail(line(), "descending ranges only");
        return {hi, lo};
    }

    Expr atom();
    Expr binary();
    Expr expression();
    std::int32_t lookup(const std::string& name, int at);
    Node classify(const Expr& e, int at);
    void header();
    void always_block();
};

Expr Parser::atom() {
    const Token& t = cur();
    Expr e;
    if (t.kind == Token::sized) {
        e.kind = Expr::literal;
        e.value = t.value;
        ++pos_;
        return e;
    }
    if (is("(")) {
        ++pos_;
        e = expression();
        expect(")");
        return e;
    }
    if (is("{")) {
        ++pos_;
        e.kind = Expr::concat;
        e.name = ident();
        expect(",");
        const Token& z = cur();
        if (z.kind != Token::sized || z.value != 0) fail(z.line, "concatenation must append zero bits");
        e.shift = z.width;
        ++pos_;
        expect("}");
        return e;
    }
    e.kind = Expr::ident;
    e.name = ident();
    if (is("[")) {
        e.kind = Expr::select;
        std::tie(e.hi, e.lo) = range();
    }
    return e;
}

Expr Parser::binary() {
    Expr l = atom();
    if (is("+") || is("-") || is(">=")) {
        Expr e;
        e.kind = Expr::binary;
        e.op = cur().text;
        ++pos_;
        e.kids.push_back(std::move(l));
        e.kids.push_back(atom());
        return e;
    }
    return l;
}

Expr Parser::expression() {
    Expr c = binary();
    if (!is("?")) return c;
    ++pos_;
    Expr e;
    e.kind = Expr::ternary;
    e.kids.push_back(std::move(c));
    e.kids.push_back(binary());
    expect(":");
    e.kids.push_back(binary());
    return e;
}

std::int32_t Parser::lookup(const std::string& name, int at) {
    const auto it = names_.find(name);
    if (it == names_.end()) fail(at, "unknown signal '" + name + "'");
    return it->second;
}

Node Parser::classify(const Expr& e, int at) {
    Node n;
    auto operand = [&](const Expr& x, std::int32_t& id, std::int32_t& sh) {
        if (x.kind == Expr::ident) {
            id = lookup(x.name, at);
            sh = 0;
        } else if (x.kind == Expr::concat) {
            id = lookup(x.name, at);
            sh = x.shift;
        } else {
            fail(at, "operand must be a signal or a shifted signal");
        }
    };
    switch (e.kind) {
        case Expr::ident:
            if (e.name != "mode") fail(at, "plain aliases are not part of the subset");
            n.kind = NodeKind::mode;
            return n;
        case Expr::select:
            if (e.name == "din") {
                const long lw = params_.at("LANE_WIDTH");
                if (lw <= 0 || e.lo % lw != 0) fail(at, "input select is not lane aligned");
                n.kind = NodeKind::input;
                n.lane = static_cast<std::int32_t>(e.lo / lw);
            } else {
                n.kind = NodeKind::shr;
                n.a = lookup(e.name, at);
                n.a_shift = e.lo;
            }
            return n;
        case Expr::concat:
            n.kind = NodeKind::shl;
            n.a = lookup(e.name, at);
            n.a_shift = e.shift;
            return n;
        case Expr::binary: {
            const Expr& l = e.kids[0];
            const Expr& r = e.kids[1];
            if (e.op == "+" && r.kind == Expr::literal) {
                if (l.kind != Expr::ident) fail(at, "constant add needs a plain signal");
                n.kind = NodeKind::add_const;
                n.a = lookup(l.name, at);
                n.constant = r.value;
                return n;
            }
            if (e.op != "+" && e.op != "-") fail(at, "comparison outside a conditional subtract");
            n.kind = e.op == "+" ? NodeKind::add : NodeKind::sub;
            operand(l, n.a, n.a_shift);
            operand(r, n.b, n.b_shift);
            return n;
        }
        case Expr::ternary: {
            const Expr& c = e.kids[0];
            const Expr& t = e.kids[1];
            const Expr& f = e.kids[2];
            if (c.kind == Expr::ident && t.kind == Expr::ident && f.kind == Expr::ident) {
                n.kind = NodeKind::mux;
                n.a = lookup(c.name, at);
                n.b = lookup(t.name, at);
                n.c = lookup(f.name, at);
                return n;
            }
            const bool shape = c.kind == Expr::binary && c.op == ">=" && c.kids[0].kind == Expr::ident &&
                               c.kids[1].kind == Expr::literal && t.kind == Expr::binary && t.op == "-" &&
                               t.kids[0].kind == Expr::ident && t.kids[1].kind == Expr::literal &&
                               f.kind == Expr::ident;
            if (!shape) fail(at, "unsupported conditional");
            const std::string& a = c.kids[0].name;
            const u64 k = c.kids[1].value;
            if (t.kids[0].name != a || f.name != a || t.kids[1].value != k) {
                fail(at, "conditional subtract must test and subtract the same signal and constant");
            }
            n.kind = NodeKind::cond_sub;
            n.a = lookup(a, at);
            n.constant = k;
            return n;
        }
        case Expr::literal: break;
    }
    fail(at, "unsupported expression");
}

void Parser::header() {
    expect("module");
    ident();
    expect("(");
    int ports = 0;
    while (!is(")")) {
        const std::string dir = ident();
        if (dir != "input" && dir != "output") fail(line(), "expected port direction");
        expect("wire");
        if (is("[")) range();
        ident();
        ++ports;
        if (!is(",")) break;
        ++pos_;
    }
    expect(")");
    expect(";");
    if (ports != 5) fail(line(), "expected ports clk, rst, mode, din, dout");
}

void Parser::always_block() {
    expect("@");
    expect("(");
    expect("posedge");
    expect("clk");
    expect(")");
    expect("begin");
    expect("if");
    expect("(");
    expect("rst");
    expect(")");
    expect("begin");
    while (!is("end")) {
        ident();
        expect("<=");
        if (cur().kind != Token::sized || cur().value != 0) fail(line(), "registers reset to zero");
        ++pos_;
        expect(";");
    }
    expect("end");
    expect("else");
    expect("begin");
    while (!is("end")) {
        const int at = line();
        const auto dst = lookup(ident(), at);
        expect("<=");
        const auto src = lookup(ident(), at);
        expect(";");
        Node& r = ir_.nodes[static_cast<std::size_t>(dst)];
        if (r.kind != NodeKind::reg) fail(at, "non-blocking assignment to a wire");
        if (reg_bound_[static_cast<std::size_t>(dst)]) fail(at, "register assigned twice");
        reg_bound_[static_cast<std::size_t>(dst)] = true;
        r.a = src;
    }
    expect("end");
    expect("end");
}

DatapathIR Parser::run() {
    header();
    ir_.lane_width = 0;
    std::vector<std::int32_t> outputs;
    while (!is("endmodule")) {
        const int at = line();
        const std::string kw = ident();
        if (kw == "localparam") {
            const std::string name = ident();
            expect("=");
            params_[name] = static_cast<long>(number());
            expect(";");
            if (name == "LANE_WIDTH") ir_.lane_width = static_cast<int>(params_[name]);
        } else if (kw == "wire" || kw == "reg") {
            const NodeTag tag = tag_;
            const auto [hi, lo] = range();
            if (lo != 0) fail(at, "signals are declared [w-1:0]");
            const std::string name = ident();
            if (names_.count(name) != 0) fail(at, "signal '" + name + "' declared twice");
            Node n;
            if (kw == "reg") {
                n.kind = NodeKind::reg;
            } else {
                expect("=");
                n = classify(expression(), at);
            }
            expect(";");
            n.width = hi + 1;
            n.max_value = (static_cast<u128>(1) << n.width) - 1;
            n.tag = tag;
            const auto id = static_cast<std::int32_t>(ir_.nodes.size());
            names_[name] = id;
            ir_.nodes.push_back(n);
            reg_bound_.push_back(false);
            if (n.kind == NodeKind::mode) ir_.mode_node = id;
        } else if (kw == "always") {
            always_block();
        } else if (kw == "assign") {
            expect("dout");
            const auto [hi, lo] = range();
            expect("=");
            const auto src = lookup(ident(), at);
            expect(";");
            const int lw = ir_.lane_width;
            if (lw <= 0 || lo % lw != 0 || hi - lo + 1 != lw) fail(at, "output select is not one lane");
            const auto lane = static_cast<std::size_t>(lo / lw);
            if (outputs.size() <= lane) outputs.resize(lane + 1, -1);
            if (outputs[lane] != -1) fail(at, "output lane driven twice");
            outputs[lane] = src;
        } else {
            fail(at, "unexpected '" + kw + "'");
        }
    }
    expect("endmodule");
    if (cur().kind != Token::end) fail(line(), "text after endmodule");

    auto param = [&](const char* name) {
        const auto it = params_.find(name);
        if (it == params_.end()) fail(line(), std::string("missing localparam ") + name);
        return it->second;
    };
    ir_.lanes = static_cast<std::size_t>(param("LANES"));
    ir_.latency = static_cast<int>(param("LATENCY"));
    ir_.policy.max_adder_depth = static_cast<int>(param("MAX_ADDER_DEPTH"));
    ir_.policy.register_inputs = param("REGISTER_INPUTS") != 0;
    ir_.policy.register_outputs = param("REGISTER_OUTPUTS") != 0;
    ir_.opt_adders = param("OPT_ADDERS");
    ir_.csd_adders = param("CSD_ADDERS");
    for (std::size_t i = 0; i < ir_.nodes.size(); ++i) {
        const Node& n = ir_.nodes[i];
        if (n.kind == NodeKind::reg && !reg_bound_[i]) fail(line(), "register n" + std::to_string(i) + " never assigned");
    }
    if (outputs.size() != ir_.lanes) fail(line(), "output lane count does not match LANES");
    for (std::size_t lane = 0; lane < outputs.size(); ++lane) {
        if (outputs[lane] < 0) fail(line(), "output lane " + std::to_string(lane) + " undriven");
    }
    ir_.outputs = outputs;
    ir_.inputs.assign(ir_.lanes, -1);
    for (std::size_t i = 0; i < ir_.nodes.size(); ++i) {
        const Node& n = ir_.nodes[i];
        if (n.kind != NodeKind::input) continue;
        if (static_cast<std::size_t>(n.lane) >= ir_.lanes || ir_.inputs[static_cast<std::size_t>(n.lane)] != -1) {
            fail(line(), "input lane " + std::to_string(n.lane) + " read twice or out of range");
        }
        ir_.inputs[static_cast<std::size_t>(n.lane)] = static_cast<std::int32_t>(i);
    }
    for (std::size_t lane = 0; lane < ir_.lanes; ++lane) {
        if (ir_.inputs[lane] < 0) fail(line(), "input lane " + std::to_string(lane) + " unused");
    }
    if (ir_.mode_node < 0) fail(line(), "mode input unused");
    return ir_;
}

}  // namespace

DatapathIR parse_verilog(std::string_view text) { return Parser(text).run(); }

}  // namespace nttc
