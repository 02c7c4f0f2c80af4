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

#include "nttc/ring.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "nttc/errors.hpp"

namespace nttc {

namespace {

// Keeps every intermediate of the datapath (at most 3*width+2 bits) inside
// the 128-bit values used by the simulator, and the SIMD kernels' 32-bit
// partial products valid.
constexpr u64 kMaxModulus = u64{1} << 30;

constexpr std::array<SchemePreset, 4> kPresets{{
    {"kyber", 3329, 256, Variant::incomplete},
    {"dilithium", 8380417, 256, Variant::full},
    {"falcon512", 12289, 512, Variant::full},
    {"falcon1024", 12289, 1024, Variant::full},
}};

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::full ? "full" : "incomplete"; }

Variant parse_variant(std::string_view s) {
    if (s == "full") return Variant::full;
    if (s == "incomplete") return Variant::incomplete;
    throw InvalidInput("unknown variant '" + std::string(s) + "' (expected full|incomplete)");
}

u64 find_root(u64 modulus, u64 order) {
    if (modulus < 3 || !is_prime(modulus)) {
        throw InvalidInput("modulus " + std::to_string(modulus) + " is not an odd prime");
    }
    if (order == 0 || (modulus - 1) % order != 0) {
        throw InvalidInput("no element of order " + std::to_string(order) + " modulo " + std::to_string(modulus));
    }
    if (order == 1) return 1;
    const auto factors = prime_factors(order);
    for (u64 r = 2; r < modulus; ++r) {
        if (pow_mod(r, order, modulus) != 1) continue;
        bool exact = std::all_of(factors.begin(), factors.end(),
                                 [&](u64 f) { return pow_mod(r, order / f, modulus) != 1; });
        if (exact) return r;
    }
    throw InvariantViolation("cyclic group of prime modulus has no element of a dividing order");
}

std::size_t bit_reverse(std::size_t i, int bits) {
    if (bits < 0 || bits >= 63 || (bits < 63 && i >= (std::size_t{1} << bits))) {
        throw InvalidInput("index " + std::to_string(i) + " out of range for " + std::to_string(bits) + "-bit reversal");
    }
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
        r = (r << 1) | ((i >> b) & 1);
    }
    return r;
}

RingParams derive_params(u64 modulus, std::size_t length, Variant variant) {
    if (modulus < 3 || !is_prime(modulus)) {
        throw InvalidInput("modulus " + std::to_string(modulus) + " is not an odd prime");
    }
    if (modulus >= kMaxModulus) {
        throw InvalidInput("modulus " + std::to_string(modulus) + " exceeds the supported 30-bit range");
    }
    if (!is_power_of_two(length) || length < 2) {
        throw InvalidInput("length " + std::to_string(length) + " is not a power of two >= 2");
    }
    if (variant == Variant::incomplete && length < 4) {
        throw InvalidInput("incomplete variant needs length >= 4");
    }

    RingParams p;
    p.modulus = modulus;
    p.length = length;
    p.variant = variant;
    const int log_n = ceil_log2(length);
    p.stages = variant == Variant::full ? log_n : log_n - 1;

    const u64 root_order = 2 * p.transform_size();
    if ((modulus - 1) % root_order != 0) {
        throw InvalidInput("modulus " + std::to_string(modulus) + " is not 1 mod " + std::to_string(root_order) +
                           ": no root of unity of the required order for " + std::string(to_string(variant)) +
                           " variant with N=" + std::to_string(length));
    }
    p.psi = find_root(modulus, root_order);
    p.omega = mul_mod(p.psi, p.psi, modulus);
    p.width = ceil_log2(modulus);
    p.barrett_r = static_cast<u64>((u128{1} << (2 * p.width)) / modulus);
    p.inv_scale = inv_mod(pow_mod(2, static_cast<u64>(p.stages), modulus), modulus);
    return p;
}

std::span<const SchemePreset> scheme_presets() { return kPresets; }

std::optional<SchemePreset> find_preset(std::string_view name) {
    for (const auto& s : kPresets) {
        if (s.name == name) return s;
    }
    return std::nullopt;
}

RingParams preset_params(std::string_view name) {
    auto s = find_preset(name);
    if (!s) throw InvalidInput("unknown scheme '" + std::string(name) + "'");
    return derive_params(s->modulus, s->length, s->variant);
}

void write_params(std::ostream& os, const RingParams& p) {
    os << "Q = " << p.modulus << '\n'
       << "N = " << p.length << '\n'
       << "n = " << p.width << '\n'
       << "R = " << p.barrett_r << '\n'
       << "psi = " << p.psi << '\n'
       << "omega = " << p.omega << '\n'
       << "stages = " << p.stages << '\n'
       << "inv_scale = " << p.inv_scale << '\n'
       << "variant = " << to_string(p.variant) << '\n';
}

RingParams read_params(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    for (const char* key : {"Q", "N", "variant"}) {
        if (!kv.count(key)) throw InvalidInput(std::string("params file missing key '") + key + "'");
    }
    RingParams p = derive_params(std::stoull(kv["Q"]), std::stoull(kv["N"]), parse_variant(kv["variant"]));
    // Any derived value present in the file must agree with a fresh derivation.
    auto check = [&](const char* key, u64 value) {
        if (kv.count(key) && std::stoull(kv[key]) != value) {
            throw InvalidInput(std::string("params file value for '") + key + "' disagrees with derivation");
        }
    };
    check("n", static_cast<u64>(p.width));
    check("R", p.barrett_r);
    check("psi", p.psi);
    check("omega", p.omega);
    check("stages", static_cast<u64>(p.stages));
    check("inv_scale", p.inv_scale);
    return p;
}

// ---------------------------------------------------------------------------

std::size_t TwiddleSchedule::butterfly_count() const {
    std::size_t n = 0;
    for (const auto& s : stages) n += s.size();
    return n;
}

ButterflySlot butterfly_slot(const RingParams& p, int stage, std::size_t b) {
    const std::size_t len = p.length >> (stage + 1);
    ButterflySlot slot;
    slot.group = b / len;
    slot.top = slot.group * 2 * len + b % len;
    slot.bottom = slot.top + len;
    return slot;
}

u64 forward_twiddle_exponent(const RingParams& p, int stage, std::size_t group) {
    return bit_reverse((std::size_t{1} << stage) + group, p.stages);
}

TwiddleSchedule twiddle_schedule(const RingParams& p, Direction dir) {
    TwiddleSchedule sched;
    sched.kind = dir == Direction::forward ? ScheduleKind::forward : ScheduleKind::inverse;
    const u64 root = dir == Direction::forward ? p.psi : inv_mod(p.psi, p.modulus);
    sched.stages.resize(static_cast<std::size_t>(p.stages));
    for (int s = 0; s < p.stages; ++s) {
        auto& entries = sched.stages[static_cast<std::size_t>(s)];
        entries.reserve(p.butterflies_per_stage());
        for (std::size_t b = 0; b < p.butterflies_per_stage(); ++b) {
            const auto slot = butterfly_slot(p, s, b);
            entries.push_back({b, pow_mod(root, forward_twiddle_exponent(p, s, slot.group), p.modulus)});
        }
    }
    return sched;
}

TwiddleSchedule inverse_mode_schedule(const RingParams& p) {
    TwiddleSchedule sched;
    sched.kind = ScheduleKind::inverse_mode;
    const u64 omega_inv = inv_mod(p.omega, p.modulus);
    const std::size_t m = p.transform_size();
    sched.stages.resize(static_cast<std::size_t>(p.stages));
    for (int s = 0; s < p.stages; ++s) {
        auto& entries = sched.stages[static_cast<std::size_t>(s)];
        entries.reserve(p.butterflies_per_stage());
        for (std::size_t b = 0; b < p.butterflies_per_stage(); ++b) {
            const auto slot = butterfly_slot(p, s, b);
            const u64 e = (m >> (s + 1)) * bit_reverse(slot.group, s);
            entries.push_back({b, pow_mod(omega_inv, e, p.modulus)});
        }
    }
    return sched;
}

std::vector<u64> inverse_output_scales(const RingParams& p) {
    const u64 psi_inv = inv_mod(p.psi, p.modulus);
    std::vector<u64> scales(p.length);
    u64 c = p.inv_scale;
    for (std::size_t m = 0; m < p.transform_size(); ++m) {
        for (std::size_t t = 0; t < p.stride(); ++t) scales[m * p.stride() + t] = c;
        c = mul_mod(c, psi_inv, p.modulus);
    }
    return scales;
}

std::vector<std::size_t> inverse_input_permutation(const RingParams& p) {
    std::vector<std::size_t> perm(p.length);
    for (std::size_t k = 0; k < p.transform_size(); ++k) {
        for (std::size_t t = 0; t < p.stride(); ++t) {
            perm[k * p.stride() + t] = bit_reverse(k, p.stages) * p.stride() + t;
        }
    }
    return perm;
}

std::vector<std::size_t> inverse_output_permutation(const RingParams& p) {
    // Bit reversal is an involution, so the output side uses the same map.
    return inverse_input_permutation(p);
}

// ---------------------------------------------------------------------------

void check_coefficients(std::span<const u64> v, const RingParams& p, std::string_view what) {
    if (v.size() != p.length) {
        throw InvalidInput(std::string(what) + ": expected " + std::to_string(p.length) + " values, got " +
                           std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= p.modulus) {
            throw InvalidInput(std::string(what) + ": value " + std::to_string(v[i]) + " at index " +
                               std::to_string(i) + " not below Q=" + std::to_string(p.modulus));
        }
    }
}

namespace {

Poly run_ct_flow(Poly a, const RingParams& p, const TwiddleSchedule& sched) {
    const u64 q = p.modulus;
    for (int s = 0; s < p.stages; ++s) {
        for (const auto& e : sched.stages[static_cast<std::size_t>(s)]) {
            const auto slot = butterfly_slot(p, s, e.butterfly);
            const u64 t = mul_mod(e.twiddle, a[slot.bottom], q);
            a[slot.bottom] = sub_mod(a[slot.top], t, q);
            a[slot.top] = add_mod(a[slot.top], t, q);
        }
    }
    return a;
}

}  // namespace

Poly ntt_forward(std::span<const u64> coeffs, const RingParams& p) {
    check_coefficients(coeffs, p, "ntt_forward");
    return run_ct_flow(Poly(coeffs.begin(), coeffs.end()), p, twiddle_schedule(p, Direction::forward));
}

Poly ntt_inverse(std::span<const u64> points, const RingParams& p) {
    check_coefficients(points, p, "ntt_inverse");
    const u64 q = p.modulus;
    const auto sched = twiddle_schedule(p, Direction::inverse);
    Poly a(points.begin(), points.end());
    for (int s = p.stages - 1; s >= 0; --s) {
        for (const auto& e : sched.stages[static_cast<std::size_t>(s)]) {
            const auto slot = butterfly_slot(p, s, e.butterfly);
            const u64 x = a[slot.top];
            const u64 y = a[slot.bottom];
            a[slot.top] = add_mod(x, y, q);
            a[slot.bottom] = mul_mod(e.twiddle, sub_mod(x, y, q), q);
        }
    }
    for (auto& v : a) v = mul_mod(v, p.inv_scale, q);
    return a;
}

Poly ntt_inverse_via_ct(std::span<const u64> points, const RingParams& p) {
    check_coefficients(points, p, "ntt_inverse_via_ct");
    const auto in_perm = inverse_input_permutation(p);
    Poly z(p.length);
    for (std::size_t i = 0; i < p.length; ++i) z[i] = points[in_perm[i]];
    const Poly y = run_ct_flow(std::move(z), p, inverse_mode_schedule(p));
    const auto out_perm = inverse_output_permutation(p);
    const auto scales = inverse_output_scales(p);
    Poly out(p.length);
    for (std::size_t i = 0; i < p.length; ++i) out[i] = mul_mod(scales[i], y[out_perm[i]], p.modulus);
    return out;
}

Poly negacyclic_mul_schoolbook(std::span<const u64> a, std::span<const u64> b, const RingParams& p) {
    check_coefficients(a, p, "schoolbook lhs");
    check_coefficients(b, p, "schoolbook rhs");
    const u64 q = p.modulus;
    const std::size_t n = p.length;
    Poly c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const u64 prod = mul_mod(a[i], b[j], q);
            const std::size_t k = i + j;
            if (k < n) {
                c[k] = add_mod(c[k], prod, q);
            } else {
                c[k - n] = sub_mod(c[k - n], prod, q);
            }
        }
    }
    return c;
}

Poly pointwise_mul(std::span<const u64> ahat, std::span<const u64> bhat, const RingParams& p) {
    check_coefficients(ahat, p, "pointwise lhs");
    check_coefficients(bhat, p, "pointwise rhs");
    const u64 q = p.modulus;
    Poly c(p.length);
    if (p.variant == Variant::full) {
        for (std::size_t i = 0; i < p.length; ++i) c[i] = mul_mod(ahat[i], bhat[i], q);
        return c;
    }
    // Degree-(stride-1) residues modulo X^stride - psi^(2*bitrev(i)+1); stride is 2 here.
    for (std::size_t i = 0; i < p.transform_size(); ++i) {
        const u64 gamma = pow_mod(p.psi, 2 * bit_reverse(i, p.stages) + 1, q);
        const u64 a0 = ahat[2 * i], a1 = ahat[2 * i + 1];
        const u64 b0 = bhat[2 * i], b1 = bhat[2 * i + 1];
        c[2 * i] = add_mod(mul_mod(a0, b0, q), mul_mod(mul_mod(a1, b1, q), gamma, q), q);
        c[2 * i + 1] = add_mod(mul_mod(a0, b1, q), mul_mod(a1, b0, q), q);
    }
    return c;
}

}  // namespace nttc
