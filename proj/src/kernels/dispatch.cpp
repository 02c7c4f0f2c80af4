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

#include <cstdlib>
#include <string>

#include "nttc/errors.hpp"
#include "nttc/kernels.hpp"

namespace nttc::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(NTTC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw InvalidInput(std::string(what) + ": span length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() {
    static const Isa chosen = [] {
        const char* force = std::getenv("NTTC_FORCE_SCALAR");
        if (force != nullptr && std::string(force) != "0") return Isa::scalar;
        return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

void barrett_reduce_batch(const BarrettConstants& c, std::span<const u64> x, std::span<u64> rem,
                          std::span<u64> quot, std::span<std::uint8_t> corr, Isa isa) {
    check_sizes(x.size(), rem.size(), "barrett_reduce_batch");
    check_sizes(x.size(), quot.size(), "barrett_reduce_batch");
    check_sizes(x.size(), corr.size(), "barrett_reduce_batch");
#if defined(NTTC_HAVE_AVX2_KERNELS)
    if (isa == Isa::avx2 && cpu_has_avx2()) {
        avx2::barrett_reduce_batch(c, x.data(), rem.data(), quot.data(), corr.data(), x.size());
        return;
    }
#endif
    (void)isa;
    scalar::barrett_reduce_batch(c, x.data(), rem.data(), quot.data(), corr.data(), x.size());
}

void ct_butterfly_batch(const BarrettConstants& c, std::span<u32> top, std::span<u32> bottom, u32 w, Isa isa) {
    check_sizes(top.size(), bottom.size(), "ct_butterfly_batch");
#if defined(NTTC_HAVE_AVX2_KERNELS)
    if (isa == Isa::avx2 && cpu_has_avx2()) {
        avx2::ct_butterfly_batch(c, top.data(), bottom.data(), w, top.size());
        return;
    }
#endif
    (void)isa;
    scalar::ct_butterfly_batch(c, top.data(), bottom.data(), w, top.size());
}

}  // namespace nttc::kernels
