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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nttc/datapath.hpp"

namespace nttc {

/// "<scheme>_ntt<N>"; also the module name.
std::string design_name(std::string_view scheme, std::size_t length);

/// Flat synthesizable module with ports clk, rst, mode, din[N*n], dout[N*n].
/// Uses only +, -, >=, concatenation, constant part-selects, ternaries and
/// registers. Lane i occupies bits [i*n +: n] of din and dout.
void emit_verilog(std::ostream& os, const DatapathIR& ir, std::string_view module,
                  const std::vector<std::string>& banner = {});
std::string emit_verilog(const DatapathIR& ir, std::string_view module, const std::vector<std::string>& banner = {});

/// Reads back the subset emit_verilog produces. Node bounds become 2^width-1.
/// Throws InvalidInput with a line number on anything else.
DatapathIR parse_verilog(std::string_view text);

}  // namespace nttc
