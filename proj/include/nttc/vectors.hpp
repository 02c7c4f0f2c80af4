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
#include <vector>

#include "nttc/netlist_sim.hpp"

namespace nttc {

/// One vector per line, lane values in hex separated by spaces. Blank lines
/// and text after '#' are ignored. Stimulus and expected-output files share
/// the format.
void write_vectors(std::ostream& os, const std::vector<std::vector<u64>>& vectors);

/// Throws InvalidInput (with the line number) on a bad token or a line whose
/// arity differs from `lanes`.
std::vector<std::vector<u64>> read_vectors(std::istream& is, std::size_t lanes);

}  // namespace nttc
