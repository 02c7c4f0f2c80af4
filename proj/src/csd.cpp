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

#include <string>

#include "nttc/adder_graph.hpp"
#include "nttc/errors.hpp"

namespace nttc {

int CsdForm::nonzero() const {
    int n = 0;
    for (char d : digits) n += d != '0';
    return n;
}

CsdForm csd_recode(u64 c) {
    if (c == 0) throw InvalidInput("csd_recode: constant must be positive");
    if (c >> 62) throw InvalidInput("csd_recode: constant exceeds 62 bits");
    CsdForm form;
    form.value = c;
    std::string lsb_first;
    u64 x = c;
    while (x != 0) {
        if (x & 1) {
            // Digit 2 - (x mod 4): +1 when the next bit is clear, -1 otherwise.
            if ((x & 3) == 1) {
                lsb_first.push_back('+');
                x -= 1;
            } else {
                lsb_first.push_back('-');
                x += 1;
            }
        } else {
            lsb_first.push_back('0');
        }
        x >>= 1;
    }
    form.digits.assign(lsb_first.rbegin(), lsb_first.rend());
    return form;
}

}  // namespace nttc
