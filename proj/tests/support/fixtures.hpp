// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hwmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "core/model.hpp"
#include "core/pilots.hpp"
#include "core/rng.hpp"

namespace hwmimo::testing {

struct Small
{
    Scenario scenario;
    HardwareProfile hw;
    PilotBook book;
};

/// Random gains in [0.2, 1.2), powers in [0.5, 2).
inline Scenario random_scenario(int L, int K, int N, int A, int T, std::uint64_t seed)
{
    Scenario s(Dimensions{L, K, N, A, T}, 1.0);
    Stream st(seed, 17);
    for (int j = 0; j < L; ++j)
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
                for (int a = 0; a < A; ++a)
                    s.set_gain(j, l, k, a, 0.2 + st.uniform());
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            s.set_power(l, k, 0.5 + 1.5 * st.uniform());
    return s;
}

inline Small small_case(int L, int K, int N, int A, int T, int B, PilotBookKind kind, PlacementKind where,
                        HardwareProfile hw, std::uint64_t seed)
{
    Scenario s = random_scenario(L, K, N, A, T, seed);
    PilotBook book = make_book(kind, s.powers(), place(where, T, B));
    return {s, hw, book};
}

} // namespace hwmimo::testing
