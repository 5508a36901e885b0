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

#include "core/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace hwmimo;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    // Random123 kat_vectors
    auto c = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
    CHECK(c == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    c = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(c == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    c = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(c == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct")
{
    Stream a(5, 9, StreamPurpose::Channel), b(5, 9, StreamPurpose::Channel);
    Stream c(5, 9, StreamPurpose::Phase), d(6, 9, StreamPurpose::Channel);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u32();
        CHECK(x == b.next_u32());
        differ_c |= x != c.next_u32();
        differ_d |= x != d.next_u32();
    }
    CHECK(differ_c);
    CHECK(differ_d);
}

TEST_CASE("stream ids do not collide on a small grid")
{
    std::set<std::uint64_t> ids;
    for (std::uint64_t a = 0; a < 100; ++a)
        for (std::uint64_t b = 0; b < 100; ++b)
            ids.insert(stream_id(a, b));
    CHECK(ids.size() == 10000);
    CHECK(stream_id(1, 2) != stream_id(2, 1));
}

TEST_CASE("uniform and Gaussian draws have the right moments")
{
    Stream s(1, 2);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0, sc2 = 0;
    cplx sc = 0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double g = s.normal();
        sn += g;
        sn2 += g * g;
        const cplx z = s.complex_normal(2.0);
        sc += z * z;
        sc2 += std::norm(z);
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sc2 / n == doctest::Approx(2.0).epsilon(0.01));
    CHECK(std::abs(sc / static_cast<double>(n)) < 0.03); // circular symmetry
}
