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

#include "core/pilots.hpp"

#include <doctest.h>

using namespace hwmimo;

namespace {

MatrixR powers(int L, int K)
{
    MatrixR p(L, K);
    for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
            p(l, k) = 1.0 + l + 0.5 * k;
    return p;
}

} // namespace

TEST_CASE("placements")
{
    const Placement b = place(PlacementKind::Beginning, 10, 3);
    CHECK(b.tau == std::vector<int>{1, 2, 3});
    CHECK(b.data.size() == 7);
    CHECK(b.data.front() == 4);

    const Placement m = place(PlacementKind::Middle, 10, 2);
    CHECK(m.tau == std::vector<int>{5, 6});

    const Placement u = place(PlacementKind::Uniform, 12, 3);
    CHECK(u.tau == std::vector<int>{1, 5, 9});

    const Placement p = place(PlacementKind::PreamblePlusDistributed, 20, 4);
    CHECK(p.tau.size() == 4);
    CHECK(p.tau[0] == 1);
    CHECK(p.tau[1] == 2);
    CHECK(p.tau[2] > 2);
    CHECK(p.tau[3] > p.tau[2]);
    CHECK(p.tau[3] <= 20);

    CHECK_THROWS_AS(place(PlacementKind::Beginning, 2, 3), Error);
    CHECK_THROWS_AS(place(PlacementKind::Beginning, 5, 0), Error);
}

TEST_CASE("temporal pilots are scaled unit vectors")
{
    const MatrixR p = powers(2, 3);
    const PilotBook book = temporal_book(p, place(PlacementKind::Beginning, 10, 3));
    const MatrixC X = book.cell_matrix(1);
    for (int b = 0; b < 3; ++b)
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(X(b, k) - (b == k ? std::sqrt(p(1, k)) : 0.0)) < 1e-15);
    CHECK(book.symbol(1, 2, 3) == X(2, 2));
    CHECK(book.symbol(1, 2, 4) == cplx(0.0));
    CHECK_THROWS_AS(temporal_book(p, place(PlacementKind::Beginning, 10, 4)), Error);
}

TEST_CASE("DFT pilots are orthogonal with B = K")
{
    const MatrixR p = MatrixR::Ones(1, 4);
    const PilotBook book = dft_book(p, place(PlacementKind::Beginning, 10, 4));
    const MatrixC X = book.cell_matrix(0);
    const MatrixC G = X.adjoint() * X;
    CHECK((G - 4.0 * MatrixC::Identity(4, 4)).norm() < 1e-12);
    for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(X(b, k)) == doctest::Approx(1.0));
}

TEST_CASE("sequences are reused across cells by UE index")
{
    const MatrixR p = MatrixR::Ones(3, 2);
    PilotBook book = dft_book(p, place(PlacementKind::Beginning, 10, 2));
    CHECK((book.sequence(0, 1) - book.sequence(2, 1)).norm() == 0.0);
    Eigen::MatrixXi r(3, 2);
    r << 0, 1, 1, 0, 0, 1;
    book.set_reuse(r);
    CHECK((book.sequence(1, 0) - book.sequence(0, 1)).norm() == 0.0);
    r(2, 1) = 0;
    CHECK_THROWS_AS(book.set_reuse(r), Error);
}
