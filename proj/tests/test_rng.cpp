// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic UWB air-to-ground channel simulator
// Copyright (C) 2026 The chansim authors
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

#include "chansim/rng.hpp"
#include "test_support.hpp"

#include <set>

using namespace chansim;
using Catch::Approx;

TEST_CASE("stream seeds are deterministic and distinct", "[rng]")
{
    CHECK(stream_seed(7, 0) == stream_seed(7, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 8; ++s)
        for (std::uint64_t i = 0; i < 1000; ++i)
            seen.insert(stream_seed(s, i));
    CHECK(seen.size() == 8000);
}

TEST_CASE("same seed gives the same sequence", "[rng]")
{
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i)
    {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        differs |= x != c.uniform();
    }
    CHECK(differs);
}

TEST_CASE("variates stay in range and have the right moments", "[rng]")
{
    Rng rng(2026);
    const int n = 400000;
    double su = 0, se = 0, sn = 0, sn2 = 0, sr2 = 0, sp = 0;
    for (int i = 0; i < n; ++i)
    {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = rng.uniform_open_low();
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
        const double p = rng.phase();
        REQUIRE(p >= 0.0);
        REQUIRE(p < 2 * std::numbers::pi);
        su += u;
        se += rng.exponential(0.25);
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        const double r = rng.rayleigh(3.0);
        sr2 += r * r;
        sp += p;
    }
    CHECK(su / n == Approx(0.5).margin(0.003));
    CHECK(se / n == Approx(4.0).epsilon(0.01));
    CHECK(sn / n == Approx(0.0).margin(0.005));
    CHECK(sn2 / n == Approx(1.0).epsilon(0.01));
    CHECK(sr2 / n == Approx(3.0).epsilon(0.01));
    CHECK(sp / n == Approx(std::numbers::pi).epsilon(0.005));
}
