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

#include "hwmimo/hwmimo.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

struct Owned
{
    char *s = nullptr;
    ~Owned() { hm_string_free(s); }
};

hm_scenario *two_cell()
{
    hm_scenario *s = nullptr;
    REQUIRE(hm_scenario_create(2, 2, 4, 1, 20, 1.0, &s) == HM_OK);
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int k = 0; k < 2; ++k)
                REQUIRE(hm_scenario_set_gain(s, j, l, k, 0, j == l ? 1.0 : 0.1 + 0.05 * k) == HM_OK);
    return s;
}

} // namespace

TEST_CASE("version and error reporting")
{
    CHECK(std::string(hm_version()).size() > 0);
    hm_scenario *s = nullptr;
    CHECK(hm_scenario_create(0, 1, 1, 1, 1, 1.0, &s) == HM_ERR_INVALID_ARGUMENT);
    CHECK(s == nullptr);
    CHECK(std::string(hm_last_error()).size() > 0);
    CHECK(hm_scenario_create(1, 1, 1, 1, 1, 1.0, nullptr) == HM_ERR_INVALID_ARGUMENT);
    hm_scenario_free(nullptr);
    hm_estimator_free(nullptr);
    hm_string_free(nullptr);
}

TEST_CASE("scenario handles")
{
    hm_scenario *s = two_cell();
    int L = 0, K = 0, N = 0, A = 0, T = 0;
    CHECK(hm_scenario_dims(s, &L, &K, &N, &A, &T) == HM_OK);
    CHECK(L == 2);
    CHECK(T == 20);
    CHECK(hm_scenario_set_gain(s, 0, 0, 0, 5, 1.0) == HM_ERR_INVALID_ARGUMENT);

    Owned text;
    REQUIRE(hm_scenario_to_json(s, &text.s) == HM_OK);
    hm_scenario *copy = nullptr;
    REQUIRE(hm_scenario_from_json(text.s, &copy) == HM_OK);
    Owned again;
    REQUIRE(hm_scenario_to_json(copy, &again.s) == HM_OK);
    CHECK(std::string(text.s) == std::string(again.s));
    CHECK(hm_scenario_from_json("{not json", &copy) == HM_ERR_CONFIG);

    hm_hardware bad{0.0, 0.0, 0.5, HM_LO_COMMON};
    Owned report;
    CHECK(hm_scenario_validate(s, &bad, &report.s) == HM_ERR_INVALID_ARGUMENT);
    CHECK(std::string(report.s).find("xi") != std::string::npos);
    hm_scenario_free(copy);
    hm_scenario_free(s);
}

TEST_CASE("closed-form rates through the C interface")
{
    hm_scenario *s = two_cell();
    const hm_hardware hw{1e-4, 2.4e-4, 1.58, HM_LO_SEPARATE};
    const hm_pilots pilots{HM_BOOK_DFT, HM_PLACE_BEGINNING, 0};
    hm_estimator *e = nullptr;
    REQUIRE(hm_estimator_create(s, &hw, &pilots, 0, &e) == HM_OK);

    size_t count = 0;
    CHECK(hm_estimator_data_instants(e, nullptr, 0, &count) == HM_OK);
    CHECK(count == 18);
    std::vector<int> tau(2);
    CHECK(hm_estimator_pilot_instants(e, tau.data(), tau.size(), &count) == HM_OK);
    CHECK(tau[1] == 2);

    double mse = 0.0;
    CHECK(hm_estimator_mse(e, 0, 1, 5, &mse) == HM_OK);
    CHECK(mse > 0.0);
    CHECK(mse < 4.0);

    const int grid[] = {4, 40, 400};
    double rates[6];
    REQUIRE(hm_mrc_rates(e, grid, 3, rates) == HM_OK);
    CHECK(rates[4] > rates[0]);

    double sinr = 0.0;
    CHECK(hm_mrc_sinr(e, 0, 5, 4, &sinr) == HM_OK);
    CHECK(std::log2(1 + sinr) > 0.0);
    CHECK(hm_mrc_sinr(e, 0, 1, 4, &sinr) == HM_ERR_INVALID_ARGUMENT);

    double lim = 0.0;
    int inf = -1;
    CHECK(hm_asymptotic_sinr(e, 0, 5, &lim, &inf) == HM_OK);
    CHECK(inf == 0);
    CHECK(lim > sinr);

    double mc[2];
    CHECK(hm_mc_rates(s, &hw, &pilots, 0, 2000, 1, HM_FILTER_MRC, 1, 1, mc) == HM_OK);
    CHECK(mc[0] == doctest::Approx(rates[0]).epsilon(0.1));

    hm_estimator_free(e);
    hm_scenario_free(s);
}

TEST_CASE("scaling and circuit helpers")
{
    const hm_scaling law{0.5, 0.5, 0.0, 0.0025, 3.0, 7e-5};
    const int tau[] = {1, 2, 3};
    int ok = 0;
    double margin = -1.0;
    CHECK(hm_scaling_check(&law, HM_LO_COMMON, 10, tau, 3, &ok, &margin) == HM_OK);
    CHECK(ok == 1);
    CHECK(margin == doctest::Approx(0.0));

    hm_hardware hw{};
    CHECK(hm_scaled_profile(&law, HM_LO_COMMON, 100.0, 1.0, &hw) == HM_OK);
    CHECK(hw.kappa2 == doctest::Approx(0.025));
    CHECK(hw.xi == doctest::Approx(30.0));

    CHECK(hm_circuit_profile(R"({"adc_bits": 6, "noise_figure_db": 2})", 1.0, &hw) == HM_OK);
    CHECK(std::sqrt(hw.kappa2) == doctest::Approx(0.0156).epsilon(0.01));
    CHECK(hm_circuit_profile(R"({"adc_bits": "six"})", 1.0, &hw) == HM_ERR_CONFIG);
}

TEST_CASE("runner entry points")
{
    Owned list;
    REQUIRE(hm_list(&list.s) == HM_OK);
    CHECK(std::string(list.s).find("scaling-law") != std::string::npos);

    Owned p;
    REQUIRE(hm_preset("fig10", &p.s) == HM_OK);
    CHECK(std::string(p.s).find("rate-vs-t") != std::string::npos);
    Owned none;
    CHECK(hm_preset("fig1", &none.s) == HM_ERR_CONFIG);

    Owned r;
    REQUIRE(hm_run(R"({"command": "circuit", "config": {"circuit": {"adc_bits": 4}}, "tables": true})", &r.s) ==
            HM_OK);
    CHECK(std::string(r.s).find("power.csv") != std::string::npos);
    Owned bad;
    CHECK(hm_run(R"({"command": "rates-cf", "config": {"pilots": {"book": "x"}}})", &bad.s) == HM_ERR_CONFIG);
    CHECK(bad.s == nullptr);
}
