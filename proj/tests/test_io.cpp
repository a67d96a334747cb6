// Copyright 2026 The qwigner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "qwigner/error.hpp"
#include "qwigner/io.hpp"
#include "qwigner/random.hpp"

using namespace qwigner;
using nlohmann::json;

TEST_CASE("format_number round-trips doubles") {
    Rng rng(1);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
        const double x = g(rng) * std::pow(10.0, i % 20 - 10);
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "null");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "null");
}

TEST_CASE("state files round-trip") {
    Rng rng(2);
    const Modulus m(3, 2);
    const auto rho = random_density_matrix(m, rng);
    const auto text = state_to_json(m, rho);
    const auto parsed = parse_state_json(text);
    CHECK(parsed.modulus == m);
    CHECK((parsed.rho - rho).cwiseAbs().maxCoeff() == 0.0);
    CHECK(state_to_json(parsed.modulus, parsed.rho) == text);
    CHECK(state_hash(m, rho) == state_hash(parsed.modulus, parsed.rho));
    CHECK(state_hash(m, rho).size() == 16);
    CHECK(state_hash(m, rho) != state_hash(m, DenseOperator::Identity(9, 9) / 9.0));
}

TEST_CASE("state file errors") {
    CHECK_THROWS_AS(parse_state_json("{\"d\": 3, \"n\": 1, \"matrix\": [[1, 0]"), ParseError);
    CHECK_THROWS_AS(parse_state_json("[]"), ParseError);
    CHECK_THROWS_AS(parse_state_json("{\"d\": 3, \"matrix\": []}"), ParseError);
    CHECK_THROWS_AS(parse_state_json("{\"d\": 4, \"n\": 1, \"matrix\": []}"), ParseError);
    CHECK_THROWS_AS(parse_state_json("{\"d\": 3.5, \"n\": 1, \"matrix\": []}"), ParseError);
    CHECK_THROWS_AS(parse_state_json("{\"d\": 3, \"n\": 1, \"matrix\": [[1, 0]]}"), ParseError);
    const std::string bad_entry =
        "{\"d\": 3, \"n\": 1, \"matrix\": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],\"x\"]}";
    CHECK_THROWS_AS(parse_state_json(bad_entry), ParseError);
    const std::string not_unit_trace =
        "{\"d\": 3, \"n\": 1, \"matrix\": [[1,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]}";
    CHECK_THROWS_AS(parse_state_json(not_unit_trace), StateValidationError);
    const std::string ok = "{\"d\": 3, \"n\": 1, \"matrix\": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}";
    CHECK_NOTHROW(parse_state_json(ok));
}

TEST_CASE("wigner JSON") {
    const Modulus m(3, 1);
    Eigen::VectorXcd psi(3);
    psi << 0.0, 1.0, -1.0;
    const auto w = wigner_of_state(m, psi * psi.adjoint() / 2.0);
    const auto report = negativity_report(w);
    const auto text = wigner_to_json(w, report, 42);
    const auto doc = json::parse(text);
    CHECK(doc["d"] == 3);
    CHECK(doc["n"] == 1);
    CHECK(doc["kind"] == "state");
    CHECK(doc["seed"] == 42);
    CHECK(doc["values"].size() == 9);
    CHECK(doc["negativity"]["non_negative"] == false);
    CHECK(doc["negativity"]["min_point"] == json::array({0, 0}));
    CHECK(std::abs(doc["negativity"]["min_value"].get<double>() + 1.0 / 3.0) < 1e-9);
    CHECK(doc["negativity"]["mana_log_base"] == "e");

    const auto back = parse_wigner_json(text);
    CHECK(back.values() == w.values());
    CHECK(back.kind() == WignerKind::State);
    CHECK(wigner_to_json(w, report, 42) == text);
    CHECK(json::parse(wigner_to_json(w, std::nullopt)).contains("negativity") == false);
    CHECK_THROWS_AS(parse_wigner_json("{\"d\": 3, \"n\": 1, \"kind\": \"state\", \"values\": [1]}"), ParseError);
    CHECK_THROWS_AS(parse_wigner_json("{\"d\": 3, \"n\": 1, \"kind\": \"mixed\", \"values\": []}"), ParseError);
}

TEST_CASE("certificate and witness JSON") {
    const Modulus m(3, 2);
    DenseOperator zero = DenseOperator::Zero(9, 9);
    zero(0, 0) = 1.0;
    const auto model = model_from_wigner(wigner_of_state(m, zero));
    const auto doc = json::parse(certificate_to_json(model, zero, kNegativityEps, 7));
    CHECK(doc["seed"] == 7);
    REQUIRE(doc["states"].size() == 9);
    for (const auto &s : doc["states"]) {
        CHECK(std::abs(s["probability"].get<double>() - 1.0 / 9.0) < 1e-12);
        CHECK(s["character_point"][2] == 0);
        CHECK(s["character_point"][3] == 0);
    }
    CHECK(doc["bound_state_hash"] == state_hash(m, zero));

    const Modulus m1(3, 1);
    Eigen::VectorXcd psi(3);
    psi << 0.0, 1.0, -1.0;
    const auto report = negativity_report(wigner_of_state(m1, psi * psi.adjoint() / 2.0));
    const auto w = json::parse(witness_to_json(report, 3));
    CHECK(w["contextual"] == true);
    CHECK(w["witness"]["point"] == json::array({0, 0}));
    CHECK(w["negative_point_count"] == 1);
    CHECK(std::abs(w["sum_negativity"].get<double>() - 5.0 / 3.0) < 1e-9);
}
