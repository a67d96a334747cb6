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

#include <algorithm>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "qwigner/error.hpp"
#include "qwigner/hvm.hpp"
#include "qwigner/random.hpp"

using namespace qwigner;

namespace {

std::vector<Residue> table_of(const PhasePoint &w) {
    std::vector<Residue> t;
    for_each_point(w.modulus(), [&](const PhasePoint &u) { t.push_back(symplectic_form(u, w)); });
    return t;
}

DenseOperator strange_state() {
    Eigen::VectorXcd psi(3);
    psi << 0.0, 1.0, -1.0;
    return psi * psi.adjoint() / 2.0;
}

/// A non-negative random state: depolarize until W >= 0.
DenseOperator classical_state(const Modulus &m, Rng &rng) {
    auto rho = random_density_matrix(m, rng);
    for (double p = 1.0; p > 0.0; p -= 0.1) {
        const auto mixed = depolarize(rho, p);
        if (negativity_report(wigner_of_state(m, mixed)).non_negative) return mixed;
    }
    return DenseOperator::Identity(rho.rows(), rho.cols()) / static_cast<double>(rho.rows());
}

}  // namespace

TEST_CASE("characters") {
    const Modulus m(5, 2);
    const PhasePoint w(m, {1, 2}, {3, 4});
    const auto lambda = ValueAssignment::character(w);
    REQUIRE(lambda.character_point().has_value());
    CHECK(*lambda.character_point() == w);
    for_each_point(m, [&](const PhasePoint &u) { CHECK(lambda(u) == symplectic_form(u, w)); });
    CHECK(lambda.table() == table_of(w));
    CHECK(lambda.at(7) == lambda(PhasePoint::from_index(m, 7)));
    CHECK_THROWS_AS(lambda(PhasePoint(Modulus(5, 1))), DimensionError);
}

TEST_CASE("verify_assignment accepts characters and rejects perturbations") {
    const Modulus m(3, 2);
    Rng rng(41);
    std::uniform_int_distribution<std::size_t> pick(1, m.num_points() - 1);
    for_each_point(m, [&](const PhasePoint &w) {
        const auto t = table_of(w);
        const auto check = verify_assignment(m, t);
        REQUIRE(std::holds_alternative<ValueAssignment>(check));
        CHECK(std::get<ValueAssignment>(check).character_point() == std::optional<PhasePoint>(w));

        auto bad = t;
        const auto at = pick(rng);
        bad[at] = m.reduce(bad[at] + 1);
        const auto rejected = verify_assignment(m, bad);
        REQUIRE(std::holds_alternative<AssignmentViolation>(rejected));
        const auto &v = std::get<AssignmentViolation>(rejected);
        CHECK(symplectic_form(v.u, v.v) == 0);
        CHECK(v.value_of_sum == bad[(v.u + v.v).index()]);
        CHECK(v.sum_of_values == m.reduce(bad[v.u.index()] + bad[v.v.index()]));
        CHECK(v.value_of_sum != v.sum_of_values);
    });
    CHECK_THROWS_AS(verify_assignment(m, std::vector<Residue>(3, 0)), DimensionError);
}

TEST_CASE("verify_assignment on larger spaces uses the character screen") {
    const Modulus m(5, 2);
    const PhasePoint w(m, {4, 1}, {0, 2});
    auto t = table_of(w);
    const auto check = verify_assignment(m, t);
    REQUIRE(std::holds_alternative<ValueAssignment>(check));
    CHECK(std::get<ValueAssignment>(check).character_point() == std::optional<PhasePoint>(w));
    t[100] = m.reduce(t[100] + 2);
    const auto rejected = verify_assignment(m, t);
    REQUIRE(std::holds_alternative<AssignmentViolation>(rejected));
    const auto &v = std::get<AssignmentViolation>(rejected);
    CHECK(symplectic_form(v.u, v.v) == 0);
    CHECK(v.value_of_sum != v.sum_of_values);
}

TEST_CASE("a single qutrit has value assignments that are not characters") {
    // With n = 1 the commuting pairs only lie on lines through the origin, so
    // each line can carry its own linear map.
    const Modulus m(3, 1);
    const std::vector<PhasePoint> lines{PhasePoint(m, {1}, {0}), PhasePoint(m, {0}, {1}), PhasePoint(m, {1}, {1}),
                                        PhasePoint(m, {1}, {2})};
    const std::vector<int> slope{1, 0, 0, 0};
    std::vector<Residue> t(m.num_points(), 0);
    for (std::size_t l = 0; l < lines.size(); ++l)
        for (int k = 1; k < 3; ++k) t[lines[l].scaled(k).index()] = m.reduce(k * slope[l]);
    CHECK_FALSE(is_character(m, t).has_value());
    const auto check = verify_assignment(m, t);
    REQUIRE(std::holds_alternative<ValueAssignment>(check));
    const auto &lambda = std::get<ValueAssignment>(check);
    CHECK_FALSE(lambda.character_point().has_value());
    CHECK(lambda.table() == t);

    const ValueAssignmentModel model(m, {lambda}, {1.0});
    CHECK_THROWS_AS(wigner_from_model(model), AssignmentError);
}

TEST_CASE("extend_by_characters") {
    const Modulus m(3, 2);
    const std::vector<Residue> zeros(4, 0);
    for (Residue v : extend_by_characters(m, zeros).table()) CHECK(v == 0);
    for_each_point(m, [&](const PhasePoint &w) {
        const auto lambda = ValueAssignment::character(w);
        std::vector<Residue> basis;
        for (int i = 0; i < 2; ++i) basis.push_back(lambda(PhasePoint::basis_z(m, i)));
        for (int i = 0; i < 2; ++i) basis.push_back(lambda(PhasePoint::basis_x(m, i)));
        CHECK(extend_by_characters(m, basis) == lambda);
    });
    CHECK_THROWS_AS(extend_by_characters(m, std::vector<Residue>(3, 0)), DimensionError);
}

TEST_CASE("halving identity for the plane decomposition") {
    const Modulus m(3, 2);
    Rng rng(43);
    std::uniform_int_distribution<int> r(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Residue> basis{r(rng), r(rng), r(rng), r(rng)};
        const auto lambda = extend_by_characters(m, basis);
        const int i = trial % 2, j = 1 - i;
        const int alpha = r(rng), beta = r(rng);
        const auto u = PhasePoint::basis_z(m, i).scaled(alpha);
        const auto v = PhasePoint::basis_x(m, i).scaled(beta);
        const auto up = PhasePoint::basis_z(m, j).scaled(beta);
        const auto vp = PhasePoint::basis_x(m, j).scaled(alpha);
        CHECK(symplectic_form(u, v) == symplectic_form(up, vp));
        const auto plus = u + v + up + vp, minus = u + v - up - vp;
        CHECK(symplectic_form(plus, minus) == 0);
        CHECK(symplectic_form(u + vp, v + up) == 0);
        CHECK(symplectic_form(u - vp, v - up) == 0);
        CHECK(lambda(u + v) == m.half(m.reduce(lambda(plus) + lambda(minus))));
        CHECK(lambda(u + v) == m.reduce(lambda(u) + lambda(v)));
    }
}

TEST_CASE("value-assignment models validate their input") {
    const Modulus m(3, 2);
    const auto a = ValueAssignment::character(PhasePoint(m, {1, 0}, {0, 0}));
    const auto b = ValueAssignment::character(PhasePoint(m, {0, 1}, {0, 0}));
    CHECK_NOTHROW(ValueAssignmentModel(m, {a, b}, {0.25, 0.75}));
    CHECK_THROWS_AS(ValueAssignmentModel(m, {a, a}, {0.5, 0.5}), ModelValidationError);
    CHECK_THROWS_AS(ValueAssignmentModel(m, {a, b}, {0.5, 0.6}), ModelValidationError);
    CHECK_THROWS_AS(ValueAssignmentModel(m, {a, b}, {1.5, -0.5}), ModelValidationError);
    CHECK_THROWS_AS(ValueAssignmentModel(m, {a}, {0.5, 0.5}), ModelValidationError);
    CHECK_THROWS_AS(
        ValueAssignmentModel(m, {a, ValueAssignment::character(PhasePoint(Modulus(3, 1)))}, {0.5, 0.5}),
        ModelValidationError);
}

TEST_CASE("model_from_wigner examples") {
    const Modulus m1(3, 1);
    const auto mixed = model_from_wigner(wigner_of_state(m1, DenseOperator::Identity(3, 3) / 3.0));
    CHECK(mixed.states().size() == 9);
    for (double q : mixed.distribution()) CHECK(std::abs(q - 1.0 / 9.0) < 1e-12);

    DenseOperator zero = DenseOperator::Zero(3, 3);
    zero(0, 0) = 1.0;
    const auto model = model_from_wigner(wigner_of_state(m1, zero));
    for (std::size_t k = 0; k < model.states().size(); ++k) {
        const auto &p = *model.states()[k].character_point();
        CHECK(std::abs(model.distribution()[k] - (p.x()[0] == 0 ? 1.0 / 3.0 : 0.0)) < 1e-12);
    }
    CHECK(model.expectation_defect(zero) < 1e-9);

    try {
        (void)model_from_wigner(wigner_of_state(m1, strange_state()));
        FAIL("expected a negativity error");
    } catch (const NegativityError &e) {
        CHECK(e.point() == PhasePoint(m1));
        CHECK(std::abs(e.value() + 1.0 / 3.0) < 1e-9);
        CHECK(e.kind() == ErrorKind::Negativity);
    }
    CHECK_THROWS_AS(model_from_wigner(wigner_of_effect(m1, DenseOperator::Identity(3, 3))), InvalidArgumentError);
}

TEST_CASE("model_from_wigner clamps numerical zeros") {
    const Modulus m(3, 1);
    std::vector<double> v(9, 1.0 / 9.0);
    v[0] += 3e-10;
    v[1] -= 1.0 / 9.0 + 3e-10;
    v[2] += 1.0 / 9.0;
    const auto model = model_from_wigner(WignerFunction(m, v, WignerKind::State));
    CHECK(model.distribution()[1] == 0.0);
    CHECK(std::abs(std::accumulate(model.distribution().begin(), model.distribution().end(), 0.0) - 1.0) < 1e-12);
    v[1] = -2e-9;
    CHECK_THROWS_AS(model_from_wigner(WignerFunction(m, v, WignerKind::State)), NegativityError);
}

TEST_CASE("wigner_from_model inverts model_from_wigner exactly") {
    const Modulus m(3, 2);
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = wigner_of_state(m, classical_state(m, rng));
        const auto back = wigner_from_model(model_from_wigner(w));
        CHECK(back.values() == w.values());
        CHECK(back.kind() == WignerKind::State);
    }
}

TEST_CASE("wigner_from_model of single and uniform models") {
    const Modulus m(3, 2);
    const PhasePoint w(m, {1, 2}, {0, 1});
    const ValueAssignmentModel single(m, {ValueAssignment::character(w)}, {1.0});
    const auto delta = wigner_from_model(single);
    for_each_point(m, [&](const PhasePoint &u) { CHECK(delta(u) == (u == w ? 1.0 : 0.0)); });
    // The delta is the Wigner function whose expectations are omega^{[a, w]}.
    RootsOfUnity omega(3);
    for_each_point(m, [&](const PhasePoint &a) {
        CHECK(std::abs(expectation(a, delta) - omega[symplectic_form(a, w)]) < 1e-12);
        CHECK(std::abs(single.expectation(a) - omega[symplectic_form(a, w)]) < 1e-12);
    });

    std::vector<ValueAssignment> all;
    for_each_point(m, [&](const PhasePoint &p) { all.push_back(ValueAssignment::character(p)); });
    const ValueAssignmentModel uniform(m, all, std::vector<double>(81, 1.0 / 81.0));
    const auto flat = wigner_from_model(uniform);
    for (double v : flat.values()) CHECK(v == 1.0 / 81.0);
}

TEST_CASE("models are unique up to relabeling") {
    const Modulus m(3, 2);
    Rng rng(45);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = classical_state(m, rng);
        const auto w = wigner_of_state(m, rho);
        const auto model = model_from_wigner(w);
        std::vector<std::size_t> perm(model.states().size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<ValueAssignment> states;
        std::vector<double> q;
        for (auto k : perm) {
            states.push_back(model.states()[k]);
            q.push_back(model.distribution()[k]);
        }
        const ValueAssignmentModel shuffled(m, states, q);
        CHECK(shuffled.expectation_defect(rho) < 1e-9);
        CHECK(wigner_from_model(shuffled).values() == w.values());
    }
}

TEST_CASE("character sums collapse to 0 or |V|") {
    for (int n : {1, 2}) {
        const Modulus m(3, n);
        RootsOfUnity omega(3);
        const double size = static_cast<double>(m.num_points());
        const std::size_t stride = n == 1 ? 1 : 5;
        for (std::size_t wi = 0; wi < m.num_points(); wi += stride) {
            const auto lambda = ValueAssignment::character(PhasePoint::from_index(m, wi));
            for (std::size_t ui = 0; ui < m.num_points(); ui += stride) {
                const auto u = PhasePoint::from_index(m, ui);
                Complex acc = 0.0;
                for_each_point(m, [&](const PhasePoint &v) { acc += omega[m.reduce(symplectic_form(u, v) + lambda(v))]; });
                const bool full = std::abs(acc - size) < 1e-9;
                CHECK((full || std::abs(acc) < 1e-9));
                // The sum is |V| exactly when u is the character point.
                CHECK(full == (u == *lambda.character_point()));
            }
        }
    }
}

TEST_CASE("conditional_from_assignment") {
    const Modulus m(3, 2);
    const auto lambda = ValueAssignment::character(PhasePoint(m, {2, 1}, {1, 0}));
    const PhasePoint u(m, {1, 0}, {0, 0}), v(m, {0, 1}, {0, 1});
    REQUIRE(symplectic_form(u, v) == 0);
    const Context cu(m, {u}), cv(m, {v}), cuv(m, {u, v});
    for (int s = 0; s < 3; ++s) {
        CHECK(conditional_from_assignment(lambda, cu, {s}) == (s == lambda(u) ? 1 : 0));
        for (int t = 0; t < 3; ++t)
            CHECK(conditional_from_assignment(lambda, cuv, {s, t}) ==
                  conditional_from_assignment(lambda, cu, {s}) * conditional_from_assignment(lambda, cv, {t}));
    }
    // Another generating set of the same group gives the same answers.
    const Context other(m, {u + v, v.scaled(2)});
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t) {
            const int direct = conditional_from_assignment(lambda, cuv, {s, t});
            const Outcome translated{m.reduce(s + t), m.reduce(2 * t)};
            CHECK(conditional_from_assignment(lambda, other, translated) == direct);
        }
    const Context redundant(m, {u, v, u + v});
    CHECK_THROWS_AS(conditional_from_assignment(lambda, redundant, {1, 1, 0}), InconsistentOutcomeError);
}

TEST_CASE("deterministic HVM predictions") {
    const Modulus m(3, 2);
    const auto w = PhasePoint(m, {1, 0}, {2, 2});
    const ValueAssignmentModel single(m, {ValueAssignment::character(w)}, {1.0});
    const auto hvm1 = build_deterministic_hvm(single);
    const Context z(m, {PhasePoint(m, {1, 0}, {0, 0})});
    const auto p = hvm1.predict(z);
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->first == Outcome{symplectic_form(PhasePoint(m, {1, 0}, {0, 0}), w)});

    const auto mixed_model = model_from_wigner(wigner_of_state(m, DenseOperator::Identity(9, 9) / 9.0));
    const auto hvm = build_deterministic_hvm(mixed_model);
    for (const auto &[s, prob] : hvm.predict(z)) CHECK(std::abs(prob - 1.0 / 3.0) < 1e-12);

    Rng rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = classical_state(m, rng);
        const auto h = build_deterministic_hvm(model_from_wigner(wigner_of_state(m, rho)));
        for (int c = 0; c < 10; ++c) {
            const auto ctx = random_context(m, rng, 3);
            const auto predicted = h.predict(ctx);
            for (const auto &[s, prob] : measure_distribution(ctx, rho)) {
                const auto it = predicted.find(s);
                CHECK(std::abs((it == predicted.end() ? 0.0 : it->second) - prob) < 1e-9);
            }
            // Joint responses agree with single-operator responses.
            for (std::size_t nu = 0; nu < h.num_states(); nu += 13) {
                const auto joint = h.response(nu, ctx);
                for (std::size_t i = 0; i < ctx.size(); ++i)
                    CHECK(joint[i] == h.response(nu, Context(m, {ctx.operators()[i]}))[0]);
            }
        }
    }
}

TEST_CASE("HVM responses are validated") {
    const Modulus m(3, 1);
    const DeterministicHVM wrong_arity(m, {1.0}, [](std::size_t, const Context &) { return Outcome{0, 0}; });
    CHECK_THROWS_AS(wrong_arity.response(0, Context(m, {PhasePoint(m, {1}, {0})})), ModelValidationError);
    const DeterministicHVM out_of_range(m, {1.0}, [](std::size_t, const Context &c) { return Outcome(c.size(), 7); });
    CHECK_THROWS_AS(out_of_range.response(0, Context(m, {PhasePoint(m, {1}, {0})})), ModelValidationError);
    CHECK_THROWS_AS(out_of_range.response(3, Context(m, {})), InvalidArgumentError);
}

TEST_CASE("audit passes on the worked implementation pairs") {
    const Modulus m(3, 2);
    Rng rng(47);
    const auto hvm = build_deterministic_hvm(model_from_wigner(wigner_of_state(m, classical_state(m, rng))));

    const PhasePoint u(m, {1, 0}, {0, 1}), v(m, {0, 1}, {1, 0});
    REQUIRE(symplectic_form(u, v) == 0);
    const Context direct(m, {u + v}), joint(m, {u, v});
    const auto target = coarse_grain(fine_grained(direct));
    CHECK(audit_noncontextuality(hvm, target, {fine_grained(direct), summed(joint)}).pass);

    const PhasePoint xi(m, {0, 0}, {1, 0}), ix(m, {0, 0}, {0, 1}), xx(m, {0, 0}, {1, 1});
    const Context a(m, {xi, ix}), b(m, {xi, xx});
    CHECK(audit_noncontextuality(hvm, coarse_grain(fine_grained(a)), {fine_grained(a), fine_grained(b)}).pass);

    // Binarization of T_u versus binarization of T_{2u}, whose outcome 0 is the same projector.
    const Context single(m, {u}), doubled(m, {u.scaled(2)});
    const auto bin = coarse_grain(binarized(single, 0));
    CHECK(audit_noncontextuality(hvm, bin, {binarized(single, 0), binarized(doubled, 0)}).pass);

    CHECK_THROWS_AS(audit_noncontextuality(hvm, target, {fine_grained(direct), fine_grained(joint)}),
                    ImplementationError);
}

TEST_CASE("contextual HVMs are caught") {
    const Modulus m(3, 2);
    const PhasePoint u(m, {1, 0}, {0, 0}), v(m, {0, 1}, {0, 0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto hvm = random_contextual_hvm(m, 4, seed, u, v);
        const Context direct(m, {u + v}), joint(m, {u, v});
        const auto report = audit_noncontextuality(hvm, coarse_grain(fine_grained(direct)),
                                                   {fine_grained(direct), summed(joint)});
        CHECK_FALSE(report.pass);
        REQUIRE(report.discrepancy.has_value());
        CHECK(report.discrepancy->first_value != report.discrepancy->second_value);
        const auto alpha = additivity_of_alpha(hvm);
        REQUIRE(std::holds_alternative<AlphaViolation>(alpha));
        const auto &w = std::get<AlphaViolation>(alpha).pair;
        CHECK(symplectic_form(w.u, w.v) == 0);
        CHECK(w.value_of_sum != w.sum_of_values);
    }
    CHECK_THROWS_AS(random_contextual_hvm(m, 2, 0, u, PhasePoint(m, {0, 0}, {1, 0})), IsotropyError);
}

TEST_CASE("additivity_of_alpha recovers the model") {
    const Modulus m(3, 2);
    Rng rng(48);
    const auto model = model_from_wigner(wigner_of_state(m, classical_state(m, rng)));
    const auto check = additivity_of_alpha(build_deterministic_hvm(model));
    REQUIRE(std::holds_alternative<ValueAssignmentModel>(check));
    const auto &recovered = std::get<ValueAssignmentModel>(check);
    REQUIRE(recovered.states().size() == model.states().size());
    for (std::size_t k = 0; k < model.states().size(); ++k) {
        CHECK(recovered.states()[k] == model.states()[k]);
        CHECK(recovered.distribution()[k] == model.distribution()[k]);
    }
    // alpha(k u) = k alpha(u)
    const auto hvm = build_deterministic_hvm(model);
    for (std::size_t i = 0; i < m.num_points(); i += 3) {
        const auto u = PhasePoint::from_index(m, i);
        const Residue a = hvm.response(5, Context(m, {u}))[0];
        for (int k = 0; k < 3; ++k) CHECK(hvm.response(5, Context(m, {u.scaled(k)}))[0] == m.reduce(k * a));
    }
}

TEST_CASE("additivity_of_alpha merges repeated assignments") {
    const Modulus m(3, 2);
    const auto lambda = ValueAssignment::character(PhasePoint(m, {1, 1}, {0, 2}));
    const DeterministicHVM hvm(m, {0.25, 0.75}, [lambda](std::size_t, const Context &c) {
        Outcome out;
        for (const auto &a : c.operators()) out.push_back(lambda(a));
        return out;
    });
    const auto check = additivity_of_alpha(hvm);
    REQUIRE(std::holds_alternative<ValueAssignmentModel>(check));
    const auto &model = std::get<ValueAssignmentModel>(check);
    REQUIRE(model.states().size() == 1);
    CHECK(model.states()[0] == lambda);
    CHECK(model.distribution()[0] == 1.0);
}
