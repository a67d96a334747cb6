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
#include <random>

#include "oracle.hpp"
#include "qwigner/error.hpp"
#include "qwigner/random.hpp"
#include "qwigner/wigner.hpp"

using namespace qwigner;

namespace {

oracle::Coords coords(const PhasePoint &u) { return {u.coords().begin(), u.coords().end()}; }

DenseOperator pure(const Eigen::VectorXcd &psi) { return psi * psi.adjoint() / psi.squaredNorm(); }

DenseOperator strange_state() {
    Eigen::VectorXcd psi(3);
    psi << 0.0, 1.0, -1.0;
    return pure(psi);
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<Complex> random_table(std::size_t size, Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> f(size);
    for (auto &c : f) c = Complex(g(rng), g(rng));
    return f;
}

}  // namespace

TEST_CASE("phase-point operators: trace, hermiticity, parity") {
    const Modulus m(3, 1);
    DenseOperator total = DenseOperator::Zero(3, 3);
    for_each_point(m, [&](const PhasePoint &u) {
        const auto a = phase_point_operator(u);
        CHECK(a.point == u);
        CHECK(std::abs(a.matrix.trace() - Complex(1.0, 0.0)) < 1e-10);
        CHECK(oracle::max_abs(a.matrix - a.matrix.adjoint()) < 1e-12);
        CHECK(oracle::max_abs(a.matrix - oracle::point_operator(3, 1, coords(u))) < 1e-12);
        total += a.matrix;
    });
    CHECK(oracle::max_abs(total - 3.0 * DenseOperator::Identity(3, 3)) < 1e-12);
    // A_0 |a> = |-a>.
    const auto a0 = phase_point_operator(PhasePoint(m)).matrix;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(std::abs(a0(b, a) - Complex((b + a) % 3 == 0 ? 1.0 : 0.0, 0.0)) < 1e-12);
    CHECK_THROWS_AS(phase_point_operator(PhasePoint(Modulus(3, 3)), 9), CapacityError);
}

TEST_CASE("phase-point operators are orthonormal") {
    for (auto [d, n] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
        const Modulus m(d, n);
        std::vector<DenseOperator> ops;
        for_each_point(m, [&](const PhasePoint &u) { ops.push_back(phase_point_operator(u).matrix); });
        const double dim = static_cast<double>(m.hilbert_dim());
        double worst = 0.0;
        for (std::size_t i = 0; i < ops.size(); ++i)
            for (std::size_t j = i; j < ops.size(); ++j) {
                // A_u is Hermitian, so Tr(A_u A_v) is the entrywise sum of A_u .* conj(A_v).
                const Complex ip = (ops[i].array() * ops[j].conjugate().array()).sum() / dim;
                worst = std::max(worst, std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0)));
            }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("wigner examples") {
    const Modulus m(3, 1);
    const auto mixed = wigner_of_state(m, DenseOperator::Identity(3, 3) / 3.0);
    for (double v : mixed.values()) CHECK(std::abs(v - 1.0 / 9.0) < 1e-12);

    DenseOperator zero = DenseOperator::Zero(3, 3);
    zero(0, 0) = 1.0;
    const auto w0 = wigner_of_state(m, zero);
    for_each_point(m, [&](const PhasePoint &u) {
        CHECK(std::abs(w0(u) - (u.x()[0] == 0 ? 1.0 / 3.0 : 0.0)) < 1e-12);
    });

    const auto ws = wigner_of_state(m, strange_state());
    CHECK(std::abs(ws(PhasePoint(m)) + 1.0 / 3.0) < 1e-12);
    for (std::size_t i = 1; i < 9; ++i) CHECK(std::abs(ws.values()[i] - 1.0 / 6.0) < 1e-12);
    CHECK_THROWS_AS(wigner_of_state(m, DenseOperator::Identity(3, 3)), StateValidationError);
}

TEST_CASE("both evaluation paths match the dense oracle") {
    Rng rng(31);
    for (auto [d, n] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
        const Modulus m(d, n);
        for (int trial = 0; trial < 3; ++trial) {
            const auto rho = random_density_matrix(m, rng);
            const auto ref = oracle::wigner(d, n, rho);
            const auto fast = wigner_of_state(m, rho, WignerMethod::Transform);
            const auto slow = wigner_of_state(m, rho, WignerMethod::Definitional);
            double sum = 0.0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                CHECK(std::abs(fast.values()[i] - ref[i]) < 1e-12);
                CHECK(std::abs(slow.values()[i] - ref[i]) < 1e-12);
                sum += fast.values()[i];
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("transform and definitional paths agree on larger systems") {
    Rng rng(32);
    for (auto [d, n] : {std::pair{5, 2}, {9, 1}, {15, 1}, {3, 3}}) {
        const Modulus m(d, n);
        const auto rho = random_density_matrix(m, rng);
        const auto fast = wigner_of_state(m, rho, WignerMethod::Transform);
        const auto slow = wigner_of_state(m, rho, WignerMethod::Definitional);
        double worst = 0.0;
        for (std::size_t i = 0; i < m.num_points(); ++i)
            worst = std::max(worst, std::abs(fast.values()[i] - slow.values()[i]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("reconstruction inverts the Wigner map") {
    Rng rng(33);
    for (auto [d, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {9, 1}}) {
        const Modulus m(d, n);
        for (int trial = 0; trial < 5; ++trial) {
            const auto rho = trial % 2 ? random_pure_state(m, rng) : random_density_matrix(m, rng);
            const auto back = reconstruct_state(wigner_of_state(m, rho));
            CHECK(oracle::max_abs(back - rho) < 1e-9);
        }
    }
}

TEST_CASE("effects") {
    const Modulus m(3, 2);
    const auto one = wigner_of_effect(m, DenseOperator::Identity(9, 9));
    CHECK(one.kind() == WignerKind::Effect);
    for (double v : one.values()) CHECK(std::abs(v - 1.0) < 1e-12);
    const auto none = wigner_of_effect(m, DenseOperator::Zero(9, 9));
    for (double v : none.values()) CHECK(std::abs(v) < 1e-12);

    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_point(m, rng);
        if (a.is_zero()) continue;
        const Context ctx(m, {a});
        for (int s = 0; s < 3; ++s) {
            const auto w = wigner_of_effect(m, projector(ctx, {s}));
            for_each_point(m, [&](const PhasePoint &u) {
                CHECK(std::abs(w(u) - (symplectic_form(a, u) == s ? 1.0 : 0.0)) < 1e-9);
            });
        }
    }
    CHECK_THROWS_AS(wigner_of_effect(m, 2.0 * DenseOperator::Identity(9, 9)), EffectValidationError);
    CHECK_THROWS_AS(wigner_of_effect(m, -DenseOperator::Identity(9, 9)), EffectValidationError);
    CHECK_THROWS_AS(wigner_of_effect(m, DenseOperator::Identity(3, 3)), EffectValidationError);
}

TEST_CASE("born rule") {
    const Modulus m(3, 1);
    DenseOperator zero = DenseOperator::Zero(3, 3);
    zero(0, 0) = 1.0;
    const auto w0 = wigner_of_state(m, zero);
    const auto id = wigner_of_effect(m, DenseOperator::Identity(3, 3));
    CHECK(std::abs(born_rule(id, w0) - 1.0) < 1e-12);
    const Context z(m, {PhasePoint(m, {1}, {0})}), x(m, {PhasePoint(m, {0}, {1})});
    CHECK(std::abs(born_rule(wigner_of_effect(m, projector(z, {0})), w0) - 1.0) < 1e-12);
    CHECK(std::abs(born_rule(wigner_of_effect(m, projector(x, {0})), w0) - 1.0 / 3.0) < 1e-12);
    CHECK_THROWS_AS(born_rule(w0, w0), InvalidArgumentError);
    CHECK_THROWS_AS(born_rule(id, wigner_of_state(Modulus(5, 1), DenseOperator::Identity(5, 5) / 5.0)),
                    DimensionError);

    Rng rng(35);
    const Modulus m2(3, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rho = random_density_matrix(m2, rng);
        const auto ctx = random_context(m2, rng, 3);
        const auto w = wigner_of_state(m2, rho);
        for (const auto &[s, p] : measure_distribution(ctx, rho))
            CHECK(std::abs(born_rule(wigner_of_effect(m2, projector(ctx, s)), w) - p) < 1e-9);
    }
}

TEST_CASE("expectation values from the Wigner function") {
    const Modulus m1(3, 1);
    const auto mixed = wigner_of_state(m1, DenseOperator::Identity(3, 3) / 3.0);
    for_each_point(m1, [&](const PhasePoint &a) {
        CHECK(std::abs(expectation(a, mixed) - Complex(a.is_zero() ? 1.0 : 0.0, 0.0)) < 1e-12);
    });
    DenseOperator zero = DenseOperator::Zero(3, 3);
    zero(0, 0) = 1.0;
    CHECK(std::abs(expectation(PhasePoint(m1, {1}, {0}), wigner_of_state(m1, zero)) - Complex(1.0, 0.0)) < 1e-12);

    Rng rng(36);
    for (int n : {1, 2}) {
        const Modulus m(3, n);
        const auto rho = random_density_matrix(m, rng);
        const auto w = wigner_of_state(m, rho);
        for_each_point(m, [&](const PhasePoint &a) {
            CHECK(std::abs(expectation(a, w) - (matrix(weyl(a)) * rho).trace()) < 1e-9);
        });
    }
}

TEST_CASE("negativity report") {
    const Modulus m(3, 1);
    const auto mixed = negativity_report(wigner_of_state(m, DenseOperator::Identity(3, 3) / 3.0));
    CHECK(mixed.non_negative);
    CHECK(mixed.negative_points.empty());
    CHECK(std::abs(mixed.sum_negativity - 1.0) < 1e-12);
    CHECK(std::abs(mixed.mana) < 1e-12);

    const auto s = negativity_report(wigner_of_state(m, strange_state()));
    CHECK_FALSE(s.non_negative);
    CHECK(s.min_point == PhasePoint(m));
    CHECK(std::abs(s.min_value + 1.0 / 3.0) < 1e-9);
    CHECK(std::abs(s.sum_negativity - 5.0 / 3.0) < 1e-9);
    CHECK(std::abs(s.mana - std::log(5.0 / 3.0)) < 1e-9);
    REQUIRE(s.negative_points.size() == 1);

    // A value just inside the threshold is not negative.
    std::vector<double> v(9, 1.0 / 9.0);
    v[0] += 5e-10;
    v[1] = -5e-10;
    CHECK(negativity_report(WignerFunction(m, v, WignerKind::State)).non_negative);
    v[1] = -2e-9;
    CHECK_FALSE(negativity_report(WignerFunction(m, v, WignerKind::State)).non_negative);
}

TEST_CASE("single-qutrit stabilizer states are non-negative") {
    // Eigenvectors of Z, X, XZ and XZ^2: twelve states in four bases.
    const Modulus m(3, 1);
    int count = 0;
    for (const auto &a : {PhasePoint(m, {1}, {0}), PhasePoint(m, {0}, {1}), PhasePoint(m, {1}, {1}),
                          PhasePoint(m, {2}, {1})}) {
        const Context ctx(m, {a});
        for (int s = 0; s < 3; ++s) {
            const auto rho = projector(ctx, {s});
            const auto r = negativity_report(wigner_of_state(m, rho));
            CHECK(r.non_negative);
            CHECK(r.min_value > -1e-12);
            ++count;
        }
    }
    CHECK(count == 12);
}

TEST_CASE("symplectic transform examples") {
    const Modulus m(3, 2);
    std::vector<Complex> delta(m.num_points(), 0.0);
    delta[0] = 1.0;
    for (const auto &c : symplectic_transform(m, delta)) CHECK(std::abs(c - Complex(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(symplectic_transform(m, std::vector<Complex>(80)), DimensionError);
    CHECK_THROWS_AS(symplectic_transform_naive(m, std::vector<Complex>(80)), DimensionError);
    CHECK_THROWS_AS(symplectic_transform_naive(Modulus(17, 2), std::vector<Complex>(83521)), CapacityError);
}

TEST_CASE("symplectic transform matches the naive loop and inverts") {
    Rng rng(37);
    for (auto [d, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}, {9, 1}, {15, 1}, {3, 3}}) {
        const Modulus m(d, n);
        for (int trial = 0; trial < 3; ++trial) {
            const auto f = random_table(m.num_points(), rng);
            const auto g = symplectic_transform(m, f);
            CHECK(max_diff(g, symplectic_transform_naive(m, f)) < 1e-12);
            const auto gi = symplectic_transform(m, f, TransformDirection::Inverse);
            CHECK(max_diff(gi, symplectic_transform_naive(m, f, TransformDirection::Inverse)) < 1e-12);
            CHECK(max_diff(symplectic_transform(m, g, TransformDirection::Inverse), f) < 1e-12);
        }
    }
}

TEST_CASE("the naive transform follows the kernel literally") {
    // Single nonzero input at v gives omega^{[u,v]} at every u.
    const Modulus m(5, 1);
    RootsOfUnity omega(5);
    const PhasePoint v(m, {2}, {3});
    std::vector<Complex> f(m.num_points(), 0.0);
    f[v.index()] = 1.0;
    const auto g = symplectic_transform_naive(m, f);
    for_each_point(m, [&](const PhasePoint &u) { CHECK(std::abs(g[u.index()] - omega[symplectic_form(u, v)]) < 1e-15); });
}
