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

#include "qwigner/weyl.hpp"

#include <cmath>
#include <numbers>

#include "qwigner/error.hpp"

namespace qwigner {

void check_size_cap(const Modulus &mod, std::size_t size_cap) {
    if (mod.hilbert_dim() > size_cap)
        throw CapacityError("d^n = " + std::to_string(mod.hilbert_dim()) + " exceeds the dense size cap of " +
                            std::to_string(size_cap));
}

RootsOfUnity::RootsOfUnity(int d) : table_(static_cast<std::size_t>(d)) {
    for (int k = 0; k < d; ++k) table_[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
}

WeylOperator::WeylOperator(Residue phase, PhasePoint point)
    : phase_(point.modulus().reduce(phase)), point_(std::move(point)) {}

Residue WeylOperator::relative_phase() const noexcept {
    const Modulus &mod = modulus();
    return mod.reduce(static_cast<std::int64_t>(phase_) + mod.half(inner_product(mod, point_.z(), point_.x())));
}

WeylOperator weyl(const PhasePoint &u) {
    const Modulus &mod = u.modulus();
    return WeylOperator(mod.reduce(-static_cast<std::int64_t>(mod.half(inner_product(mod, u.z(), u.x())))), u);
}

// (Z^a X^b)(Z^c X^e) = omega^{-(b|c)} Z^{a+c} X^{b+e}
WeylOperator compose(const WeylOperator &a, const WeylOperator &b) {
    if (!(a.modulus() == b.modulus())) throw DimensionError("cannot compose operators on different spaces");
    const Modulus &mod = a.modulus();
    const std::int64_t phase = static_cast<std::int64_t>(a.phase()) + b.phase() -
                               inner_product(mod, a.point().x(), b.point().z());
    return WeylOperator(mod.reduce(phase), a.point() + b.point());
}

// (Z^a X^b)^dagger = X^{-b} Z^{-a} = omega^{-(a|b)} Z^{-a} X^{-b}
WeylOperator dagger(const WeylOperator &a) {
    const Modulus &mod = a.modulus();
    const std::int64_t phase = -static_cast<std::int64_t>(a.phase()) - inner_product(mod, a.point().z(), a.point().x());
    return WeylOperator(mod.reduce(phase), -a.point());
}

WeylOperator power(const WeylOperator &a, std::int64_t k) {
    if (k < 0) return power(dagger(a), -k);
    WeylOperator result(0, PhasePoint(a.modulus()));
    WeylOperator base = a;
    while (k > 0) {
        if (k & 1) result = compose(result, base);
        base = compose(base, base);
        k >>= 1;
    }
    return result;
}

DenseOperator matrix(const WeylOperator &a, std::size_t size_cap) {
    const Modulus &mod = a.modulus();
    check_size_cap(mod, size_cap);
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    RootsOfUnity omega(mod.d());
    DenseOperator m = DenseOperator::Zero(dim, dim);
    for_each_entry(a, [&](std::size_t row, std::size_t col, Residue e) {
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = omega[e];
    });
    return m;
}

Complex trace_with(const WeylOperator &a, const DenseOperator &rho) {
    const Modulus &mod = a.modulus();
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("operator dimension does not match d^n");
    RootsOfUnity omega(mod.d());
    Complex acc = 0.0;
    // Tr(A rho) = sum_{r,c} A(r,c) rho(c,r)
    for_each_entry(a, [&](std::size_t row, std::size_t col, Residue e) {
        acc += omega[e] * rho(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row));
    });
    return acc;
}

}  // namespace qwigner
