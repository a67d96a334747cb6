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

#include "qwigner/random.hpp"

#include "qwigner/error.hpp"

namespace qwigner {

namespace {

DenseOperator gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseOperator g(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    return g;
}

}  // namespace

DenseOperator random_density_matrix(const Modulus &mod, Rng &rng) {
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    const DenseOperator g = gaussian_matrix(dim, dim, rng);
    DenseOperator rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

DenseOperator random_pure_state(const Modulus &mod, Rng &rng) {
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    DenseOperator psi = gaussian_matrix(dim, 1, rng);
    psi /= psi.norm();
    return psi * psi.adjoint();
}

DenseOperator depolarize(const DenseOperator &rho, double p) {
    const auto dim = rho.rows();
    return (1.0 - p) / static_cast<double>(dim) * DenseOperator::Identity(dim, dim) + p * rho;
}

PhasePoint random_point(const Modulus &mod, Rng &rng) {
    std::uniform_int_distribution<std::size_t> pick(0, mod.num_points() - 1);
    return PhasePoint::from_index(mod, pick(rng));
}

Context random_context(const Modulus &mod, Rng &rng, std::size_t max_generators) {
    if (max_generators == 0) throw InvalidArgumentError("random context needs at least one generator");
    std::uniform_int_distribution<std::size_t> size_dist(1, max_generators);
    const std::size_t m = size_dist(rng);
    std::vector<PhasePoint> ops;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < mod.num_points(); ++i) {
            const auto p = PhasePoint::from_index(mod, i);
            bool ok = true;
            for (const auto &a : ops) ok = ok && symplectic_form(a, p) == 0;
            if (ok) pool.push_back(i);
        }
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        ops.push_back(PhasePoint::from_index(mod, pool[pick(rng)]));
    }
    return Context(mod, std::move(ops));
}

}  // namespace qwigner
