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

#pragma once

#include <random>

#include "qwigner/measurement.hpp"
#include "qwigner/weyl.hpp"

namespace qwigner {

using Rng = std::mt19937_64;

/// G G^dagger / Tr(G G^dagger) for a complex Gaussian d^n x d^n matrix G.
DenseOperator random_density_matrix(const Modulus &mod, Rng &rng);

/// |psi><psi| for a normalized complex Gaussian vector.
DenseOperator random_pure_state(const Modulus &mod, Rng &rng);

/// (1 - p) I / d^n + p rho.
DenseOperator depolarize(const DenseOperator &rho, double p);

/// A random isotropic context with between 1 and max_generators operators,
/// each drawn uniformly from the points commuting with the ones before.
Context random_context(const Modulus &mod, Rng &rng, std::size_t max_generators);

/// A uniformly random point of V.
PhasePoint random_point(const Modulus &mod, Rng &rng);

}  // namespace qwigner
