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

// End-to-end consistency sweep: Wigner non-negativity versus existence of a
// non-contextual value-assignment model, on random states.

#include <cstdint>
#include <string>
#include <vector>

#include "qwigner/random.hpp"
#include "qwigner/wigner.hpp"

namespace qwigner {

struct EquivalenceOptions {
    std::size_t contexts_per_state = 20;
    double eps = kNegativityEps;
    double tolerance = 1e-9;
    /// Every pure_every-th trial uses a random pure state; the others use a
    /// depolarized random mixed state. Zero means mixed states only.
    std::size_t pure_every = 5;
    std::size_t size_cap = kDefaultSizeCap;
};

struct TrialOutcome {
    bool non_negative = false;
    bool extracted = false;
    double min_value = 0.0;
    double expectation_defect = 0.0;
    double prediction_defect = 0.0;
    /// Empty when every check passed, otherwise the first failed check.
    std::string failure;

    bool passed() const noexcept { return failure.empty(); }
};

/// Runs every check on one state: extraction succeeds iff W >= 0; on success
/// the round trip through wigner_from_model is exact, the model reproduces
/// Tr(T_u rho) for all u, and its deterministic HVM reproduces the Born
/// distribution of random contexts; on failure the witness is the minimum.
TrialOutcome check_state(const Modulus &mod, const DenseOperator &rho, Rng &rng, const EquivalenceOptions &options);

struct EquivalenceSummary {
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t non_negative = 0;
    std::size_t negative = 0;
    double max_expectation_defect = 0.0;
    double max_prediction_defect = 0.0;
    std::vector<std::string> failures;

    bool all_passed() const noexcept { return passed == trials; }
};

EquivalenceSummary check_equivalence(const Modulus &mod, std::size_t trials, std::uint64_t seed,
                                     const EquivalenceOptions &options = {});

}  // namespace qwigner
