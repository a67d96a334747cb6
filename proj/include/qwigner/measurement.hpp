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

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qwigner/phase_space.hpp"
#include "qwigner/weyl.hpp"

namespace qwigner {

/// An outcome tuple s in Z_d^m, or a measurement label.
using Outcome = std::vector<Residue>;

/// Tolerance for density-operator and effect validation.
inline constexpr double kStateTolerance = 1e-8;
/// Tolerance for projector identities (idempotence, completeness, matching).
inline constexpr double kProjectorTolerance = 1e-9;

/// All tuples of Z_d^m in lexicographic order.
std::vector<Outcome> all_outcomes(int d, std::size_t m);

/// An ordered list of pairwise commuting Weyl operators T_{a_1}, ..., T_{a_m}.
class Context {
   public:
    /// Throws IsotropyError if some pair has nonzero symplectic form.
    Context(const Modulus &mod, std::vector<PhasePoint> operators);

    const Modulus &modulus() const noexcept { return mod_; }
    const std::vector<PhasePoint> &operators() const noexcept { return operators_; }
    std::size_t size() const noexcept { return operators_.size(); }
    /// M_a, the submodule generated by the operators.
    const Submodule &submodule() const noexcept { return submodule_; }

    /// Canonical indices of the elements of M_a. Two contexts with the same
    /// normal form generate the same stabilizer group.
    std::vector<std::size_t> normal_form() const;

   private:
    Modulus mod_;
    std::vector<PhasePoint> operators_;
    Submodule submodule_;
};

enum class OutcomePolicy {
    /// Inconsistent outcome tuples raise InconsistentOutcomeError.
    Strict,
    /// Inconsistent outcome tuples yield the zero projector.
    Lenient,
};

/// Pi_a^s = |M_a|^{-1} sum_{u in M_a} omega^{-l_s(u)} T_u, the projector onto the
/// joint eigenspace where T_{a_i} has eigenvalue omega^{s_i}.
DenseOperator projector(const Context &context, const Outcome &s, OutcomePolicy policy = OutcomePolicy::Strict,
                        std::size_t size_cap = kDefaultSizeCap);

/// Throws StateValidationError unless rho is d^n x d^n, Hermitian, unit trace
/// and positive semidefinite, all within tol.
void validate_density(const Modulus &mod, const DenseOperator &rho, double tol = kStateTolerance);

/// Born probabilities Tr(Pi_a^s rho) for every consistent outcome tuple s.
/// Inconsistent tuples have probability zero and are omitted.
std::map<Outcome, double> measure_distribution(const Context &context, const DenseOperator &rho,
                                               double tol = kStateTolerance);

/// A family of projectors indexed by labels, kept sorted by label.
struct ProjectiveMeasurement {
    std::vector<Outcome> labels;
    std::vector<DenseOperator> projectors;

    const DenseOperator &at(const Outcome &label) const;
    /// Max deviation over idempotence, Hermiticity, orthogonality and
    /// completeness. Zero for an exact projective measurement.
    double defect() const;
};

/// A context together with a surjective postprocessing map Z_d^m -> labels.
struct Implementation {
    Context context;
    std::vector<Outcome> labels;
    std::function<Outcome(const Outcome &)> postprocess;

    /// Throws ImplementationError if the map leaves the label set or misses a label.
    void validate() const;
};

/// Identity postprocessing: the fine-grained measurement of the context.
Implementation fine_grained(const Context &context);
/// Returns only the sum of the outcomes.
Implementation summed(const Context &context);
/// Single-operator context; returns 0 for outcome `keep` and 1 otherwise.
Implementation binarized(const Context &context, Residue keep);

/// Pi^s = sum of Pi_C^t over all t with postprocess(t) = s. Inconsistent t
/// contribute nothing.
ProjectiveMeasurement coarse_grain(const Implementation &impl, std::size_t size_cap = kDefaultSizeCap);

struct MeasurementMatch {
    bool same = false;
    /// (label in first, label in second) pairs when same is true.
    std::vector<std::pair<Outcome, Outcome>> bijection;

    /// Label in the second measurement matched to `label` of the first.
    const Outcome &image(const Outcome &label) const;
};

/// Looks for a label bijection under which the projectors agree entrywise.
MeasurementMatch same_measurement(const ProjectiveMeasurement &m1, const ProjectiveMeasurement &m2,
                                  double tol = kProjectorTolerance);

}  // namespace qwigner
