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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "qwigner/error.hpp"
#include "qwigner/measurement.hpp"
#include "qwigner/phase_space.hpp"
#include "qwigner/wigner.hpp"

namespace qwigner {

/// Raised when a Wigner function has a genuinely negative entry. The most
/// negative point is a contextuality witness.
class NegativityError : public Error {
   public:
    NegativityError(PhasePoint point, double value);
    const PhasePoint &point() const noexcept { return point_; }
    double value() const noexcept { return value_; }

   private:
    PhasePoint point_;
    double value_;
};

namespace detail {
struct AssignmentFactory;
}

/// A map lambda: V -> Z_d in exponent form (the root of unity is
/// omega^lambda(u)), additive on commuting pairs.
///
/// Characters u -> [u, w] are stored as the point w; anything else (only
/// possible for n = 1) keeps its full table.
class ValueAssignment {
   public:
    /// The character u -> [u, w].
    static ValueAssignment character(const PhasePoint &w);

    const Modulus &modulus() const noexcept { return mod_; }
    Residue operator()(const PhasePoint &u) const;
    Residue at(std::size_t index) const;
    const std::optional<PhasePoint> &character_point() const noexcept { return character_; }
    std::vector<Residue> table() const;

    bool operator==(const ValueAssignment &other) const;

   private:
    friend struct detail::AssignmentFactory;
    ValueAssignment(const Modulus &mod, std::optional<PhasePoint> character, std::vector<Residue> table)
        : mod_(mod), character_(std::move(character)), table_(std::move(table)) {}

    Modulus mod_;
    std::optional<PhasePoint> character_;
    std::vector<Residue> table_;
};

/// A commuting pair on which additivity fails: lambda(u+v) != lambda(u) + lambda(v).
struct AssignmentViolation {
    PhasePoint u;
    PhasePoint v;
    Residue value_of_sum;
    Residue sum_of_values;
};

using AssignmentCheck = std::variant<ValueAssignment, AssignmentViolation>;

/// Checks isotropic additivity of a candidate table (indexed by
/// PhasePoint::index). Exhaustive over commuting pairs for small phase
/// spaces. For n >= 2 an accepted candidate is always a character and is
/// returned in character form.
AssignmentCheck verify_assignment(const Modulus &mod, std::span<const Residue> table);

/// The character agreeing with the given values on e_1..e_n, f_1..f_n:
/// lambda(u) = sum_i u_Z[i] lambda(e_i) + u_X[i] lambda(f_i). basis_values
/// holds the n values on e_i followed by the n values on f_i.
ValueAssignment extend_by_characters(const Modulus &mod, std::span<const Residue> basis_values);

/// A finite set of distinct value assignments with a probability
/// distribution over them.
class ValueAssignmentModel {
   public:
    /// Throws ModelValidationError on size mismatch, negative or unnormalized
    /// probabilities (1e-12), mixed phase spaces or duplicate assignments.
    ValueAssignmentModel(const Modulus &mod, std::vector<ValueAssignment> states, std::vector<double> distribution);

    const Modulus &modulus() const noexcept { return mod_; }
    const std::vector<ValueAssignment> &states() const noexcept { return states_; }
    const std::vector<double> &distribution() const noexcept { return distribution_; }

    /// sum_nu q(nu) omega^{lambda_nu(a)}.
    Complex expectation(const PhasePoint &a) const;
    /// max_u |expectation(u) - Tr(T_u rho)|.
    double expectation_defect(const DenseOperator &rho) const;

   private:
    Modulus mod_;
    std::vector<ValueAssignment> states_;
    std::vector<double> distribution_;
};

/// One state per phase point u (canonical order) with lambda_u(a) = [a, u] and
/// q(u) = W(u). Values in (-eps, 0) are treated as zero and the rest
/// renormalized when their total drifts; throws NegativityError when some value is below -eps or
/// the clamped mass reaches kMaxClampMass.
ValueAssignmentModel model_from_wigner(const WignerFunction &w, double eps = kNegativityEps);

inline constexpr double kMaxClampMass = 1e-9;
/// Clamped distributions are rescaled only when their total is further than
/// this from 1.
inline constexpr double kRenormalizeThreshold = 1e-13;

/// Inverse of model_from_wigner: W(u) is the probability of the state whose
/// character is a -> [a, u], or zero if no state has that character.
/// Throws AssignmentError if a state is not a character.
WignerFunction wigner_from_model(const ValueAssignmentModel &model);

/// p_C(s | lambda): 1 iff lambda agrees with l_s on all of M_a, else 0.
/// Throws InconsistentOutcomeError when s does not define l_s.
int conditional_from_assignment(const ValueAssignment &lambda, const Context &context, const Outcome &s);

/// alpha_nu(C): the outcome tuple a deterministic HVM returns for state nu.
using ResponseFunction = std::function<Outcome(std::size_t state, const Context &context)>;

class DeterministicHVM {
   public:
    DeterministicHVM(const Modulus &mod, std::vector<double> distribution, ResponseFunction response);

    const Modulus &modulus() const noexcept { return mod_; }
    std::size_t num_states() const noexcept { return distribution_.size(); }
    const std::vector<double> &distribution() const noexcept { return distribution_; }

    /// Throws ModelValidationError if the response has the wrong arity.
    Outcome response(std::size_t state, const Context &context) const;
    /// p_C(s) = sum_nu q(nu) [alpha_nu(C) = s], over the outcomes that occur.
    std::map<Outcome, double> predict(const Context &context) const;
    /// p_C(sigma_C^{-1}(label) | nu) for an implementation (C, sigma_C).
    int conditional(std::size_t state, const Implementation &impl, const Outcome &label) const;

   private:
    Modulus mod_;
    std::vector<double> distribution_;
    ResponseFunction response_;
};

/// alpha_nu(C) = (lambda_nu(a_1), ..., lambda_nu(a_m)).
DeterministicHVM build_deterministic_hvm(const ValueAssignmentModel &model);

struct AuditDiscrepancy {
    std::size_t state;
    /// Label of the target measurement.
    Outcome label;
    std::size_t first_impl;
    std::size_t second_impl;
    int first_value;
    int second_value;
};

struct AuditReport {
    bool pass = true;
    std::optional<AuditDiscrepancy> discrepancy;
};

/// Compares p_C(sigma_C^{-1}(s) | nu) across implementations of the same
/// measurement, for every state and label. Throws ImplementationError if an
/// implementation does not realize the target.
AuditReport audit_noncontextuality(const DeterministicHVM &hvm, const ProjectiveMeasurement &target,
                                   const std::vector<Implementation> &impls,
                                   std::size_t size_cap = kDefaultSizeCap);

struct AlphaViolation {
    std::size_t state;
    AssignmentViolation pair;
};

using AlphaCheck = std::variant<ValueAssignmentModel, AlphaViolation>;

/// Reads alpha_nu(u) off the single-operator contexts {T_u} and checks
/// additivity on commuting pairs. On success returns the value-assignment
/// model lambda_nu = alpha_nu (states with equal assignments merged).
AlphaCheck additivity_of_alpha(const DeterministicHVM &hvm);

/// A deliberately contextual HVM: every (state, context, generator) gets an
/// independent pseudo-random outcome. Resamples until, for some state, both
/// alpha({u+v}) != alpha({u}) + alpha({v}) and the {T_{u+v}} vs {T_u, T_v}
/// sum-implementation pair disagree. u and v must commute.
DeterministicHVM random_contextual_hvm(const Modulus &mod, std::size_t num_states, std::uint64_t seed,
                                       const PhasePoint &u, const PhasePoint &v);

}  // namespace qwigner
