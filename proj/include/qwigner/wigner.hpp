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

#include <span>
#include <vector>

#include "qwigner/measurement.hpp"
#include "qwigner/phase_space.hpp"
#include "qwigner/weyl.hpp"

namespace qwigner {

/// Values below -kNegativityEps count as genuinely negative.
inline constexpr double kNegativityEps = 1e-9;

enum class WignerKind { State, Effect };

/// A real function on V, stored in canonical point order.
class WignerFunction {
   public:
    WignerFunction(const Modulus &mod, std::vector<double> values, WignerKind kind);

    const Modulus &modulus() const noexcept { return mod_; }
    WignerKind kind() const noexcept { return kind_; }
    const std::vector<double> &values() const noexcept { return values_; }
    double operator()(const PhasePoint &u) const { return values_[u.index()]; }

   private:
    Modulus mod_;
    std::vector<double> values_;
    WignerKind kind_;
};

struct PhasePointOperator {
    PhasePoint point;
    DenseOperator matrix;
};

/// A_u = d^{-n} sum_v omega^{[u,v]} T_v.
PhasePointOperator phase_point_operator(const PhasePoint &u, std::size_t size_cap = kDefaultSizeCap);

enum class WignerMethod {
    /// All Tr(T_v rho) followed by one fast symplectic transform.
    Transform,
    /// d^{-n} Tr(A_u rho) point by point. Slow; kept as a cross-check.
    Definitional,
};

/// W_rho(u) = d^{-n} Tr(A_u rho). Throws StateValidationError for invalid rho.
WignerFunction wigner_of_state(const Modulus &mod, const DenseOperator &rho, WignerMethod method = WignerMethod::Transform,
                               double tol = kStateTolerance, std::size_t size_cap = kDefaultSizeCap);

/// W_E(u) = Tr(E A_u). Throws EffectValidationError unless 0 <= E <= I.
WignerFunction wigner_of_effect(const Modulus &mod, const DenseOperator &effect,
                                WignerMethod method = WignerMethod::Transform, double tol = kStateTolerance,
                                std::size_t size_cap = kDefaultSizeCap);

/// sum_u W(u) A_u. Inverts wigner_of_state.
DenseOperator reconstruct_state(const WignerFunction &w, std::size_t size_cap = kDefaultSizeCap);

/// Tr(E rho) computed as sum_u W_E(u) W_rho(u).
double born_rule(const WignerFunction &effect, const WignerFunction &state);

/// Tr(T_a rho) computed as sum_u W_rho(u) omega^{[a,u]}.
Complex expectation(const PhasePoint &a, const WignerFunction &state);

struct NegativityReport {
    double min_value = 0.0;
    PhasePoint min_point;
    std::vector<PhasePoint> negative_points;
    /// sum_u |W(u)|.
    double sum_negativity = 0.0;
    /// ln(sum_negativity).
    double mana = 0.0;
    bool non_negative = true;
};

NegativityReport negativity_report(const WignerFunction &w, double eps = kNegativityEps);

enum class TransformDirection {
    /// g(u) = sum_v omega^{[u,v]} f(v)
    Forward,
    /// f(v) = d^{-2n} sum_u omega^{-[u,v]} g(u)
    Inverse,
};

/// Symplectic Fourier transform over V in O(|V| 2n d), one 1-D character
/// transform per coordinate axis. Input and output are in canonical order.
std::vector<Complex> symplectic_transform(const Modulus &mod, std::span<const Complex> f,
                                          TransformDirection direction = TransformDirection::Forward);

/// Largest |V| the naive transform accepts.
inline constexpr std::size_t kNaiveTransformLimit = std::size_t{1} << 16;

/// Same transform by the O(|V|^2) double loop. Throws CapacityError above
/// kNaiveTransformLimit points.
std::vector<Complex> symplectic_transform_naive(const Modulus &mod, std::span<const Complex> f,
                                                TransformDirection direction = TransformDirection::Forward);

}  // namespace qwigner
