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

#include "qwigner/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "qwigner/hvm.hpp"

namespace qwigner {

namespace {

double distribution_gap(const std::map<Outcome, double> &a, const std::map<Outcome, double> &b) {
    double worst = 0.0;
    for (const auto &[s, p] : a) {
        auto it = b.find(s);
        worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto &[s, p] : b)
        if (!a.count(s)) worst = std::max(worst, std::abs(p));
    return worst;
}

}  // namespace

TrialOutcome check_state(const Modulus &mod, const DenseOperator &rho, Rng &rng, const EquivalenceOptions &options) {
    TrialOutcome out;
    const auto w = wigner_of_state(mod, rho, WignerMethod::Transform, kStateTolerance, options.size_cap);
    const auto report = negativity_report(w, options.eps);
    out.non_negative = report.non_negative;
    out.min_value = report.min_value;

    std::optional<ValueAssignmentModel> model;
    try {
        model.emplace(model_from_wigner(w, options.eps));
        out.extracted = true;
    } catch (const NegativityError &e) {
        if (!(e.point() == report.min_point) || e.value() != report.min_value) {
            out.failure = "witness is not the most negative point";
            return out;
        }
    }
    if (out.extracted != out.non_negative) {
        out.failure = out.extracted ? "extracted a model from a negative Wigner function"
                                    : "no model for a non-negative Wigner function";
        return out;
    }
    if (!model) return out;

    const auto back = wigner_from_model(*model);
    if (back.values() != model->distribution()) {
        out.failure = "wigner_from_model does not invert the relabeling";
        return out;
    }
    const bool clamped = std::any_of(w.values().begin(), w.values().end(), [](double x) { return x < 0.0; });
    if (!clamped && back.values() != w.values()) {
        out.failure = "round trip does not reproduce W exactly";
        return out;
    }

    out.expectation_defect = model->expectation_defect(rho);
    if (out.expectation_defect > options.tolerance) {
        out.failure = "model expectations differ from Tr(T_u rho) by " + std::to_string(out.expectation_defect);
        return out;
    }

    const auto hvm = build_deterministic_hvm(*model);
    for (std::size_t k = 0; k < options.contexts_per_state; ++k) {
        const auto context = random_context(mod, rng, static_cast<std::size_t>(mod.n()) + 1);
        const double gap = distribution_gap(hvm.predict(context), measure_distribution(context, rho));
        out.prediction_defect = std::max(out.prediction_defect, gap);
    }
    if (out.prediction_defect > options.tolerance)
        out.failure = "HVM prediction differs from the Born rule by " + std::to_string(out.prediction_defect);
    return out;
}

EquivalenceSummary check_equivalence(const Modulus &mod, std::size_t trials, std::uint64_t seed,
                                     const EquivalenceOptions &options) {
    EquivalenceSummary summary;
    Rng rng(seed);
    std::uniform_real_distribution<double> mix(0.0, 1.0);
    for (std::size_t t = 0; t < trials; ++t) {
        DenseOperator rho;
        if (options.pure_every > 0 && t % options.pure_every == options.pure_every - 1) {
            rho = random_pure_state(mod, rng);
        } else {
            const double p = mix(rng);
            rho = depolarize(random_density_matrix(mod, rng), p);
        }
        const auto outcome = check_state(mod, rho, rng, options);
        ++summary.trials;
        (outcome.non_negative ? summary.non_negative : summary.negative)++;
        summary.max_expectation_defect = std::max(summary.max_expectation_defect, outcome.expectation_defect);
        summary.max_prediction_defect = std::max(summary.max_prediction_defect, outcome.prediction_defect);
        if (outcome.passed())
            ++summary.passed;
        else
            summary.failures.push_back("trial " + std::to_string(t) + ": " + outcome.failure);
    }
    return summary;
}

}  // namespace qwigner
