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

#include "qwigner/measurement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <set>

#include "qwigner/error.hpp"

namespace qwigner {

std::vector<Outcome> all_outcomes(int d, std::size_t m) {
    std::vector<Outcome> out;
    Outcome s(m, 0);
    while (true) {
        out.push_back(s);
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++s[i] < d) break;
            s[i] = 0;
            if (i == 0) return out;
        }
        if (m == 0) return out;
    }
}

Context::Context(const Modulus &mod, std::vector<PhasePoint> operators)
    : mod_(mod), operators_(std::move(operators)), submodule_(span(mod, operators_)) {
    for (std::size_t i = 0; i < operators_.size(); ++i) {
        for (std::size_t j = i + 1; j < operators_.size(); ++j) {
            if (symplectic_form(operators_[i], operators_[j]) != 0)
                throw IsotropyError("context operators " + operators_[i].str() + " and " + operators_[j].str() +
                                    " do not commute");
        }
    }
}

std::vector<std::size_t> Context::normal_form() const {
    std::vector<std::size_t> out;
    out.reserve(submodule_.size());
    for (const auto &u : submodule_.elements()) out.push_back(u.index());
    return out;
}

DenseOperator projector(const Context &context, const Outcome &s, OutcomePolicy policy, std::size_t size_cap) {
    const Modulus &mod = context.modulus();
    check_size_cap(mod, size_cap);
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    DenseOperator p = DenseOperator::Zero(dim, dim);

    std::optional<OutcomeForm> form;
    try {
        form.emplace(outcome_form(mod, context.operators(), s));
    } catch (const InconsistentOutcomeError &) {
        if (policy == OutcomePolicy::Strict) throw;
        return p;
    }

    RootsOfUnity omega(mod.d());
    const auto &elements = form->base().elements();
    const double scale = 1.0 / static_cast<double>(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
        const WeylOperator t = weyl(elements[k]);
        const WeylOperator term(t.phase() - form->values()[k], elements[k]);
        for_each_entry(term, [&](std::size_t row, std::size_t col, Residue e) {
            p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += scale * omega[e];
        });
    }
    return p;
}

void validate_density(const Modulus &mod, const DenseOperator &rho, double tol) {
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    if (rho.rows() != dim || rho.cols() != dim)
        throw StateValidationError("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw StateValidationError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > tol)
        throw StateValidationError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    const DenseOperator sym = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(sym, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol)
        throw StateValidationError("density matrix has negative eigenvalue " + std::to_string(min_eig));
}

std::map<Outcome, double> measure_distribution(const Context &context, const DenseOperator &rho, double tol) {
    const Modulus &mod = context.modulus();
    validate_density(mod, rho, tol);

    const auto &elements = context.submodule().elements();
    std::vector<Complex> traces;
    traces.reserve(elements.size());
    for (const auto &u : elements) traces.push_back(trace_with(weyl(u), rho));

    RootsOfUnity omega(mod.d());
    std::map<Outcome, double> out;
    for (const auto &s : all_outcomes(mod.d(), context.size())) {
        std::optional<OutcomeForm> form;
        try {
            form.emplace(outcome_form(mod, context.operators(), s));
        } catch (const InconsistentOutcomeError &) {
            continue;
        }
        // Both enumerations are canonical, so values() lines up with traces.
        Complex acc = 0.0;
        for (std::size_t k = 0; k < elements.size(); ++k)
            acc += omega[mod.reduce(-static_cast<std::int64_t>(form->values()[k]))] * traces[k];
        out.emplace(s, acc.real() / static_cast<double>(elements.size()));
    }
    return out;
}

const DenseOperator &ProjectiveMeasurement::at(const Outcome &label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) throw InvalidArgumentError("unknown measurement label");
    return projectors[static_cast<std::size_t>(it - labels.begin())];
}

double ProjectiveMeasurement::defect() const {
    if (projectors.empty()) return 0.0;
    const auto dim = projectors.front().rows();
    double worst = 0.0;
    DenseOperator total = DenseOperator::Zero(dim, dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto &p = projectors[i];
        total += p;
        worst = std::max(worst, (p * p - p).cwiseAbs().maxCoeff());
        worst = std::max(worst, (p - p.adjoint()).cwiseAbs().maxCoeff());
        for (std::size_t j = i + 1; j < projectors.size(); ++j)
            worst = std::max(worst, (p * projectors[j]).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, (total - DenseOperator::Identity(dim, dim)).cwiseAbs().maxCoeff());
    return worst;
}

void Implementation::validate() const {
    const std::set<Outcome> label_set(labels.begin(), labels.end());
    if (label_set.size() != labels.size()) throw ImplementationError("implementation labels are not distinct");
    std::set<Outcome> hit;
    for (const auto &t : all_outcomes(context.modulus().d(), context.size())) {
        Outcome s = postprocess(t);
        if (!label_set.count(s)) throw ImplementationError("postprocessing maps an outcome outside the label set");
        hit.insert(std::move(s));
    }
    if (hit.size() != label_set.size()) throw ImplementationError("postprocessing map is not surjective");
}

namespace {

Implementation with_image_labels(const Context &context, std::function<Outcome(const Outcome &)> f) {
    std::set<Outcome> image;
    for (const auto &t : all_outcomes(context.modulus().d(), context.size())) image.insert(f(t));
    return Implementation{context, std::vector<Outcome>(image.begin(), image.end()), std::move(f)};
}

}  // namespace

Implementation fine_grained(const Context &context) {
    return with_image_labels(context, [](const Outcome &t) { return t; });
}

Implementation summed(const Context &context) {
    const Modulus mod = context.modulus();
    return with_image_labels(context, [mod](const Outcome &t) {
        std::int64_t acc = 0;
        for (auto v : t) acc += v;
        return Outcome{mod.reduce(acc)};
    });
}

Implementation binarized(const Context &context, Residue keep) {
    if (context.size() != 1) throw InvalidArgumentError("binarization needs a single-operator context");
    return with_image_labels(context, [keep](const Outcome &t) { return Outcome{t[0] == keep ? 0 : 1}; });
}

ProjectiveMeasurement coarse_grain(const Implementation &impl, std::size_t size_cap) {
    impl.validate();
    const Modulus &mod = impl.context.modulus();
    check_size_cap(mod, size_cap);
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());

    ProjectiveMeasurement m;
    m.labels = impl.labels;
    std::sort(m.labels.begin(), m.labels.end());
    m.projectors.assign(m.labels.size(), DenseOperator::Zero(dim, dim));
    for (const auto &t : all_outcomes(mod.d(), impl.context.size())) {
        const Outcome s = impl.postprocess(t);
        const auto pos = static_cast<std::size_t>(std::lower_bound(m.labels.begin(), m.labels.end(), s) - m.labels.begin());
        m.projectors[pos] += projector(impl.context, t, OutcomePolicy::Lenient, size_cap);
    }
    return m;
}

const Outcome &MeasurementMatch::image(const Outcome &label) const {
    for (const auto &[a, b] : bijection)
        if (a == label) return b;
    throw InvalidArgumentError("label is not part of the matching");
}

MeasurementMatch same_measurement(const ProjectiveMeasurement &m1, const ProjectiveMeasurement &m2, double tol) {
    MeasurementMatch match;
    if (m1.projectors.size() != m2.projectors.size()) return match;
    if (!m1.projectors.empty() && m1.projectors.front().rows() != m2.projectors.front().rows())
        throw DimensionError("measurements act on different Hilbert spaces");

    // Entrywise agreement within tol is transitive enough here: distinct
    // projectors of one measurement are orthogonal, so they are far apart
    // unless both vanish, and vanishing ones are interchangeable.
    std::vector<bool> used(m2.projectors.size(), false);
    for (std::size_t i = 0; i < m1.projectors.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < m2.projectors.size() && !found; ++j) {
            if (used[j]) continue;
            if ((m1.projectors[i] - m2.projectors[j]).cwiseAbs().maxCoeff() <= tol) {
                used[j] = true;
                found = true;
                match.bijection.emplace_back(m1.labels[i], m2.labels[j]);
            }
        }
        if (!found) {
            match.bijection.clear();
            return match;
        }
    }
    match.same = true;
    return match;
}

}  // namespace qwigner
