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

#include "qwigner/hvm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qwigner {

namespace detail {

struct AssignmentFactory {
    static ValueAssignment from_table(const Modulus &mod, std::vector<Residue> table) {
        return ValueAssignment(mod, std::nullopt, std::move(table));
    }
};

}  // namespace detail

namespace {

// Above this many (u, v) pairs, n >= 2 candidates are screened with the
// character test first and only non-characters are searched for a witness.
constexpr std::size_t kExhaustivePairLimit = std::size_t{1} << 26;

std::string describe_negativity(const PhasePoint &point, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "Wigner function is negative at " << point.str() << " (value " << value << ")";
    return os.str();
}

// Flat coordinate table for fast pair loops over V.
class PointTable {
   public:
    explicit PointTable(const Modulus &mod) : mod_(mod), width_(2 * static_cast<std::size_t>(mod.n())) {
        coords_.resize(mod.num_points() * width_);
        for (std::size_t i = 0; i < mod.num_points(); ++i) {
            auto p = PhasePoint::from_index(mod, i);
            std::copy(p.coords().begin(), p.coords().end(), coords_.begin() + static_cast<std::ptrdiff_t>(i * width_));
        }
    }

    Residue form(std::size_t u, std::size_t v) const {
        const Residue *a = &coords_[u * width_];
        const Residue *b = &coords_[v * width_];
        const std::size_t n = width_ / 2;
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::int64_t>(a[i]) * b[n + i] - static_cast<std::int64_t>(a[n + i]) * b[i];
        return mod_.reduce(acc);
    }

    std::size_t sum(std::size_t u, std::size_t v) const {
        const Residue *a = &coords_[u * width_];
        const Residue *b = &coords_[v * width_];
        std::size_t r = 0;
        const auto d = static_cast<std::size_t>(mod_.d());
        for (std::size_t k = 0; k < width_; ++k) r = r * d + static_cast<std::size_t>((a[k] + b[k]) % mod_.d());
        return r;
    }

   private:
    Modulus mod_;
    std::size_t width_;
    std::vector<Residue> coords_;
};

std::optional<AssignmentViolation> find_violation(const Modulus &mod, const std::vector<Residue> &table) {
    PointTable points(mod);
    const std::size_t count = mod.num_points();
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t v = u; v < count; ++v) {
            if (points.form(u, v) != 0) continue;
            const Residue lhs = table[points.sum(u, v)];
            const Residue rhs = mod.reduce(static_cast<std::int64_t>(table[u]) + table[v]);
            if (lhs != rhs)
                return AssignmentViolation{PhasePoint::from_index(mod, u), PhasePoint::from_index(mod, v), lhs, rhs};
        }
    }
    return std::nullopt;
}

std::vector<std::int64_t> assignment_key(const ValueAssignment &a) {
    if (a.character_point()) return {-1, static_cast<std::int64_t>(a.character_point()->index())};
    auto t = a.table();
    return std::vector<std::int64_t>(t.begin(), t.end());
}

void check_distribution(std::span<const double> q, const char *what) {
    double total = 0.0;
    for (double p : q) {
        if (!(p >= 0.0)) throw ModelValidationError(std::string(what) + " has a negative or NaN probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ModelValidationError(std::string(what) + " probabilities sum to " + std::to_string(total));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

NegativityError::NegativityError(PhasePoint point, double value)
    : Error(ErrorKind::Negativity, describe_negativity(point, value)), point_(std::move(point)), value_(value) {}

ValueAssignment ValueAssignment::character(const PhasePoint &w) { return ValueAssignment(w.modulus(), w, {}); }

Residue ValueAssignment::operator()(const PhasePoint &u) const {
    if (!(u.modulus() == mod_)) throw DimensionError("point and assignment live on different phase spaces");
    if (character_) return symplectic_form(u, *character_);
    return table_[u.index()];
}

Residue ValueAssignment::at(std::size_t index) const {
    if (character_) return symplectic_form(PhasePoint::from_index(mod_, index), *character_);
    return table_.at(index);
}

std::vector<Residue> ValueAssignment::table() const {
    if (!character_) return table_;
    std::vector<Residue> t(mod_.num_points());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = at(i);
    return t;
}

bool ValueAssignment::operator==(const ValueAssignment &other) const {
    if (!(mod_ == other.mod_)) return false;
    if (character_ && other.character_) return *character_ == *other.character_;
    return table() == other.table();
}

AssignmentCheck verify_assignment(const Modulus &mod, std::span<const Residue> table) {
    if (table.size() != mod.num_points())
        throw DimensionError("assignment table must have one entry per phase point");
    std::vector<Residue> t(table.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod.reduce(table[i]);

    const auto count = mod.num_points();
    const bool exhaustive = mod.n() == 1 || count <= kExhaustivePairLimit / count;
    if (!exhaustive && !is_character(mod, t)) {
        // A non-character cannot be additive on all commuting pairs when n >= 2.
        if (auto v = find_violation(mod, t)) return *v;
        throw std::logic_error("non-character assignment passed the isotropic additivity check");
    }
    if (exhaustive) {
        if (auto v = find_violation(mod, t)) return *v;
    }

    if (auto w = is_character(mod, t)) return ValueAssignment::character(*w);
    if (mod.n() >= 2) throw std::logic_error("isotropically additive assignment is not a character for n >= 2");
    return detail::AssignmentFactory::from_table(mod, std::move(t));
}

ValueAssignment extend_by_characters(const Modulus &mod, std::span<const Residue> basis_values) {
    const auto n = static_cast<std::size_t>(mod.n());
    if (basis_values.size() != 2 * n) throw DimensionError("need 2n basis values (e_1..e_n then f_1..f_n)");
    // [u, w] = sum_i u_Z[i] w_X[i] - u_X[i] w_Z[i]
    std::vector<std::int64_t> wz(n), wx(n);
    for (std::size_t i = 0; i < n; ++i) {
        wx[i] = basis_values[i];
        wz[i] = -static_cast<std::int64_t>(basis_values[n + i]);
    }
    return ValueAssignment::character(PhasePoint(mod, wz, wx));
}

ValueAssignmentModel::ValueAssignmentModel(const Modulus &mod, std::vector<ValueAssignment> states,
                                           std::vector<double> distribution)
    : mod_(mod), states_(std::move(states)), distribution_(std::move(distribution)) {
    if (states_.size() != distribution_.size())
        throw ModelValidationError("model has " + std::to_string(states_.size()) + " states but " +
                                   std::to_string(distribution_.size()) + " probabilities");
    check_distribution(distribution_, "value-assignment model");
    std::set<std::vector<std::int64_t>> seen;
    for (const auto &s : states_) {
        if (!(s.modulus() == mod_)) throw ModelValidationError("model mixes phase spaces");
        if (!seen.insert(assignment_key(s)).second)
            throw ModelValidationError("model contains the same value assignment twice");
    }
}

Complex ValueAssignmentModel::expectation(const PhasePoint &a) const {
    RootsOfUnity omega(mod_.d());
    Complex acc = 0.0;
    for (std::size_t k = 0; k < states_.size(); ++k) acc += distribution_[k] * omega[states_[k](a)];
    return acc;
}

double ValueAssignmentModel::expectation_defect(const DenseOperator &rho) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < mod_.num_points(); ++i) {
        const PhasePoint u = PhasePoint::from_index(mod_, i);
        worst = std::max(worst, std::abs(expectation(u) - trace_with(weyl(u), rho)));
    }
    return worst;
}

ValueAssignmentModel model_from_wigner(const WignerFunction &w, double eps) {
    if (w.kind() != WignerKind::State) throw InvalidArgumentError("model_from_wigner expects a state Wigner function");
    const Modulus &mod = w.modulus();
    const auto &values = w.values();

    const auto argmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    if (values[argmin] < -eps) throw NegativityError(PhasePoint::from_index(mod, argmin), values[argmin]);

    std::vector<double> q(values.begin(), values.end());
    double clamped = 0.0;
    for (auto &p : q) {
        if (p < 0.0) {
            clamped -= p;
            p = 0.0;
        }
    }
    if (clamped >= kMaxClampMass) throw NegativityError(PhasePoint::from_index(mod, argmin), values[argmin]);
    // Renormalize only when clamping moved the total noticeably; dividing by
    // 1 +- 1e-16 would only perturb the last bits of every entry.
    if (clamped > 0.0) {
        double total = 0.0;
        for (double p : q) total += p;
        if (std::abs(total - 1.0) > kRenormalizeThreshold)
            for (auto &p : q) p /= total;
    }

    std::vector<ValueAssignment> states;
    states.reserve(mod.num_points());
    for (std::size_t i = 0; i < mod.num_points(); ++i)
        states.push_back(ValueAssignment::character(PhasePoint::from_index(mod, i)));
    return ValueAssignmentModel(mod, std::move(states), std::move(q));
}

WignerFunction wigner_from_model(const ValueAssignmentModel &model) {
    const Modulus &mod = model.modulus();
    std::vector<double> values(mod.num_points(), 0.0);
    std::vector<bool> taken(mod.num_points(), false);
    for (std::size_t k = 0; k < model.states().size(); ++k) {
        const auto &point = model.states()[k].character_point();
        if (!point) throw AssignmentError("state " + std::to_string(k) + " is not a character of V");
        const auto idx = point->index();
        if (taken[idx]) throw ModelValidationError("two states share the character " + point->str());
        taken[idx] = true;
        values[idx] = model.distribution()[k];
    }
    return WignerFunction(mod, std::move(values), WignerKind::State);
}

int conditional_from_assignment(const ValueAssignment &lambda, const Context &context, const Outcome &s) {
    if (!(lambda.modulus() == context.modulus())) throw DimensionError("assignment and context live on different spaces");
    const OutcomeForm form = outcome_form(context.modulus(), context.operators(), s);
    const auto &elements = form.base().elements();
    for (std::size_t k = 0; k < elements.size(); ++k)
        if (lambda(elements[k]) != form.values()[k]) return 0;
    return 1;
}

DeterministicHVM::DeterministicHVM(const Modulus &mod, std::vector<double> distribution, ResponseFunction response)
    : mod_(mod), distribution_(std::move(distribution)), response_(std::move(response)) {
    check_distribution(distribution_, "hidden-variable model");
    if (!response_) throw ModelValidationError("hidden-variable model needs a response function");
}

Outcome DeterministicHVM::response(std::size_t state, const Context &context) const {
    if (state >= distribution_.size()) throw InvalidArgumentError("HVM state index out of range");
    Outcome out = response_(state, context);
    if (out.size() != context.size())
        throw ModelValidationError("HVM response has arity " + std::to_string(out.size()) + " for a context of size " +
                                   std::to_string(context.size()));
    for (auto v : out)
        if (v < 0 || v >= mod_.d()) throw ModelValidationError("HVM response is not a residue mod d");
    return out;
}

std::map<Outcome, double> DeterministicHVM::predict(const Context &context) const {
    std::map<Outcome, double> out;
    for (std::size_t nu = 0; nu < distribution_.size(); ++nu) out[response(nu, context)] += distribution_[nu];
    return out;
}

int DeterministicHVM::conditional(std::size_t state, const Implementation &impl, const Outcome &label) const {
    return impl.postprocess(response(state, impl.context)) == label ? 1 : 0;
}

DeterministicHVM build_deterministic_hvm(const ValueAssignmentModel &model) {
    auto shared = std::make_shared<const ValueAssignmentModel>(model);
    return DeterministicHVM(model.modulus(), model.distribution(), [shared](std::size_t nu, const Context &c) {
        const auto &lambda = shared->states()[nu];
        Outcome out;
        out.reserve(c.size());
        for (const auto &a : c.operators()) out.push_back(lambda(a));
        return out;
    });
}

AuditReport audit_noncontextuality(const DeterministicHVM &hvm, const ProjectiveMeasurement &target,
                                   const std::vector<Implementation> &impls, std::size_t size_cap) {
    // For each implementation, its label realizing each target label.
    std::vector<std::vector<Outcome>> aligned;
    aligned.reserve(impls.size());
    for (std::size_t i = 0; i < impls.size(); ++i) {
        if (!(impls[i].context.modulus() == hvm.modulus()))
            throw ImplementationError("implementation " + std::to_string(i) + " lives on another phase space");
        const auto match = same_measurement(coarse_grain(impls[i], size_cap), target);
        if (!match.same)
            throw ImplementationError("implementation " + std::to_string(i) + " does not realize the target measurement");
        std::vector<Outcome> labels;
        labels.reserve(target.labels.size());
        for (const auto &s : target.labels) {
            auto it = std::find_if(match.bijection.begin(), match.bijection.end(),
                                   [&](const auto &p) { return p.second == s; });
            labels.push_back(it->first);
        }
        aligned.push_back(std::move(labels));
    }

    AuditReport report;
    if (impls.size() < 2) return report;
    std::vector<Outcome> images(impls.size());
    for (std::size_t nu = 0; nu < hvm.num_states(); ++nu) {
        for (std::size_t i = 0; i < impls.size(); ++i)
            images[i] = impls[i].postprocess(hvm.response(nu, impls[i].context));
        for (std::size_t k = 0; k < target.labels.size(); ++k) {
            const int first = images[0] == aligned[0][k] ? 1 : 0;
            for (std::size_t i = 1; i < impls.size(); ++i) {
                const int other = images[i] == aligned[i][k] ? 1 : 0;
                if (other != first) {
                    report.pass = false;
                    report.discrepancy = AuditDiscrepancy{nu, target.labels[k], 0, i, first, other};
                    return report;
                }
            }
        }
    }
    return report;
}

AlphaCheck additivity_of_alpha(const DeterministicHVM &hvm) {
    const Modulus &mod = hvm.modulus();
    std::vector<Context> singles;
    singles.reserve(mod.num_points());
    for (std::size_t i = 0; i < mod.num_points(); ++i) singles.emplace_back(mod, std::vector{PhasePoint::from_index(mod, i)});

    std::vector<ValueAssignment> states;
    std::vector<double> distribution;
    std::set<std::vector<std::int64_t>> seen_keys;
    std::vector<std::vector<std::int64_t>> keys;
    std::vector<Residue> table(mod.num_points());
    for (std::size_t nu = 0; nu < hvm.num_states(); ++nu) {
        for (std::size_t i = 0; i < singles.size(); ++i) table[i] = hvm.response(nu, singles[i])[0];
        auto check = verify_assignment(mod, table);
        if (auto *violation = std::get_if<AssignmentViolation>(&check)) return AlphaViolation{nu, *violation};
        auto &lambda = std::get<ValueAssignment>(check);
        auto key = assignment_key(lambda);
        if (seen_keys.insert(key).second) {
            keys.push_back(std::move(key));
            states.push_back(std::move(lambda));
            distribution.push_back(hvm.distribution()[nu]);
        } else {
            const auto pos = static_cast<std::size_t>(std::find(keys.begin(), keys.end(), key) - keys.begin());
            distribution[pos] += hvm.distribution()[nu];
        }
    }
    return ValueAssignmentModel(mod, std::move(states), std::move(distribution));
}

DeterministicHVM random_contextual_hvm(const Modulus &mod, std::size_t num_states, std::uint64_t seed,
                                       const PhasePoint &u, const PhasePoint &v) {
    if (num_states == 0) throw InvalidArgumentError("contextual HVM needs at least one state");
    if (symplectic_form(u, v) != 0) throw IsotropyError("witness pair must commute");

    const Context joint(mod, {u, v});
    const Context sum_only(mod, {u + v});
    const Context u_only(mod, {u});
    const Context v_only(mod, {v});
    const std::vector<double> q(num_states, 1.0 / static_cast<double>(num_states));

    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        const std::uint64_t salt = splitmix64(seed + attempt * 0x632be59bd9b4e019ULL);
        const int d = mod.d();
        ResponseFunction response = [salt, d](std::size_t nu, const Context &c) {
            std::uint64_t key = splitmix64(salt ^ splitmix64(nu));
            for (auto idx : c.normal_form()) key = splitmix64(key ^ idx);
            Outcome out;
            out.reserve(c.size());
            for (const auto &a : c.operators())
                out.push_back(static_cast<Residue>(splitmix64(key ^ splitmix64(a.index() + 1)) % static_cast<std::uint64_t>(d)));
            return out;
        };
        DeterministicHVM hvm(mod, q, response);

        bool violates = false;
        for (std::size_t nu = 0; nu < num_states && !violates; ++nu) {
            const Residue direct = hvm.response(nu, sum_only)[0];
            const Outcome pair = hvm.response(nu, joint);
            const Residue split = mod.reduce(static_cast<std::int64_t>(hvm.response(nu, u_only)[0]) + hvm.response(nu, v_only)[0]);
            violates = direct != mod.reduce(static_cast<std::int64_t>(pair[0]) + pair[1]) && direct != split;
        }
        if (violates) return hvm;
    }
    throw InvalidArgumentError("could not generate a contextual HVM for the given pair");
}

}  // namespace qwigner
