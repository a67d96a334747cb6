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

#include "qwigner/qwigner.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "qwigner/equivalence.hpp"
#include "qwigner/hvm.hpp"
#include "qwigner/io.hpp"
#include "qwigner/wigner.hpp"

using namespace qwigner;

struct qw_config {
    double eps = kNegativityEps;
    double state_tolerance = kStateTolerance;
    std::size_t size_cap = kDefaultSizeCap;
    std::uint64_t seed = 0;
    std::size_t contexts_per_state = 20;
};

struct qw_state {
    Modulus mod;
    DenseOperator rho;
};

struct qw_wigner {
    WignerFunction w;
};

struct qw_model {
    ValueAssignmentModel model;
};

namespace {

thread_local std::string last_error;

const qw_config &config_or_default(const qw_config *config) {
    static const qw_config defaults{};
    return config ? *config : defaults;
}

qw_status fail(qw_status status, const char *message) {
    last_error = message;
    return status;
}

template <typename F>
qw_status guarded(F &&f) {
    try {
        f();
        return QW_OK;
    } catch (const Error &e) {
        return fail(static_cast<qw_status>(e.kind()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(QW_ERR_CAPACITY, "out of memory");
    } catch (const std::exception &e) {
        return fail(QW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QW_ERR_INTERNAL, "unknown error");
    }
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

#define QW_REQUIRE(cond)                                                                   \
    do {                                                                                   \
        if (!(cond)) return fail(QW_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);    \
    } while (0)

}  // namespace

extern "C" {

const char *qw_version(void) { return "1.0.0"; }

const char *qw_status_name(qw_status status) {
    switch (status) {
        case QW_OK: return "ok";
        case QW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QW_ERR_DIMENSION: return "dimension error";
        case QW_ERR_CAPACITY: return "capacity error";
        case QW_ERR_PARSE: return "parse error";
        case QW_ERR_STATE_VALIDATION: return "state validation error";
        case QW_ERR_EFFECT_VALIDATION: return "effect validation error";
        case QW_ERR_INCONSISTENT_OUTCOME: return "inconsistent outcome";
        case QW_ERR_ISOTROPY: return "isotropy error";
        case QW_ERR_NEGATIVITY: return "negative Wigner function";
        case QW_ERR_MODEL_VALIDATION: return "model validation error";
        case QW_ERR_ASSIGNMENT: return "assignment error";
        case QW_ERR_IMPLEMENTATION: return "implementation validation error";
        case QW_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char *qw_last_error(void) { return last_error.c_str(); }

void qw_string_free(char *s) { std::free(s); }

qw_status qw_config_create(qw_config **out) {
    QW_REQUIRE(out);
    return guarded([&] { *out = new qw_config(); });
}

void qw_config_destroy(qw_config *config) { delete config; }

qw_status qw_config_set_eps(qw_config *config, double eps) {
    QW_REQUIRE(config && eps > 0.0);
    config->eps = eps;
    return QW_OK;
}

qw_status qw_config_set_state_tolerance(qw_config *config, double tol) {
    QW_REQUIRE(config && tol > 0.0);
    config->state_tolerance = tol;
    return QW_OK;
}

qw_status qw_config_set_size_cap(qw_config *config, size_t cap) {
    QW_REQUIRE(config && cap > 0);
    config->size_cap = cap;
    return QW_OK;
}

qw_status qw_config_set_seed(qw_config *config, uint64_t seed) {
    QW_REQUIRE(config);
    config->seed = seed;
    return QW_OK;
}

qw_status qw_config_set_contexts_per_state(qw_config *config, size_t count) {
    QW_REQUIRE(config);
    config->contexts_per_state = count;
    return QW_OK;
}

qw_status qw_state_create(int d, int n, const double *entries, size_t count, const qw_config *config,
                          qw_state **out) {
    QW_REQUIRE(entries && out);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        const Modulus mod(d, n);
        check_size_cap(mod, cfg.size_cap);
        const auto dim = mod.hilbert_dim();
        if (count != 2 * dim * dim) throw DimensionError("expected 2 * d^n * d^n doubles");
        DenseOperator rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim * dim; ++k)
            rho(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) =
                Complex(entries[2 * k], entries[2 * k + 1]);
        validate_density(mod, rho, cfg.state_tolerance);
        *out = new qw_state{mod, std::move(rho)};
    });
}

qw_status qw_state_parse_json(const char *text, const qw_config *config, qw_state **out) {
    QW_REQUIRE(text && out);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        auto file = parse_state_json(text, cfg.state_tolerance);
        check_size_cap(file.modulus, cfg.size_cap);
        *out = new qw_state{file.modulus, std::move(file.rho)};
    });
}

qw_status qw_state_dims(const qw_state *state, int *d, int *n) {
    QW_REQUIRE(state && d && n);
    *d = state->mod.d();
    *n = state->mod.n();
    return QW_OK;
}

void qw_state_destroy(qw_state *state) { delete state; }

qw_status qw_wigner_compute(const qw_state *state, const qw_config *config, qw_wigner **out) {
    QW_REQUIRE(state && out);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        *out = new qw_wigner{
            wigner_of_state(state->mod, state->rho, WignerMethod::Transform, cfg.state_tolerance, cfg.size_cap)};
    });
}

qw_status qw_wigner_values(const qw_wigner *w, const double **values, size_t *count) {
    QW_REQUIRE(w && values && count);
    *values = w->w.values().data();
    *count = w->w.values().size();
    return QW_OK;
}

qw_status qw_wigner_negativity(const qw_wigner *w, const qw_config *config, qw_negativity *out) {
    QW_REQUIRE(w && out);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        const auto r = negativity_report(w->w, cfg.eps);
        *out = qw_negativity{r.min_value, r.min_point.index(), r.negative_points.size(), r.sum_negativity, r.mana,
                             r.non_negative ? 1 : 0};
    });
}

qw_status qw_wigner_expectation(const qw_wigner *w, const int *point, size_t len, double *re, double *im) {
    QW_REQUIRE(w && point && re && im);
    return guarded([&] {
        const Modulus &mod = w->w.modulus();
        const auto n = static_cast<std::size_t>(mod.n());
        if (len != 2 * n) throw DimensionError("phase point needs 2n coordinates");
        std::vector<std::int64_t> z(point, point + n), x(point + n, point + 2 * n);
        const Complex e = expectation(PhasePoint(mod, z, x), w->w);
        *re = e.real();
        *im = e.imag();
    });
}

qw_status qw_wigner_to_json(const qw_wigner *w, const qw_config *config, char **json) {
    QW_REQUIRE(w && json);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        std::optional<NegativityReport> report;
        if (w->w.kind() == WignerKind::State) report = negativity_report(w->w, cfg.eps);
        *json = copy_string(wigner_to_json(w->w, report, cfg.seed));
    });
}

qw_status qw_wigner_witness_json(const qw_wigner *w, const qw_config *config, char **json) {
    QW_REQUIRE(w && json);
    const auto &cfg = config_or_default(config);
    return guarded([&] { *json = copy_string(witness_to_json(negativity_report(w->w, cfg.eps), cfg.seed)); });
}

void qw_wigner_destroy(qw_wigner *w) { delete w; }

qw_status qw_model_extract(const qw_wigner *w, const qw_config *config, qw_model **out) {
    QW_REQUIRE(w && out);
    const auto &cfg = config_or_default(config);
    return guarded([&] { *out = new qw_model{model_from_wigner(w->w, cfg.eps)}; });
}

qw_status qw_model_size(const qw_model *model, size_t *count) {
    QW_REQUIRE(model && count);
    *count = model->model.states().size();
    return QW_OK;
}

qw_status qw_model_state(const qw_model *model, size_t index, int *point, size_t len, double *probability) {
    QW_REQUIRE(model && point && probability);
    return guarded([&] {
        if (index >= model->model.states().size()) throw InvalidArgumentError("model state index out of range");
        const auto &cp = model->model.states()[index].character_point();
        if (!cp) throw AssignmentError("model state is not a character");
        if (len != cp->coords().size()) throw DimensionError("phase point needs 2n coordinates");
        std::copy(cp->coords().begin(), cp->coords().end(), point);
        *probability = model->model.distribution()[index];
    });
}

qw_status qw_model_certificate_json(const qw_model *model, const qw_state *bound_state, const qw_config *config,
                                    char **json) {
    QW_REQUIRE(model && bound_state && json);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        if (!(bound_state->mod == model->model.modulus())) throw DimensionError("state and model dimensions differ");
        *json = copy_string(certificate_to_json(model->model, bound_state->rho, cfg.eps, cfg.seed));
    });
}

qw_status qw_model_to_wigner(const qw_model *model, qw_wigner **out) {
    QW_REQUIRE(model && out);
    return guarded([&] { *out = new qw_wigner{wigner_from_model(model->model)}; });
}

void qw_model_destroy(qw_model *model) { delete model; }

qw_status qw_check_equivalence(int d, int n, size_t trials, const qw_config *config, qw_equivalence_summary *out) {
    QW_REQUIRE(out && trials > 0);
    const auto &cfg = config_or_default(config);
    return guarded([&] {
        const Modulus mod(d, n);
        if (n < 2) throw InvalidArgumentError("the equivalence sweep needs n >= 2");
        check_size_cap(mod, cfg.size_cap);
        EquivalenceOptions options;
        options.eps = cfg.eps;
        options.contexts_per_state = cfg.contexts_per_state;
        options.size_cap = cfg.size_cap;
        const auto s = check_equivalence(mod, trials, cfg.seed, options);
        *out = qw_equivalence_summary{s.trials,   s.passed, s.non_negative, s.negative, s.max_expectation_defect,
                                      s.max_prediction_defect};
        if (!s.failures.empty()) last_error = s.failures.front();
    });
}

qw_status qw_symplectic_transform(int d, int n, const double *input, double *output, size_t count,
                                  qw_transform_direction direction, qw_transform_method method) {
    QW_REQUIRE(input && output);
    return guarded([&] {
        const Modulus mod(d, n);
        if (count != 2 * mod.num_points()) throw DimensionError("expected 2 * d^(2n) doubles");
        std::vector<Complex> f(mod.num_points());
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = Complex(input[2 * k], input[2 * k + 1]);
        const auto dir = direction == QW_TRANSFORM_INVERSE ? TransformDirection::Inverse : TransformDirection::Forward;
        const auto g = method == QW_TRANSFORM_NAIVE ? symplectic_transform_naive(mod, f, dir)
                                                    : symplectic_transform(mod, f, dir);
        for (std::size_t k = 0; k < g.size(); ++k) {
            output[2 * k] = g[k].real();
            output[2 * k + 1] = g[k].imag();
        }
    });
}

}  // extern "C"
