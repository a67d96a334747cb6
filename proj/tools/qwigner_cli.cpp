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

// qwigner command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 failed consistency check, 2 usage or parse error,
// 3 invalid state, 4 contextuality witness, 5 capacity.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwigner/qwigner.h"

namespace {

enum Exit : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitState = 3,
    kExitWitness = 4,
    kExitCapacity = 5,
};

int exit_code(qw_status status) {
    switch (status) {
        case QW_OK: return kExitOk;
        case QW_ERR_INVALID_ARGUMENT:
        case QW_ERR_DIMENSION:
        case QW_ERR_PARSE: return kExitUsage;
        case QW_ERR_STATE_VALIDATION: return kExitState;
        case QW_ERR_NEGATIVITY: return kExitWitness;
        case QW_ERR_CAPACITY: return kExitCapacity;
        default: return kExitCheckFailed;
    }
}

// Thrown inside a command to end it with a given exit code.
struct CommandExit {
    int code;
};

void check(qw_status status, const char *what) {
    if (status == QW_OK) return;
    std::cerr << "qwigner: " << what << ": " << qw_status_name(status) << ": " << qw_last_error() << "\n";
    throw CommandExit{exit_code(status)};
}

template <typename T, void (*Destroy)(T *)>
struct Deleter {
    void operator()(T *p) const { Destroy(p); }
};
using Config = std::unique_ptr<qw_config, Deleter<qw_config, qw_config_destroy>>;
using State = std::unique_ptr<qw_state, Deleter<qw_state, qw_state_destroy>>;
using Wigner = std::unique_ptr<qw_wigner, Deleter<qw_wigner, qw_wigner_destroy>>;
using Model = std::unique_ptr<qw_model, Deleter<qw_model, qw_model_destroy>>;
using String = std::unique_ptr<char, Deleter<char, qw_string_free>>;

struct Options {
    std::string state_path;
    std::string out_path;
    int d = 3;
    int n = 2;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<double> eps;
    std::optional<std::size_t> size_cap;
    std::size_t repetitions = 5;
};

Config make_config(const Options &opt) {
    qw_config *raw = nullptr;
    check(qw_config_create(&raw), "config");
    Config config(raw);
    check(qw_config_set_seed(raw, opt.seed), "--seed");
    if (opt.eps) check(qw_config_set_eps(raw, *opt.eps), "--eps");
    if (opt.size_cap) check(qw_config_set_size_cap(raw, *opt.size_cap), "--size-cap");
    return config;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "qwigner: cannot read " << path << "\n";
        throw CommandExit{kExitUsage};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Options &opt, const std::string &text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "qwigner: cannot write " << opt.out_path << "\n";
        throw CommandExit{kExitUsage};
    }
}

State load_state(const Options &opt, const qw_config *config) {
    const std::string text = read_file(opt.state_path);
    qw_state *raw = nullptr;
    check(qw_state_parse_json(text.c_str(), config, &raw), opt.state_path.c_str());
    return State(raw);
}

Wigner compute_wigner(const qw_state *state, const qw_config *config) {
    qw_wigner *raw = nullptr;
    check(qw_wigner_compute(state, config, &raw), "wigner");
    return Wigner(raw);
}

int cmd_wigner(const Options &opt) {
    const Config config = make_config(opt);
    const State state = load_state(opt, config.get());
    const Wigner w = compute_wigner(state.get(), config.get());
    char *json = nullptr;
    check(qw_wigner_to_json(w.get(), config.get(), &json), "wigner");
    emit(opt, String(json).get());
    return kExitOk;
}

int cmd_hvm_extract(const Options &opt) {
    const Config config = make_config(opt);
    const State state = load_state(opt, config.get());
    const Wigner w = compute_wigner(state.get(), config.get());
    qw_model *raw = nullptr;
    const qw_status status = qw_model_extract(w.get(), config.get(), &raw);
    char *json = nullptr;
    if (status == QW_ERR_NEGATIVITY) {
        check(qw_wigner_witness_json(w.get(), config.get(), &json), "witness");
        emit(opt, String(json).get());
        std::cerr << "qwigner: negative Wigner function; no non-contextual value-assignment model exists\n";
        return kExitWitness;
    }
    check(status, "hvm-extract");
    const Model model(raw);
    check(qw_model_certificate_json(model.get(), state.get(), config.get(), &json), "certificate");
    emit(opt, String(json).get());
    return kExitOk;
}

int cmd_check_equivalence(const Options &opt) {
    const Config config = make_config(opt);
    qw_equivalence_summary s{};
    check(qw_check_equivalence(opt.d, opt.n, opt.trials, config.get(), &s), "check-equivalence");
    std::ostringstream out;
    out << "d=" << opt.d << " n=" << opt.n << " seed=" << opt.seed << "\n"
        << "trials " << s.trials << "\n"
        << "passed " << s.passed << "\n"
        << "failed " << (s.trials - s.passed) << "\n"
        << "non_negative " << s.non_negative << "\n"
        << "negative " << s.negative << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", s.max_expectation_defect);
    out << "max_expectation_defect " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.3e", s.max_prediction_defect);
    out << "max_prediction_defect " << buf << "\n";
    emit(opt, out.str());
    if (s.passed != s.trials) {
        std::cerr << "qwigner: first failure: " << qw_last_error() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_bench_transform(const Options &opt) {
    if (opt.n < 1 || opt.d < 3 || opt.d % 2 == 0) {
        std::cerr << "qwigner: d must be odd and >= 3, n >= 1\n";
        return kExitUsage;
    }
    double dim = 1.0;
    for (int i = 0; i < opt.n; ++i) dim *= opt.d;
    const double cap = static_cast<double>(opt.size_cap.value_or(4096));
    if (dim > cap) {
        std::cerr << "qwigner: d^n = " << dim << " exceeds the size cap " << cap << "\n";
        return kExitCapacity;
    }
    const auto points = static_cast<std::size_t>(dim * dim);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;
    std::vector<double> input(2 * points), fast(2 * points), naive(2 * points);
    for (auto &x : input) x = normal(rng);

    using Clock = std::chrono::steady_clock;
    auto time = [&](qw_transform_method method, std::vector<double> &output) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < opt.repetitions; ++r) {
            const auto start = Clock::now();
            check(qw_symplectic_transform(opt.d, opt.n, input.data(), output.data(), input.size(),
                                          QW_TRANSFORM_FORWARD, method),
                  "bench-transform");
            best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
        }
        return best;
    };
    const double t_naive = time(QW_TRANSFORM_NAIVE, naive);
    const double t_fast = time(QW_TRANSFORM_FACTORIZED, fast);
    double deviation = 0.0;
    for (std::size_t k = 0; k < points; ++k)
        deviation = std::max(deviation, std::hypot(fast[2 * k] - naive[2 * k], fast[2 * k + 1] - naive[2 * k + 1]));

    char line[256];
    std::snprintf(line, sizeof line, "%d,%d,%zu,%zu,%llu,%.6e,%.6e,%.2f,%.3e\n", opt.d, opt.n, points,
                  opt.repetitions, static_cast<unsigned long long>(opt.seed), t_naive, t_fast, t_naive / t_fast,
                  deviation);
    emit(opt, std::string("d,n,points,repetitions,seed,naive_seconds,factorized_seconds,speedup,max_abs_deviation\n") +
                  line);
    return deviation < 1e-12 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Discrete Wigner functions and non-contextual value-assignment models for odd-dimensional qudits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qw_version()));

    Options opt;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", opt.seed, "Random seed, recorded in every output");
        cmd->add_option("--eps", opt.eps, "Negativity threshold")->check(CLI::PositiveNumber);
        cmd->add_option("--size-cap", opt.size_cap, "Largest d^n materialized as a dense matrix")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", opt.out_path, "Output file (default: standard output)");
    };

    auto *wigner = app.add_subcommand("wigner", "Wigner function and negativity report of a state");
    wigner->add_option("--state", opt.state_path, "State JSON file")->required();
    add_common(wigner);

    auto *extract = app.add_subcommand("hvm-extract", "Value-assignment certificate, or a contextuality witness");
    extract->add_option("--state", opt.state_path, "State JSON file")->required();
    add_common(extract);

    auto *equiv = app.add_subcommand("check-equivalence", "Random-state sweep of W >= 0 versus NC value assignments");
    equiv->add_option("--d", opt.d, "Local dimension (odd, >= 3)")->required();
    equiv->add_option("--n", opt.n, "Number of qudits (>= 2)")->required();
    equiv->add_option("--trials", opt.trials, "Number of random states")
        ->required()
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    add_common(equiv);

    auto *bench = app.add_subcommand("bench-transform", "Time the naive and factorized symplectic transforms");
    bench->add_option("--d", opt.d, "Local dimension (odd, >= 3)")->required();
    bench->add_option("--n", opt.n, "Number of qudits")->required();
    bench->add_option("--repetitions", opt.repetitions, "Timed runs per path; the best is reported")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*wigner) return cmd_wigner(opt);
        if (*extract) return cmd_hvm_extract(opt);
        if (*equiv) return cmd_check_equivalence(opt);
        return cmd_bench_transform(opt);
    } catch (const CommandExit &e) {
        return e.code;
    }
}
