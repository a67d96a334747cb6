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

#include "qwigner/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qwigner {

namespace {

using nlohmann::json;

std::string point_array(const PhasePoint &p) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.coords().size(); ++k) {
        if (k) s += ", ";
        s += std::to_string(p.coords()[k]);
    }
    return s + "]";
}

std::string header(const Modulus &mod) {
    return "  \"d\": " + std::to_string(mod.d()) + ",\n  \"n\": " + std::to_string(mod.n()) + ",\n";
}

const json &require(const json &doc, const char *key) {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return doc.at(key);
}

Modulus parse_modulus(const json &doc) {
    const auto &d = require(doc, "d");
    const auto &n = require(doc, "n");
    if (!d.is_number_integer() || !n.is_number_integer()) throw ParseError("\"d\" and \"n\" must be integers");
    try {
        return Modulus(d.get<int>(), n.get<int>());
    } catch (const Error &e) {
        throw ParseError(e.what());
    }
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

StateFile parse_state_json(std::string_view text, double tol) {
    const json doc = parse_document(text);
    const Modulus mod = parse_modulus(doc);
    const auto &m = require(doc, "matrix");
    const auto dim = mod.hilbert_dim();
    if (dim > kDefaultSizeCap * kDefaultSizeCap) throw ParseError("state dimension is too large");
    if (!m.is_array() || m.size() != dim * dim)
        throw ParseError("\"matrix\" must hold d^n * d^n = " + std::to_string(dim * dim) + " entries");
    DenseOperator rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < m.size(); ++k) {
        const auto &e = m[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError("matrix entry " + std::to_string(k) + " is not a [real, imag] pair");
        rho(static_cast<Eigen::Index>(k / dim), static_cast<Eigen::Index>(k % dim)) =
            Complex(e[0].get<double>(), e[1].get<double>());
    }
    validate_density(mod, rho, tol);
    return {mod, std::move(rho)};
}

std::string state_to_json(const Modulus &mod, const DenseOperator &rho) {
    std::string s = "{\n" + header(mod) + "  \"matrix\": [";
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.cols(); ++c) {
            if (r || c) s += ", ";
            s += "[" + format_number(rho(r, c).real()) + ", " + format_number(rho(r, c).imag()) + "]";
        }
    return s + "]\n}\n";
}

std::string wigner_to_json(const WignerFunction &w, const std::optional<NegativityReport> &report,
                           std::uint64_t seed) {
    std::string s = "{\n" + header(w.modulus());
    s += std::string("  \"kind\": \"") + (w.kind() == WignerKind::State ? "state" : "effect") + "\",\n";
    s += "  \"seed\": " + std::to_string(seed) + ",\n";
    s += "  \"values\": [";
    for (std::size_t k = 0; k < w.values().size(); ++k) {
        if (k) s += ", ";
        s += format_number(w.values()[k]);
    }
    s += "]";
    if (report) {
        s += ",\n  \"negativity\": {\n";
        s += "    \"min_value\": " + format_number(report->min_value) + ",\n";
        s += "    \"min_point\": " + point_array(report->min_point) + ",\n";
        s += "    \"negative_points\": [";
        for (std::size_t k = 0; k < report->negative_points.size(); ++k) {
            if (k) s += ", ";
            s += point_array(report->negative_points[k]);
        }
        s += "],\n";
        s += "    \"sum_negativity\": " + format_number(report->sum_negativity) + ",\n";
        s += "    \"mana\": " + format_number(report->mana) + ",\n";
        s += "    \"mana_log_base\": \"e\",\n";
        s += std::string("    \"non_negative\": ") + (report->non_negative ? "true" : "false") + "\n  }";
    }
    return s + "\n}\n";
}

WignerFunction parse_wigner_json(std::string_view text) {
    const json doc = parse_document(text);
    const Modulus mod = parse_modulus(doc);
    const auto &kind = require(doc, "kind");
    if (!kind.is_string() || (kind != "state" && kind != "effect")) throw ParseError("\"kind\" must be state or effect");
    const auto &values = require(doc, "values");
    if (!values.is_array() || values.size() != mod.num_points())
        throw ParseError("\"values\" must hold d^(2n) numbers");
    std::vector<double> v;
    v.reserve(values.size());
    for (const auto &x : values) {
        if (!x.is_number()) throw ParseError("Wigner values must be numbers");
        v.push_back(x.get<double>());
    }
    return WignerFunction(mod, std::move(v), kind == "state" ? WignerKind::State : WignerKind::Effect);
}

std::string certificate_to_json(const ValueAssignmentModel &model, const DenseOperator &bound_state,
                                double support_eps, std::uint64_t seed) {
    const Modulus &mod = model.modulus();
    std::string s = "{\n" + header(mod);
    s += "  \"seed\": " + std::to_string(seed) + ",\n";
    s += "  \"states\": [";
    bool first = true;
    for (std::size_t k = 0; k < model.states().size(); ++k) {
        const double q = model.distribution()[k];
        if (q <= support_eps) continue;
        const auto &point = model.states()[k].character_point();
        if (!point) throw AssignmentError("certificates can only list character states");
        s += first ? "\n" : ",\n";
        first = false;
        s += "    {\"character_point\": " + point_array(*point) + ", \"probability\": " + format_number(q) + "}";
    }
    s += first ? "],\n" : "\n  ],\n";
    s += "  \"bound_state_hash\": \"" + state_hash(mod, bound_state) + "\"\n}\n";
    return s;
}

std::string witness_to_json(const NegativityReport &report, std::uint64_t seed) {
    const Modulus &mod = report.min_point.modulus();
    std::string s = "{\n" + header(mod);
    s += "  \"seed\": " + std::to_string(seed) + ",\n";
    s += "  \"contextual\": true,\n";
    s += "  \"witness\": {\"point\": " + point_array(report.min_point) +
         ", \"value\": " + format_number(report.min_value) + "},\n";
    s += "  \"negative_point_count\": " + std::to_string(report.negative_points.size()) + ",\n";
    s += "  \"sum_negativity\": " + format_number(report.sum_negativity) + ",\n";
    s += "  \"mana\": " + format_number(report.mana) + "\n}\n";
    return s;
}

std::string state_hash(const Modulus &mod, const DenseOperator &rho) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    feed(std::to_string(mod.d()) + "," + std::to_string(mod.n()) + ";");
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
        for (Eigen::Index c = 0; c < rho.cols(); ++c)
            feed(format_number(rho(r, c).real()) + "," + format_number(rho(r, c).imag()) + ";");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qwigner
