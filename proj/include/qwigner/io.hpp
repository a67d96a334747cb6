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

// JSON file formats. Writers emit a fixed key order and 17 significant
// digits for every float so reruns are byte-identical.
//
//   state:       { "d", "n", "matrix": [[re, im], ...] }   row-major, d^n x d^n
//   wigner:      { "d", "n", "kind", "seed", "values": [...], "negativity": {...} }
//   certificate: { "d", "n", "seed", "states": [{ "character_point", "probability" }],
//                  "bound_state_hash" }
//   witness:     { "d", "n", "seed", "contextual": true, "witness": { "point", "value" }, ... }

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qwigner/hvm.hpp"
#include "qwigner/wigner.hpp"

namespace qwigner {

struct StateFile {
    Modulus modulus;
    DenseOperator rho;
};

/// Throws ParseError for malformed JSON or schema violations and
/// StateValidationError when the matrix is not a density operator.
StateFile parse_state_json(std::string_view text, double tol = kStateTolerance);

std::string state_to_json(const Modulus &mod, const DenseOperator &rho);

/// printf %.17g; non-finite values become null.
std::string format_number(double x);

std::string wigner_to_json(const WignerFunction &w, const std::optional<NegativityReport> &report,
                           std::uint64_t seed = 0);

/// Reads the "d", "n", "kind" and "values" fields written by wigner_to_json.
WignerFunction parse_wigner_json(std::string_view text);

/// Lists the states with probability above support_eps.
std::string certificate_to_json(const ValueAssignmentModel &model, const DenseOperator &bound_state,
                                double support_eps = kNegativityEps, std::uint64_t seed = 0);

std::string witness_to_json(const NegativityReport &report, std::uint64_t seed = 0);

/// FNV-1a over d, n and the 17-digit rendering of every entry, as 16 hex digits.
std::string state_hash(const Modulus &mod, const DenseOperator &rho);

}  // namespace qwigner
