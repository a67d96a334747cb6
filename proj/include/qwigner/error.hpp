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

#include <stdexcept>
#include <string>

namespace qwigner {

/// Failure categories. The numeric values are shared with the C API status
/// codes (see qwigner.h), so they must not be renumbered.
enum class ErrorKind : int {
    InvalidArgument = 1,
    Dimension = 2,
    Capacity = 3,
    Parse = 4,
    StateValidation = 5,
    EffectValidation = 6,
    InconsistentOutcome = 7,
    Isotropy = 8,
    Negativity = 9,
    ModelValidation = 10,
    Assignment = 11,
    Implementation = 12,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

#define QWIGNER_DEFINE_ERROR(Name, Kind)                                              \
    class Name : public Error {                                                       \
       public:                                                                        \
        explicit Name(const std::string &what) : Error(ErrorKind::Kind, what) {}      \
    };

QWIGNER_DEFINE_ERROR(InvalidArgumentError, InvalidArgument)
QWIGNER_DEFINE_ERROR(DimensionError, Dimension)
QWIGNER_DEFINE_ERROR(CapacityError, Capacity)
QWIGNER_DEFINE_ERROR(ParseError, Parse)
QWIGNER_DEFINE_ERROR(StateValidationError, StateValidation)
QWIGNER_DEFINE_ERROR(EffectValidationError, EffectValidation)
QWIGNER_DEFINE_ERROR(InconsistentOutcomeError, InconsistentOutcome)
QWIGNER_DEFINE_ERROR(IsotropyError, Isotropy)
QWIGNER_DEFINE_ERROR(ModelValidationError, ModelValidation)
QWIGNER_DEFINE_ERROR(AssignmentError, Assignment)
QWIGNER_DEFINE_ERROR(ImplementationError, Implementation)

#undef QWIGNER_DEFINE_ERROR

}  // namespace qwigner
