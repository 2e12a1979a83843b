// Copyright 2026 The ctxinc Authors
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
#include <string_view>

namespace ctxinc {

enum class ErrorCode {
    invalid_dims,
    dimension_mismatch,
    not_hermitian,
    not_psd,
    invalid_dimension,
    invalid_state,
    invalid_rank,
    invalid_ensemble,
    invalid_observable,
    invalid_labels,
    label_mismatch,
    requires_sharp,
    unsupported_pointer,
    invalid_model,
    invalid_map,
    invalid_instrument,
    invalid_context,
    invalid_parameter,
    parse_error,
    invalid_scenario,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_dims: return "invalid-dims";
        case ErrorCode::dimension_mismatch: return "dimension-mismatch";
        case ErrorCode::not_hermitian: return "not-hermitian";
        case ErrorCode::not_psd: return "not-psd";
        case ErrorCode::invalid_dimension: return "invalid-dimension";
        case ErrorCode::invalid_state: return "invalid-state";
        case ErrorCode::invalid_rank: return "invalid-rank";
        case ErrorCode::invalid_ensemble: return "invalid-ensemble";
        case ErrorCode::invalid_observable: return "invalid-observable";
        case ErrorCode::invalid_labels: return "invalid-labels";
        case ErrorCode::label_mismatch: return "label-error";
        case ErrorCode::requires_sharp: return "requires-sharp";
        case ErrorCode::unsupported_pointer: return "unsupported-pointer";
        case ErrorCode::invalid_model: return "invalid-model";
        case ErrorCode::invalid_map: return "invalid-map";
        case ErrorCode::invalid_instrument: return "invalid-instrument";
        case ErrorCode::invalid_context: return "invalid-context";
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::invalid_scenario: return "invalid-scenario";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace ctxinc
