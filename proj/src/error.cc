// Copyright 2026 The Hyperbell Authors
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

#include "hyperbell/error.h"

namespace hyperbell {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::NonCPTP:
            return "NonCPTP";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::DecompositionFailed:
            return "DecompositionFailed";
        case ErrorCode::Leakage:
            return "Leakage";
        case ErrorCode::EmptyHistogram:
            return "EmptyHistogram";
        case ErrorCode::MalformedDocument:
            return "MalformedDocument";
        case ErrorCode::UnknownKey:
            return "UnknownKey";
        case ErrorCode::OutOfRangeValue:
            return "OutOfRangeValue";
    }
    return "Unknown";
}

SimError::SimError(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

}  // namespace hyperbell
