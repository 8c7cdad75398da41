// Copyright 2026 The ghzdeco Authors
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

#include "ghzdeco/error.hpp"

namespace ghzdeco {

std::string_view category_name(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Parse:
            return "parse";
        case ErrorCategory::Validation:
            return "validation";
        case ErrorCategory::NoChain:
            return "no_chain";
        case ErrorCategory::Numerical:
            return "numerical";
        case ErrorCategory::Fit:
            return "fit";
        case ErrorCategory::Io:
            return "io";
    }
    return "unknown";
}

int exit_code(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Parse:
            return 3;
        case ErrorCategory::Validation:
            return 4;
        case ErrorCategory::NoChain:
            return 5;
        case ErrorCategory::Numerical:
            return 6;
        case ErrorCategory::Fit:
            return 7;
        case ErrorCategory::Io:
            return 8;
    }
    return 1;
}

}  // namespace ghzdeco
