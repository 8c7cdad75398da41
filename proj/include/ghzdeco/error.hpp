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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghzdeco {

/// Broad failure classes. The command-line tool maps each to a distinct exit code.
enum class ErrorCategory {
    Parse,       // malformed input text (graph, QASM, CSV, config)
    Validation,  // well-formed input violating a domain invariant
    NoChain,     // no qubit chain of the requested length exists
    Numerical,   // state or fit left the physical / numerically sound region
    Fit,         // a fit could not be performed or did not converge
    Io,          // filesystem failures
};

std::string_view category_name(ErrorCategory category);

/// Exit code used by the command-line tool for a category (always nonzero).
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string &message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

  private:
    ErrorCategory category_;
};

}  // namespace ghzdeco
