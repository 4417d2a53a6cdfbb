// Copyright 2026 The twinscf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWINSCF_ERRORS_H
#define TWINSCF_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twinscf {

/// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &msg, size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    size_t line() const { return line_; }

   private:
    size_t line_;
};

/// A search gave up after exhausting its work budget.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A numeric or algebraic self-check failed.
class VerificationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace twinscf

#endif
