// SPDX-License-Identifier: Apache-2.0
//
// wsms - terahertz widely-spaced multi-subarray link simulation
// Copyright (C) 2026 The wsms authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WSMS_ERRORS_HPP
#define WSMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wsms
{
    // Invalid scenario, layout or argument (domain precondition violated).
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Degenerate numerics: rank deficiency, singular noise covariance, non-finite input.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed command-line input such as a sweep axis or architecture list.
    class UsageError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Configuration file could not be parsed or holds invalid values.
    // line() is 1-based, 0 when no source position is known.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &message, int line = 0)
            : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
              line_(line) {}

        int line() const noexcept { return line_; }

    private:
        int line_;
    };
}

#endif
