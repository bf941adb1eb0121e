// SPDX-License-Identifier: Apache-2.0
//
// his-sim: simulator for holographic interference surfaces
// Copyright (C) 2026 The his-sim authors
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

#ifndef HIS_ERRORS_HPP
#define HIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace his
{
    // Argument outside the domain of an operation (negative frequency, |angle| > 90 deg, ...)
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Two per-unit quantities disagree in length or shape
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // PSI recovery divides by the conjugate reference field, which is zero somewhere
    class SingularReferenceError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The three-term reconstruction split is only defined for constant-amplitude object waves
    class DecompositionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Spectrum of an all-zero field
    class DegenerateInputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Invalid experiment configuration; carries the dotted path of the offending field
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field_path, const std::string &message)
            : std::runtime_error(field_path + ": " + message), path_(std::move(field_path)) {}

        const std::string &field_path() const noexcept { return path_; }

    private:
        std::string path_;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
