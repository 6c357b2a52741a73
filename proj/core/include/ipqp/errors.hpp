// Copyright 2026 The ipqp Authors
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

#ifndef IPQP_ERRORS_HPP
#define IPQP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ipqp
{

/// Malformed caller input: inconsistent dimensions, NaN data, out-of-range
/// parameters.
class InvalidInput : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A floating-point evaluation left the representable range.
class OverflowError : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// Generic numerical failure inside a solver kernel (NaN produced mid-iteration,
/// non-SPD preconditioner, ...).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Inertia
{
    int positive = 0;
    int negative = 0;
    int zero = 0;

    int total() const { return positive + negative + zero; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

class SingularMatrix : public NumericalError
{
public:
    SingularMatrix(const std::string& what, Inertia inertia) : NumericalError(what), inertia_(inertia) {}
    const Inertia& inertia() const { return inertia_; }

private:
    Inertia inertia_;
};

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& message, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

} // namespace ipqp

#endif // IPQP_ERRORS_HPP
