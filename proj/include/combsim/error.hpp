/*
 * Copyright 2026 The combsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef COMBSIM_ERROR_HPP
#define COMBSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace combsim {

enum class ErrorKind {
    EmptyAvail,
    EmptyDelta,
    DanglingReference,
    DuplicateId,
    ReservedId,
    EmptyAvailInComposite,
    NotStrictlyAlternating,
    NotAlternating,
    InvalidDistribution,
    RoleMismatch,
    MismatchedCarriers,
    UnknownAtom,
    WrongQuantifierFamily,
    PreconditionViolated,
    NotDistinguishable,
    InvalidPartition,
    NoCounterexample,
    MalformedDag,
    NotRefinable,
    SyntaxError,
    SchemaError,
    FormulaSyntax,
};

const char *error_kind_name(ErrorKind k);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) { }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/**
 * Parse failure with a 1-based source position.
 */
class SyntaxError : public Error
{
public:
    SyntaxError(size_t line, size_t col, const std::string &detail)
        : Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + detail),
          line(line), col(col) { }

    size_t line;
    size_t col;
};

class SchemaError : public Error
{
public:
    SchemaError(const std::string &field, const std::string &detail)
        : Error(ErrorKind::SchemaError, field + ": " + detail), field(field) { }

    std::string field;
};

}

#endif
