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

#include "combsim/error.hpp"

namespace combsim {

const char *error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::EmptyAvail: return "EmptyAvail";
    case ErrorKind::EmptyDelta: return "EmptyDelta";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::ReservedId: return "ReservedId";
    case ErrorKind::EmptyAvailInComposite: return "EmptyAvailInComposite";
    case ErrorKind::NotStrictlyAlternating: return "NotStrictlyAlternating";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::RoleMismatch: return "RoleMismatch";
    case ErrorKind::MismatchedCarriers: return "MismatchedCarriers";
    case ErrorKind::UnknownAtom: return "UnknownAtom";
    case ErrorKind::WrongQuantifierFamily: return "WrongQuantifierFamily";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotDistinguishable: return "NotDistinguishable";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::NoCounterexample: return "NoCounterexample";
    case ErrorKind::MalformedDag: return "MalformedDag";
    case ErrorKind::NotRefinable: return "NotRefinable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::FormulaSyntax: return "FormulaSyntax";
    }
    return "Error";
}

}
