// Copyright 2026 The locc Authors
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

namespace locc {

enum class ErrorKind {
    ConstraintViolation,
    WrongArity,
    DegenerateState,
    LabelCollision,
    EmptySubset,
    NotAProbabilityVector,
    RegisterMismatch,
    SiteOwnership,
    NotUnitary,
    NotAnEprResource,
    MalformedProtocol,
    ParameterOutOfRange,
    CapExceeded,
    ParseError,
    SemanticError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::WrongArity: return "WrongArity";
        case ErrorKind::DegenerateState: return "DegenerateState";
        case ErrorKind::LabelCollision: return "LabelCollision";
        case ErrorKind::EmptySubset: return "EmptySubset";
        case ErrorKind::NotAProbabilityVector: return "NotAProbabilityVector";
        case ErrorKind::RegisterMismatch: return "RegisterMismatch";
        case ErrorKind::SiteOwnership: return "SiteOwnership";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotAnEprResource: return "NotAnEprResource";
        case ErrorKind::MalformedProtocol: return "MalformedProtocol";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SemanticError: return "SemanticError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The kind is stable and meant for
/// programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures additionally carry a 1-based source position.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, int line, int column, const std::string& message)
        : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace locc
