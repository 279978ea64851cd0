// Copyright 2026 The apievo Authors
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

#include "apievo/error.hpp"

#include <algorithm>
#include <utility>

namespace apievo {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kDuplicateInternalName: return "DuplicateInternalName";
    case ErrorCode::kUnknownTypeReference: return "UnknownTypeReference";
    case ErrorCode::kCyclicInheritance: return "CyclicInheritance";
    case ErrorCode::kInvalidBound: return "InvalidBound";
    case ErrorCode::kInvalidTypeUsage: return "InvalidTypeUsage";
    case ErrorCode::kInvalidReplacesClause: return "InvalidReplacesClause";
    case ErrorCode::kMultipleSuccessors: return "MultipleSuccessors";
    case ErrorCode::kUnknownPredecessor: return "UnknownPredecessor";
    case ErrorCode::kIncompatiblePullUpTypes: return "IncompatiblePullUpTypes";
    case ErrorCode::kAmbiguousReplacement: return "AmbiguousReplacement";
    case ErrorCode::kChangedSupertype: return "ChangedSupertype";
    case ErrorCode::kApiNameMismatch: return "ApiNameMismatch";
    case ErrorCode::kUnknownRevision: return "UnknownRevision";
    case ErrorCode::kEmptyUnion: return "EmptyUnion";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kUnsupportedRevision: return "UnsupportedRevision";
    case ErrorCode::kMissingMandatoryElement: return "MissingMandatoryElement";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kReplacesInClient: return "ReplacesInClient";
    case ErrorCode::kBoundViolation: return "BoundViolation";
    case ErrorCode::kMissingMandatoryField: return "MissingMandatoryField";
    case ErrorCode::kUnknownEnumMember: return "UnknownEnumMember";
    case ErrorCode::kUnknownUnionMember: return "UnknownUnionMember";
    case ErrorCode::kValueKindMismatch: return "ValueKindMismatch";
    case ErrorCode::kMalformedNumeric: return "MalformedNumeric";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kMalformedVarint: return "MalformedVarint";
    case ErrorCode::kInvalidUnionTag: return "InvalidUnionTag";
    case ErrorCode::kInvalidEnumOrdinal: return "InvalidEnumOrdinal";
    case ErrorCode::kInvalidPresenceByte: return "InvalidPresenceByte";
    case ErrorCode::kTrailingBytes: return "TrailingBytes";
    case ErrorCode::kUnrepresentableValue: return "UnrepresentableValue";
    case ErrorCode::kConcurrentPublish: return "ConcurrentPublish";
    case ErrorCode::kClientsStillReferencing: return "ClientsStillReferencing";
    case ErrorCode::kUnknownApi: return "UnknownApi";
    case ErrorCode::kUnknownClient: return "UnknownClient";
    case ErrorCode::kStoreCorrupt: return "StoreCorrupt";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string Diagnostic::ToString() const {
  std::string out = severity == Severity::kError ? "error" : "warning";
  out += ": ";
  out += ErrorCodeName(code);
  if (!path.empty()) {
    out += " at ";
    out += path;
  }
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

namespace {

std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "unknown error";
  std::string out = diagnostics.front().ToString();
  if (diagnostics.size() > 1) {
    out += " (and " + std::to_string(diagnostics.size() - 1) + " more)";
  }
  return out;
}

std::vector<Diagnostic> NonEmpty(std::vector<Diagnostic> diagnostics) {
  if (diagnostics.empty()) {
    diagnostics.push_back({Severity::kError, ErrorCode::kSyntaxError, "",
                           "unknown error"});
  }
  return diagnostics;
}

}  // namespace

Error::Error(ErrorCode code, std::string path, std::string message)
    : Error(std::vector<Diagnostic>{
          {Severity::kError, code, std::move(path), std::move(message)}}) {}

Error::Error(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(Summarize(diagnostics)),
      diagnostics_(NonEmpty(std::move(diagnostics))) {}

bool Error::Has(ErrorCode code) const {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

namespace {

std::string SyntaxMessage(SourceLocation location,
                          const std::vector<std::string>& expected,
                          const std::string& found) {
  std::string out = "line " + std::to_string(location.line) + ", column " +
                    std::to_string(location.column) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  out += " but found " + found;
  return out;
}

}  // namespace

SyntaxError::SyntaxError(SourceLocation location,
                         std::vector<std::string> expected, std::string found)
    : Error(ErrorCode::kSyntaxError,
            std::to_string(location.line) + ":" +
                std::to_string(location.column),
            SyntaxMessage(location, expected, found)),
      location_(location),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

}  // namespace apievo
