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

#ifndef APIEVO_ERROR_HPP_
#define APIEVO_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apievo {

/// Every failure the library reports carries one of these codes.
enum class ErrorCode : std::uint8_t {
  // Definition language.
  kSyntaxError,
  kDuplicateName,
  kDuplicateInternalName,
  kUnknownTypeReference,
  kCyclicInheritance,
  kInvalidBound,
  kInvalidTypeUsage,
  kInvalidReplacesClause,
  // Revision relations.
  kMultipleSuccessors,
  kUnknownPredecessor,
  kIncompatiblePullUpTypes,
  kAmbiguousReplacement,
  kChangedSupertype,
  kApiNameMismatch,
  kUnknownRevision,
  // Schemas and resolution.
  kEmptyUnion,
  kUnknownElement,
  kUnsupportedRevision,
  kMissingMandatoryElement,
  kTypeMismatch,
  kReplacesInClient,
  // Values and wire format.
  kBoundViolation,
  kMissingMandatoryField,
  kUnknownEnumMember,
  kUnknownUnionMember,
  kValueKindMismatch,
  kMalformedNumeric,
  kTruncated,
  kMalformedVarint,
  kInvalidUnionTag,
  kInvalidEnumOrdinal,
  kInvalidPresenceByte,
  kTrailingBytes,
  kUnrepresentableValue,
  // Registry.
  kConcurrentPublish,
  kClientsStillReferencing,
  kUnknownApi,
  kUnknownClient,
  kStoreCorrupt,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

enum class Severity : std::uint8_t { kError, kWarning };

/// One finding against a definition, history or value. `path` names the
/// element, e.g. `Customer.gender` or `CustomerService.upsertCustomer`.
struct Diagnostic {
  Severity severity = Severity::kError;
  ErrorCode code = ErrorCode::kSyntaxError;
  std::string path;
  std::string message;

  std::string ToString() const;
  bool operator==(const Diagnostic&) const = default;
};

/// The exception type thrown by all library operations. Operations that can
/// find several independent problems at once (relating two revisions, for
/// instance) attach all of them; `code()` and `path()` describe the first.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string path, std::string message);
  explicit Error(std::vector<Diagnostic> diagnostics);

  ErrorCode code() const { return diagnostics_.front().code; }
  const std::string& path() const { return diagnostics_.front().path; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  bool Has(ErrorCode code) const;

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct SourceLocation {
  int line = 1;
  int column = 1;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceLocation location, std::vector<std::string> expected,
              std::string found);

  SourceLocation location() const { return location_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceLocation location_;
  std::vector<std::string> expected_;
  std::string found_;
};

}  // namespace apievo

#endif  // APIEVO_ERROR_HPP_
