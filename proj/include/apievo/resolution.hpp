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

/// \file
///
/// Matches a client definition against the provider revision it was written
/// for. Elements match by public name and must have identical structure;
/// there is no type promotion. Client unions and enums may be narrower than
/// the provider's.

#ifndef APIEVO_RESOLUTION_HPP_
#define APIEVO_RESOLUTION_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/internal_rep.hpp"
#include "apievo/revision.hpp"
#include "apievo/schema.hpp"

namespace apievo {

/// Parses and validates a client definition. Throws Error(kReplacesInClient)
/// if it contains a replaces clause.
ApiDefinition ParseClientDefinition(std::string_view text);

struct FieldMatch {
  std::string client_field;
  std::string client_internal;  // the client's own `as` name
  bool matched = false;         // false: client-only optional field
  std::string internal_field;   // provider internal name when matched
  Optionality client_optionality = Optionality::kMandatory;
  Optionality provider_optionality = Optionality::kMandatory;
};

struct RecordMatch {
  std::string client_type;
  std::string client_internal;
  std::string internal_type;
  std::vector<FieldMatch> fields;   // client schema order
  std::vector<std::string> ignored;  // provider fields unknown to the client

  const FieldMatch* ForClient(std::string_view field) const;
};

struct EnumMatch {
  std::string client_enum;
  std::string internal_enum;
  std::map<std::string, std::string> members;  // client -> internal

  /// Client member for an internal member, or nullptr.
  const std::string* ClientMember(std::string_view internal) const;
};

struct OperationMatch {
  std::string client_path;    // Service.operation
  std::string internal_path;
};

struct ResolutionMap {
  std::string api_name;
  int provider_revision = 0;
  Schema client_schema;
  Schema provider_schema;
  std::shared_ptr<const InternalRepresentation> internal;
  std::vector<RecordMatch> records;  // by client name
  std::vector<EnumMatch> enums;
  std::vector<OperationMatch> operations;

  const RecordMatch* ForClient(std::string_view client_type) const;
  const RecordMatch* ForInternal(std::string_view internal_type) const;
  const EnumMatch* EnumForClient(std::string_view client_enum) const;

  /// Match table, one line per element, sorted.
  std::string ToText() const;
};

/// Throws Error carrying every problem found: kApiNameMismatch,
/// kReplacesInClient, kUnsupportedRevision, kTypeMismatch,
/// kMissingMandatoryElement.
ResolutionMap Resolve(const ApiDefinition& client, int provider_revision,
                      const RevisionHistory& history,
                      std::shared_ptr<const InternalRepresentation> internal);

}  // namespace apievo

#endif  // APIEVO_RESOLUTION_HPP_
