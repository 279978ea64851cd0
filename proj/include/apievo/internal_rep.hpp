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
/// Provider-side merge of a set of supported revisions. Every element
/// present in any supported revision appears once, in the form and under
/// the internal name of the newest supported revision that contains it.

#ifndef APIEVO_INTERNAL_REP_HPP_
#define APIEVO_INTERNAL_REP_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apievo/revision.hpp"
#include "apievo/schema.hpp"

namespace apievo {

class InternalRepresentation {
 public:
  const std::string& api_name() const { return api_name_; }
  /// Ascending.
  const std::vector<int>& supported() const { return supported_; }
  bool supports(int revision) const;

  /// Types, fields and services keyed by internal names. Records are
  /// abstract only if no supported revision has them concrete.
  const Schema& schema() const { return schema_; }

  /// Internal path of the element at `path` ("Type", "Type.field",
  /// "Enum.MEMBER", "Service.operation") of a supported revision. Throws
  /// Error(kUnsupportedRevision) or Error(kUnknownElement).
  const std::string& Representative(int revision, std::string_view path) const;

  /// Every (revision, public path) -> internal path pair.
  const std::map<std::pair<int, std::string>, std::string>&
  representatives() const {
    return representatives_;
  }

  /// Public name of an internal type in the newest supported revision that
  /// has it.
  const std::string& PublicName(std::string_view internal_type) const;

  std::string ToText() const;

 private:
  friend InternalRepresentation DeriveInternal(const RevisionHistory&,
                                               std::vector<int>);

  std::string api_name_;
  std::vector<int> supported_;
  Schema schema_;
  std::map<std::pair<int, std::string>, std::string>
      representatives_;
  std::map<std::string, std::string, std::less<>> public_names_;
};

/// Throws Error(kUnknownRevision) for an empty set or unknown ids and
/// Error(kDuplicateInternalName) if two distinct elements of the supported
/// revisions share an internal name.
InternalRepresentation DeriveInternal(const RevisionHistory& history,
                                      std::vector<int> supported);

}  // namespace apievo

#endif  // APIEVO_INTERNAL_REP_HPP_
