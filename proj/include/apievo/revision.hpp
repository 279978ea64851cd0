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
/// Revision histories and the predecessor relations between consecutive
/// revisions.
///
/// Two elements of consecutive revisions are the same element if the newer
/// one names the older one in a `replaces` clause, or, without a clause, if
/// both carry the same public name. Such a claim only relates the two when
/// they are compatible (same kind, related types, equal bounds); otherwise
/// the older element is deleted and the newer one added, which is how a
/// type change is expressed. No older element may be claimed twice.
///
/// Fields are related on the inheritance-expanded model: each record holds
/// its own copy of every inherited field, so pushing a field down into two
/// subtypes relates two distinct copies and stays injective.

#ifndef APIEVO_REVISION_HPP_
#define APIEVO_REVISION_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/flat_model.hpp"

namespace apievo {

/// A member of a named owner: a field of a record, a member of an enum or
/// an operation of a service.
struct MemberKey {
  std::string owner;
  std::string name;

  std::string ToString() const { return owner + "." + name; }
  auto operator<=>(const MemberKey&) const = default;
};

/// The five relations between two consecutive revisions, each mapping a
/// newer element to its predecessor.
struct PredecessorMap {
  std::map<std::string, std::string> types;
  std::map<std::string, std::string> services;
  std::map<MemberKey, MemberKey> operations;
  std::map<MemberKey, MemberKey> enum_members;
  std::map<MemberKey, MemberKey> fields;  // inheritance-expanded copies

  // Claims that did not relate because the two sides are incompatible.
  // Kept for change reporting only.
  std::map<std::string, std::string> type_changes;
  std::map<MemberKey, MemberKey> field_type_changes;
  std::map<MemberKey, MemberKey> operation_type_changes;

  bool operator==(const PredecessorMap&) const = default;
};

/// Computes the relations from `previous` to `current`. Throws Error
/// listing every violation found (unknown predecessors, several successors
/// for one element, pull-ups of differently typed fields, changed
/// supertypes).
PredecessorMap Relate(const FlatModel& previous, const FlatModel& current);
PredecessorMap Relate(const ApiDefinition& previous,
                      const ApiDefinition& current);

/// Whether a field of type `older` (in `previous`) may carry over to a field
/// of type `newer` (in `current`) given the type relation.
bool TypesRelated(const TypeRef& older, const FlatModel& previous,
                  const TypeRef& newer, const FlatModel& current,
                  const std::map<std::string, std::string>& type_pred);

/// Identifies each element across the whole history: elements linked by a
/// chain of predecessor relations share one lineage id.
struct RevisionLineage {
  std::map<std::string, int> types;
  std::map<std::string, int> services;
  std::map<MemberKey, int> fields;
  std::map<MemberKey, int> enum_members;
  std::map<MemberKey, int> operations;
};

struct Revision {
  int id = 0;
  DefinitionPtr definition;
  std::shared_ptr<const FlatModel> model;
  RevisionLineage lineage;
};

class RevisionHistory {
 public:
  explicit RevisionHistory(std::string api_name);

  const std::string& api_name() const { return api_name_; }
  const std::vector<Revision>& revisions() const { return revisions_; }
  bool empty() const { return revisions_.empty(); }
  bool contains(int id) const;
  /// Id of the newest revision, 0 when empty.
  int head() const;

  /// Throws Error(kUnknownRevision).
  const Revision& revision(int id) const;

  /// Relations from revision `id - 1` to `id`; `id` must be at least 2.
  const PredecessorMap& relation(int id) const;

  /// Returns a new history with `definition` appended under the next id.
  /// Throws if the definition names another API, if relating it to the
  /// current head fails, or if it reuses an internal name of a different
  /// element (at least one side naming it explicitly with `as`).
  RevisionHistory Append(ApiDefinition definition) const;
  RevisionHistory Append(DefinitionPtr definition) const;

 private:
  struct NameUse {
    int lineage;
    bool explicit_alias;
  };
  // (scope, internal name) -> uses; scope is -1 for top-level elements, the
  // owner's lineage id otherwise.
  using NameIndex = std::map<std::pair<int, std::string>, std::vector<NameUse>>;

  std::string api_name_;
  std::vector<Revision> revisions_;
  std::vector<PredecessorMap> relations_;  // [i] relates revision i to i+1
  std::shared_ptr<const NameIndex> names_;
  int next_lineage_ = 1;
};

enum class ElementKind : std::uint8_t {
  kType,
  kField,
  kEnumMember,
  kService,
  kOperation
};

std::string_view ElementKindName(ElementKind kind);

enum class ChangeKind : std::uint8_t {
  kAdded,
  kDeleted,
  kRenamed,
  kTypeChanged,
  kPulledUp,
  kPushedDown
};

std::string_view ChangeKindName(ChangeKind kind);

struct Change {
  ChangeKind kind = ChangeKind::kAdded;
  ElementKind element = ElementKind::kType;
  std::vector<std::string> before;  // paths in the older revision
  std::vector<std::string> after;   // paths in the newer revision
  std::string detail;               // e.g. "int32 -> Gender"

  bool operator==(const Change&) const = default;
};

/// Classified differences between two revisions. Every element of either
/// revision is in at most one change; the rest is unchanged.
struct ChangeSet {
  int from = 0;
  int to = 0;
  std::vector<Change> changes;

  bool empty() const { return changes.empty(); }
  std::vector<Change> Of(ChangeKind kind) const;
  /// True if a change of `kind` mentions `path` on either side.
  bool Contains(ChangeKind kind, std::string_view path) const;
  std::string ToText() const;
};

/// Composes the relations between `from` and `to` (from <= to) and
/// classifies the result. Throws Error(kUnknownRevision).
ChangeSet Diff(const RevisionHistory& history, int from, int to);

}  // namespace apievo

#endif  // APIEVO_REVISION_HPP_
