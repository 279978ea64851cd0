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
/// Syntax tree of the API definition language. A tree is a plain value;
/// once built it is never mutated and may be shared between threads.

#ifndef APIEVO_AST_HPP_
#define APIEVO_AST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace apievo {

/// Ordered by permissiveness: kMandatory < kOptin < kOptional.
enum class Optionality : std::uint8_t { kMandatory, kOptin, kOptional };

std::string_view OptionalityName(Optionality optionality);

/// Least upper bound in the permissiveness order.
constexpr Optionality MorePermissive(Optionality a, Optionality b) {
  return a < b ? b : a;
}

enum class Direction : std::uint8_t { kRequest, kResponse };

/// Whether a field with `optionality` may be left out when travelling in
/// `direction`. Optin fields are optional in requests only.
constexpr bool MayBeAbsent(Optionality optionality, Direction direction) {
  switch (optionality) {
    case Optionality::kMandatory:
      return false;
    case Optionality::kOptin:
      return direction == Direction::kRequest;
    case Optionality::kOptional:
      return true;
  }
  return false;
}

struct TypeRef {
  enum class Kind : std::uint8_t { kInt32, kNumeric, kString, kList, kNamed };

  Kind kind = Kind::kInt32;
  // Maximum digits (numeric), length (string) or size (list); unset means
  // unbounded.
  std::optional<std::uint32_t> bound;
  std::shared_ptr<const TypeRef> element;
  std::string name;

  static TypeRef Int32();
  static TypeRef Numeric(std::optional<std::uint32_t> max_digits);
  static TypeRef String(std::optional<std::uint32_t> max_length);
  static TypeRef List(TypeRef element, std::optional<std::uint32_t> max_size);
  static TypeRef Named(std::string name);

  std::string ToString() const;

  friend bool operator==(const TypeRef& a, const TypeRef& b);
};

/// `Type.field` or a bare `field` (empty `type`).
struct QualifiedFieldName {
  std::string type;
  std::string field;

  bool qualified() const { return !type.empty(); }
  std::string ToString() const;
  bool operator==(const QualifiedFieldName&) const = default;
};

/// `replaces nothing` or `replaces X[, Y...]`. Only fields may list more
/// than one name or qualify names.
struct ReplacesClause {
  bool nothing = false;
  std::vector<QualifiedFieldName> names;

  static ReplacesClause Nothing() { return {true, {}}; }
  static ReplacesClause Of(std::string name) {
    return {false, {QualifiedFieldName{{}, std::move(name)}}};
  }

  std::string ToString() const;
  bool operator==(const ReplacesClause&) const = default;
};

struct Field {
  std::optional<Optionality> optionality;
  TypeRef type;
  std::string name;
  std::optional<ReplacesClause> replaces;
  std::optional<std::string> alias;

  const std::string& internal_name() const { return alias ? *alias : name; }
  bool operator==(const Field&) const = default;
};

enum class RecordKind : std::uint8_t { kRecord, kException };

struct RecordType {
  std::string name;
  std::optional<std::string> alias;
  RecordKind kind = RecordKind::kRecord;
  bool is_abstract = false;
  std::optional<std::string> super_type;
  std::optional<Optionality> default_optionality;
  std::optional<ReplacesClause> replaces;
  std::vector<Field> fields;

  const std::string& internal_name() const { return alias ? *alias : name; }
  bool is_exception() const { return kind == RecordKind::kException; }
  bool operator==(const RecordType&) const = default;
};

struct EnumMember {
  std::string name;
  std::optional<ReplacesClause> replaces;

  bool operator==(const EnumMember&) const = default;
};

struct EnumType {
  std::string name;
  std::optional<std::string> alias;
  std::optional<ReplacesClause> replaces;
  std::vector<EnumMember> members;

  const std::string& internal_name() const { return alias ? *alias : name; }
  bool operator==(const EnumType&) const = default;
};

struct ServiceOperation {
  std::string name;
  std::optional<std::string> alias;
  std::string output;
  std::string input;
  std::vector<std::string> throws;
  std::optional<ReplacesClause> replaces;

  const std::string& internal_name() const { return alias ? *alias : name; }
  bool operator==(const ServiceOperation&) const = default;
};

struct Service {
  std::string name;
  std::optional<std::string> alias;
  std::optional<ReplacesClause> replaces;
  std::vector<ServiceOperation> operations;

  const std::string& internal_name() const { return alias ? *alias : name; }
  bool operator==(const Service&) const = default;
};

using Element = std::variant<RecordType, EnumType, Service>;

const std::string& ElementName(const Element& element);
const std::string& ElementInternalName(const Element& element);
const std::optional<ReplacesClause>& ElementReplaces(const Element& element);

struct ApiDefinition {
  std::string name;
  std::vector<Element> elements;

  const Element* Find(std::string_view name) const;
  const RecordType* FindRecord(std::string_view name) const;
  const EnumType* FindEnum(std::string_view name) const;
  const Service* FindService(std::string_view name) const;

  /// True if any element, field, member or operation has a replaces clause.
  bool HasReplacesClauses() const;

  bool operator==(const ApiDefinition&) const = default;
};

using DefinitionPtr = std::shared_ptr<const ApiDefinition>;

}  // namespace apievo

#endif  // APIEVO_AST_HPP_
