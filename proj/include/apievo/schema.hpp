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
/// Flattened wire schemas. A reference to a record type stands for every
/// concrete record it may hold: with one candidate it is a plain record
/// reference, with several it becomes a tagged union.

#ifndef APIEVO_SCHEMA_HPP_
#define APIEVO_SCHEMA_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/flat_model.hpp"

namespace apievo {

class RevisionHistory;

struct TypeShape {
  enum class Kind : std::uint8_t {
    kInt32,
    kNumeric,
    kString,
    kList,
    kEnum,
    kRecord,
    kUnion
  };

  Kind kind = Kind::kInt32;
  std::optional<std::uint32_t> bound;
  std::shared_ptr<const TypeShape> element;  // kList
  // kEnum and kRecord: the type name; kUnion: the member records in tag
  // order.
  std::vector<std::string> names;

  static TypeShape Int32();
  static TypeShape Numeric(std::optional<std::uint32_t> max_digits);
  static TypeShape String(std::optional<std::uint32_t> max_length);
  static TypeShape List(TypeShape element, std::optional<std::uint32_t> max_size);
  static TypeShape Enum(std::string name);
  static TypeShape Record(std::string name);
  /// A single member collapses to a plain record reference.
  static TypeShape Union(std::vector<std::string> members);

  const std::string& name() const { return names.front(); }
  bool is_named() const {
    return kind == Kind::kEnum || kind == Kind::kRecord || kind == Kind::kUnion;
  }
  std::string ToString() const;

  friend bool operator==(const TypeShape& a, const TypeShape& b);
};

struct SchemaField {
  std::string name;
  std::string internal_name;
  TypeShape type;
  Optionality optionality = Optionality::kMandatory;

  bool operator==(const SchemaField&) const = default;
};

struct SchemaRecord {
  std::string name;
  std::string internal_name;
  bool is_exception = false;
  bool is_abstract = false;
  std::vector<SchemaField> fields;  // inherited first
  std::vector<std::string> alternatives;

  const SchemaField* FindField(std::string_view field) const;
  bool operator==(const SchemaRecord&) const = default;
};

struct SchemaEnum {
  std::string name;
  std::string internal_name;
  std::vector<std::string> members;

  /// Ordinal of `member`, or -1.
  int IndexOf(std::string_view member) const;
  bool operator==(const SchemaEnum&) const = default;
};

struct SchemaOperation {
  std::string name;
  std::string internal_name;
  TypeShape input;
  TypeShape output;
  std::vector<std::string> exceptions;

  bool operator==(const SchemaOperation&) const = default;
};

struct SchemaService {
  std::string name;
  std::string internal_name;
  std::vector<SchemaOperation> operations;

  const SchemaOperation* FindOperation(std::string_view op) const;
  bool operator==(const SchemaService&) const = default;
};

struct Schema {
  int revision = 0;  // 0 for schemas not taken from a history
  std::vector<SchemaRecord> records;
  std::vector<SchemaEnum> enums;
  std::vector<SchemaService> services;

  const SchemaRecord* FindRecord(std::string_view name) const;
  const SchemaEnum* FindEnum(std::string_view name) const;
  const SchemaService* FindService(std::string_view name) const;

  /// Shape of a reference to the named type. Throws Error(kUnknownElement)
  /// or Error(kEmptyUnion).
  TypeShape ShapeOf(std::string_view type_name) const;

  /// Deterministic text listing.
  std::string ToText() const;

  bool operator==(const Schema&) const = default;
};

/// Throws Error(kEmptyUnion) if a field or operation refers to an abstract
/// record without concrete subtypes.
Schema DeriveSchema(const FlatModel& model, int revision = 0);
Schema DeriveSchema(const RevisionHistory& history, int revision);

}  // namespace apievo

#endif  // APIEVO_SCHEMA_HPP_
