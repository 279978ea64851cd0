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
/// Tree-shaped values exchanged with the codec. A record value carries the
/// name of its concrete record type, which also selects the member when the
/// value sits in a union. Optional fields that are absent are simply not in
/// the field map.

#ifndef APIEVO_VALUE_HPP_
#define APIEVO_VALUE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apievo/schema.hpp"

namespace apievo {

class Value {
 public:
  enum class Kind : std::uint8_t { kInt32, kNumeric, kString, kEnum, kList, kRecord };
  using Fields = std::map<std::string, Value, std::less<>>;

  Value() = default;

  static Value Int32(std::int32_t v);
  /// Decimal digits with an optional leading '-'.
  static Value Numeric(std::string digits);
  static Value String(std::string text);
  static Value Enum(std::string member);
  static Value List(std::vector<Value> items);
  static Value Record(std::string type, Fields fields = {});

  Kind kind() const { return kind_; }
  std::int32_t as_int32() const { return int_; }
  /// Digits, string content, enum member or record type.
  const std::string& text() const { return text_; }
  const std::vector<Value>& items() const { return items_; }
  std::vector<Value>& items() { return items_; }
  const Fields& fields() const { return fields_; }
  Fields& fields() { return fields_; }

  const Value* Find(std::string_view field) const;
  Value& Set(std::string field, Value value);

  friend bool operator==(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::kInt32;
  std::int32_t int_ = 0;
  std::string text_;
  std::vector<Value> items_;
  Fields fields_;
};

std::string_view ValueKindName(Value::Kind kind);

/// Debug form: numbers for int32, strings for numeric, string and enum
/// values, arrays for lists and objects with a "$type" entry for records.
nlohmann::json ValueToJson(const Value& value);

/// Reads the debug form back, guided by `shape`. Throws
/// Error(kValueKindMismatch) on a JSON node of the wrong kind.
Value ValueFromJson(const nlohmann::json& json, const Schema& schema,
                    const TypeShape& shape);

}  // namespace apievo

#endif  // APIEVO_VALUE_HPP_
