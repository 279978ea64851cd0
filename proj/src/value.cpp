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


#include "apievo/value.hpp"

#include <algorithm>
#include <climits>

#include "apievo/error.hpp"

namespace apievo {

Value Value::Int32(std::int32_t v) {
  Value out;
  out.int_ = v;
  return out;
}

Value Value::Numeric(std::string digits) {
  Value out;
  out.kind_ = Kind::kNumeric;
  out.text_ = std::move(digits);
  return out;
}

Value Value::String(std::string text) {
  Value out;
  out.kind_ = Kind::kString;
  out.text_ = std::move(text);
  return out;
}

Value Value::Enum(std::string member) {
  Value out;
  out.kind_ = Kind::kEnum;
  out.text_ = std::move(member);
  return out;
}

Value Value::List(std::vector<Value> items) {
  Value out;
  out.kind_ = Kind::kList;
  out.items_ = std::move(items);
  return out;
}

Value Value::Record(std::string type, Fields fields) {
  Value out;
  out.kind_ = Kind::kRecord;
  out.text_ = std::move(type);
  out.fields_ = std::move(fields);
  return out;
}

const Value* Value::Find(std::string_view field) const {
  auto it = fields_.find(field);
  return it == fields_.end() ? nullptr : &it->second;
}

Value& Value::Set(std::string field, Value value) {
  return fields_.insert_or_assign(std::move(field), std::move(value)).first->second;
}

bool operator==(const Value& a, const Value& b) {
  return a.kind_ == b.kind_ && a.int_ == b.int_ && a.text_ == b.text_ &&
         a.items_ == b.items_ && a.fields_ == b.fields_;
}

std::string_view ValueKindName(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kInt32: return "int32";
    case Value::Kind::kNumeric: return "numeric";
    case Value::Kind::kString: return "string";
    case Value::Kind::kEnum: return "enum";
    case Value::Kind::kList: return "list";
    case Value::Kind::kRecord: return "record";
  }
  return "int32";
}

nlohmann::json ValueToJson(const Value& value) {
  switch (value.kind()) {
    case Value::Kind::kInt32: return value.as_int32();
    case Value::Kind::kNumeric:
    case Value::Kind::kString:
    case Value::Kind::kEnum: return value.text();
    case Value::Kind::kList: {
      auto out = nlohmann::json::array();
      for (const auto& item : value.items()) out.push_back(ValueToJson(item));
      return out;
    }
    case Value::Kind::kRecord: {
      nlohmann::json out = nlohmann::json::object();
      out["$type"] = value.text();
      for (const auto& [name, field] : value.fields()) out[name] = ValueToJson(field);
      return out;
    }
  }
  return nullptr;
}

namespace {

Value FromJson(const nlohmann::json& json, const Schema& schema,
               const TypeShape& shape, const std::string& path) {
  auto mismatch = [&](std::string_view expected) {
    return Error(ErrorCode::kValueKindMismatch, path,
                 "expected " + std::string(expected) + " but found JSON " +
                     json.type_name());
  };
  switch (shape.kind) {
    case TypeShape::Kind::kInt32: {
      if (!json.is_number_integer()) throw mismatch("an integer");
      const auto v = json.get<std::int64_t>();
      if (v < INT32_MIN || v > INT32_MAX) {
        throw Error(ErrorCode::kBoundViolation, path,
                    std::to_string(v) + " does not fit into int32");
      }
      return Value::Int32(static_cast<std::int32_t>(v));
    }
    case TypeShape::Kind::kNumeric:
      if (json.is_number_integer()) return Value::Numeric(json.dump());
      if (!json.is_string()) throw mismatch("a decimal string");
      return Value::Numeric(json.get<std::string>());
    case TypeShape::Kind::kString:
      if (!json.is_string()) throw mismatch("a string");
      return Value::String(json.get<std::string>());
    case TypeShape::Kind::kEnum:
      if (!json.is_string()) throw mismatch("an enum member name");
      return Value::Enum(json.get<std::string>());
    case TypeShape::Kind::kList: {
      if (!json.is_array()) throw mismatch("an array");
      std::vector<Value> items;
      for (std::size_t i = 0; i < json.size(); ++i) {
        items.push_back(FromJson(json[i], schema, *shape.element,
                                 path + "[" + std::to_string(i) + "]"));
      }
      return Value::List(std::move(items));
    }
    case TypeShape::Kind::kRecord:
    case TypeShape::Kind::kUnion: break;
  }
  if (!json.is_object()) throw mismatch("an object");
  std::string type = shape.kind == TypeShape::Kind::kRecord ? shape.name() : "";
  if (auto it = json.find("$type"); it != json.end()) {
    if (!it->is_string()) throw mismatch("a \"$type\" string");
    type = it->get<std::string>();
  }
  const SchemaRecord* record = schema.FindRecord(type);
  if (record == nullptr ||
      std::find(shape.names.begin(), shape.names.end(), type) == shape.names.end()) {
    throw Error(ErrorCode::kUnknownUnionMember, path,
                "'" + type + "' is not a member of " + shape.ToString());
  }
  Value out = Value::Record(type);
  for (const auto& [key, item] : json.items()) {
    if (key == "$type") continue;
    const SchemaField* field = record->FindField(key);
    const std::string field_path = (path.empty() ? type : path) + "." + key;
    if (field == nullptr) {
      throw Error(ErrorCode::kUnknownElement, field_path,
                  "record '" + type + "' has no field '" + key + "'");
    }
    out.Set(key, FromJson(item, schema, field->type, field_path));
  }
  return out;
}

}  // namespace

Value ValueFromJson(const nlohmann::json& json, const Schema& schema,
                    const TypeShape& shape) {
  return FromJson(json, schema, shape, "");
}

}  // namespace apievo
