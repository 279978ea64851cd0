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


#include "apievo/convert.hpp"

#include <algorithm>

#include "apievo/error.hpp"

namespace apievo {

namespace {

std::string Child(const std::string& path, const std::string& type,
                  const std::string& field) {
  return (path.empty() ? type : path) + "." + field;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

class Converter {
 public:
  Converter(const ResolutionMap& map, Direction direction,
            const ConvertOptions& options)
      : map_(map), direction_(direction), options_(options) {}

  // `shape` is the client shape of the value in both directions.
  Value In(const Value& v, const TypeShape& shape, const std::string& path) const {
    switch (shape.kind) {
      case TypeShape::Kind::kList: {
        std::vector<Value> items;
        items.reserve(v.items().size());
        for (std::size_t i = 0; i < v.items().size(); ++i) {
          items.push_back(In(v.items()[i], *shape.element, Index(path, i)));
        }
        return Value::List(std::move(items));
      }
      case TypeShape::Kind::kEnum: {
        const EnumMatch* e = map_.EnumForClient(shape.name());
        auto it = e->members.find(v.text());
        if (it == e->members.end()) {
          throw Error(ErrorCode::kUnknownEnumMember, path,
                      "'" + v.text() + "' is not a member of " + shape.name());
        }
        return Value::Enum(it->second);
      }
      case TypeShape::Kind::kRecord:
      case TypeShape::Kind::kUnion: break;
      default:
        return v;
    }
    const RecordMatch* r = map_.ForClient(v.text());
    if (r == nullptr) {
      throw Error(ErrorCode::kUnknownUnionMember, path,
                  "client schema has no record '" + v.text() + "'");
    }
    const SchemaRecord* client = map_.client_schema.FindRecord(r->client_type);
    Value out = Value::Record(r->internal_type);
    for (const auto& f : r->fields) {
      const std::string field_path = Child(path, v.text(), f.client_field);
      const Value* fv = v.Find(f.client_field);
      if (!f.matched) continue;
      if (fv == nullptr) {
        if (!MayBeAbsent(f.provider_optionality, direction_)) {
          throw Error(ErrorCode::kMissingMandatoryField, field_path,
                      "the provider requires field '" + f.client_field + "'");
        }
        continue;
      }
      out.Set(f.internal_field, In(*fv, client->FindField(f.client_field)->type, field_path));
    }
    return out;
  }

  Value Out(const Value& v, const TypeShape& shape, const std::string& path) const {
    switch (shape.kind) {
      case TypeShape::Kind::kList: {
        std::vector<Value> items;
        items.reserve(v.items().size());
        for (std::size_t i = 0; i < v.items().size(); ++i) {
          items.push_back(Out(v.items()[i], *shape.element, Index(path, i)));
        }
        return Value::List(std::move(items));
      }
      case TypeShape::Kind::kEnum: {
        const EnumMatch* e = map_.EnumForClient(shape.name());
        if (const std::string* member = e->ClientMember(v.text())) {
          return Value::Enum(*member);
        }
        if (auto it = options_.enum_fallbacks.find(shape.name());
            it != options_.enum_fallbacks.end()) {
          if (map_.client_schema.FindEnum(shape.name())->IndexOf(it->second) < 0) {
            throw Error(ErrorCode::kUnknownEnumMember, path,
                        "fallback '" + it->second + "' is not a member of " +
                            shape.name());
          }
          return Value::Enum(it->second);
        }
        throw Error(ErrorCode::kUnrepresentableValue, path,
                    "member '" + v.text() + "' cannot be expressed in client enum " +
                        shape.name());
      }
      case TypeShape::Kind::kRecord:
      case TypeShape::Kind::kUnion: break;
      default:
        return v;
    }
    const RecordMatch* r = map_.ForInternal(v.text());
    if (r == nullptr || std::find(shape.names.begin(), shape.names.end(),
                                  r->client_type) == shape.names.end()) {
      throw Error(ErrorCode::kUnrepresentableValue, path,
                  "a '" + map_.internal->PublicName(v.text()) +
                      "' value cannot be expressed as " + shape.ToString());
    }
    const SchemaRecord* client = map_.client_schema.FindRecord(r->client_type);
    Value out = Value::Record(r->client_type);
    for (const auto& f : r->fields) {
      const std::string field_path = Child(path, r->client_type, f.client_field);
      const Value* fv = f.matched ? v.Find(f.internal_field) : nullptr;
      if (fv == nullptr) {
        if (!MayBeAbsent(f.client_optionality, direction_)) {
          throw Error(ErrorCode::kMissingMandatoryField, field_path,
                      "field '" + f.client_field + "' has no value to return");
        }
        continue;
      }
      out.Set(f.client_field, Out(*fv, client->FindField(f.client_field)->type, field_path));
    }
    return out;
  }

 private:
  const ResolutionMap& map_;
  Direction direction_;
  const ConvertOptions& options_;
};

}  // namespace

Value ToInternal(const Value& client_value, const ResolutionMap& map,
                 Direction direction) {
  if (client_value.kind() != Value::Kind::kRecord) {
    throw Error(ErrorCode::kValueKindMismatch, "",
                "only record values can be converted");
  }
  static const ConvertOptions kNone;
  return Converter(map, direction, kNone)
      .In(client_value, TypeShape::Record(client_value.text()), "");
}

Value ToClient(const Value& internal_value, const ResolutionMap& map,
               Direction direction, const ConvertOptions& options) {
  if (internal_value.kind() != Value::Kind::kRecord) {
    throw Error(ErrorCode::kValueKindMismatch, "",
                "only record values can be converted");
  }
  const RecordMatch* r = map.ForInternal(internal_value.text());
  if (r == nullptr) {
    throw Error(ErrorCode::kUnrepresentableValue, internal_value.text(),
                "the client has no counterpart of '" + internal_value.text() + "'");
  }
  return Converter(map, direction, options)
      .Out(internal_value, TypeShape::Record(r->client_type), "");
}

}  // namespace apievo
