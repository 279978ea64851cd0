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


#include "apievo/schema.hpp"

#include <algorithm>
#include <sstream>

#include "apievo/error.hpp"
#include "apievo/revision.hpp"

namespace apievo {

TypeShape TypeShape::Int32() { return {}; }

TypeShape TypeShape::Numeric(std::optional<std::uint32_t> max_digits) {
  TypeShape s;
  s.kind = Kind::kNumeric;
  s.bound = max_digits;
  return s;
}

TypeShape TypeShape::String(std::optional<std::uint32_t> max_length) {
  TypeShape s;
  s.kind = Kind::kString;
  s.bound = max_length;
  return s;
}

TypeShape TypeShape::List(TypeShape element,
                          std::optional<std::uint32_t> max_size) {
  TypeShape s;
  s.kind = Kind::kList;
  s.bound = max_size;
  s.element = std::make_shared<const TypeShape>(std::move(element));
  return s;
}

TypeShape TypeShape::Enum(std::string name) {
  TypeShape s;
  s.kind = Kind::kEnum;
  s.names.push_back(std::move(name));
  return s;
}

TypeShape TypeShape::Record(std::string name) {
  TypeShape s;
  s.kind = Kind::kRecord;
  s.names.push_back(std::move(name));
  return s;
}

TypeShape TypeShape::Union(std::vector<std::string> members) {
  if (members.size() == 1) return Record(std::move(members.front()));
  TypeShape s;
  s.kind = Kind::kUnion;
  s.names = std::move(members);
  return s;
}

std::string TypeShape::ToString() const {
  auto bounded = [this](std::string base) {
    return bound ? base + "(" + std::to_string(*bound) + ")" : base;
  };
  switch (kind) {
    case Kind::kInt32: return "int32";
    case Kind::kNumeric: return bounded("numeric");
    case Kind::kString: return bounded("string");
    case Kind::kList:
      return element->ToString() +
             (bound ? "[" + std::to_string(*bound) + "]" : std::string("*"));
    case Kind::kEnum:
    case Kind::kRecord: return name();
    case Kind::kUnion: {
      std::string out = "union[";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += names[i];
      }
      return out + "]";
    }
  }
  return {};
}

bool operator==(const TypeShape& a, const TypeShape& b) {
  if (a.kind != b.kind || a.bound != b.bound || a.names != b.names) {
    return false;
  }
  if (a.kind != TypeShape::Kind::kList) return true;
  return *a.element == *b.element;
}

const SchemaField* SchemaRecord::FindField(std::string_view field) const {
  for (const auto& f : fields) {
    if (f.name == field) return &f;
  }
  return nullptr;
}

int SchemaEnum::IndexOf(std::string_view member) const {
  auto it = std::find(members.begin(), members.end(), member);
  return it == members.end() ? -1 : static_cast<int>(it - members.begin());
}

const SchemaOperation* SchemaService::FindOperation(std::string_view op) const {
  for (const auto& o : operations) {
    if (o.name == op) return &o;
  }
  return nullptr;
}

namespace {

template <typename T>
const T* FindByName(const std::vector<T>& items, std::string_view name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

}  // namespace

const SchemaRecord* Schema::FindRecord(std::string_view name) const {
  return FindByName(records, name);
}

const SchemaEnum* Schema::FindEnum(std::string_view name) const {
  return FindByName(enums, name);
}

const SchemaService* Schema::FindService(std::string_view name) const {
  return FindByName(services, name);
}

TypeShape Schema::ShapeOf(std::string_view type_name) const {
  if (FindEnum(type_name) != nullptr) return TypeShape::Enum(std::string(type_name));
  const SchemaRecord* record = FindRecord(type_name);
  if (record == nullptr) {
    throw Error(ErrorCode::kUnknownElement, std::string(type_name),
                "schema has no type '" + std::string(type_name) + "'");
  }
  if (record->alternatives.empty()) {
    throw Error(ErrorCode::kEmptyUnion, record->name,
                "abstract type '" + record->name + "' has no concrete subtype");
  }
  return TypeShape::Union(record->alternatives);
}

std::string Schema::ToText() const {
  std::ostringstream out;
  auto named = [](const std::string& name, const std::string& internal) {
    return name == internal ? name : name + " as " + internal;
  };
  out << "schema";
  if (revision > 0) out << " r" << revision;
  out << '\n';
  for (const auto& e : enums) {
    out << "enum " << named(e.name, e.internal_name) << '\n';
    for (const auto& m : e.members) out << "  " << m << '\n';
  }
  for (const auto& r : records) {
    out << (r.is_abstract ? "abstract " : "")
        << (r.is_exception ? "exception " : "record ")
        << named(r.name, r.internal_name) << '\n';
    for (const auto& f : r.fields) {
      out << "  " << named(f.name, f.internal_name) << ": "
          << f.type.ToString() << " " << OptionalityName(f.optionality) << '\n';
    }
  }
  for (const auto& s : services) {
    out << "service " << named(s.name, s.internal_name) << '\n';
    for (const auto& op : s.operations) {
      out << "  " << named(op.name, op.internal_name) << ": "
          << op.input.ToString() << " -> " << op.output.ToString();
      if (!op.exceptions.empty()) {
        out << " throws";
        for (std::size_t i = 0; i < op.exceptions.size(); ++i) {
          out << (i == 0 ? " " : ", ") << op.exceptions[i];
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

TypeShape ShapeOfRef(const TypeRef& ref, const FlatModel& model,
                     const std::string& path) {
  switch (ref.kind) {
    case TypeRef::Kind::kInt32: return TypeShape::Int32();
    case TypeRef::Kind::kNumeric: return TypeShape::Numeric(ref.bound);
    case TypeRef::Kind::kString: return TypeShape::String(ref.bound);
    case TypeRef::Kind::kList:
      return TypeShape::List(ShapeOfRef(*ref.element, model, path), ref.bound);
    case TypeRef::Kind::kNamed: break;
  }
  if (model.enumeration(ref.name) != nullptr) return TypeShape::Enum(ref.name);
  const FlatRecord* record = model.record(ref.name);
  if (record->alternatives.empty()) {
    throw Error(ErrorCode::kEmptyUnion, path,
                "'" + ref.name + "' is abstract and has no concrete subtype");
  }
  return TypeShape::Union(record->alternatives);
}

}  // namespace

Schema DeriveSchema(const FlatModel& model, int revision) {
  Schema schema;
  schema.revision = revision;
  std::vector<Diagnostic> errors;
  auto shape = [&](const TypeRef& ref, const std::string& path) {
    try {
      return ShapeOfRef(ref, model, path);
    } catch (const Error& e) {
      errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
      return TypeShape::Int32();
    }
  };
  for (const auto& element : model.definition().elements) {
    if (const auto* e = std::get_if<EnumType>(&element)) {
      SchemaEnum out{e->name, e->internal_name(), {}};
      for (const auto& m : e->members) out.members.push_back(m.name);
      schema.enums.push_back(std::move(out));
    } else if (const auto* s = std::get_if<Service>(&element)) {
      SchemaService out{s->name, s->internal_name(), {}};
      for (const auto& op : s->operations) {
        const std::string path = s->name + "." + op.name;
        out.operations.push_back({op.name, op.internal_name(),
                                  shape(TypeRef::Named(op.input), path),
                                  shape(TypeRef::Named(op.output), path),
                                  op.throws});
      }
      schema.services.push_back(std::move(out));
    }
  }
  for (const FlatRecord* record : model.records()) {
    SchemaRecord out;
    out.name = record->name();
    out.internal_name = record->decl->internal_name();
    out.is_exception = record->decl->is_exception();
    out.is_abstract = record->decl->is_abstract;
    out.alternatives = record->alternatives;
    for (const auto& f : record->fields) {
      out.fields.push_back({f.name, f.internal_name,
                            shape(f.decl->type, record->name() + "." + f.name),
                            f.optionality});
    }
    schema.records.push_back(std::move(out));
  }
  if (!errors.empty()) throw Error(std::move(errors));
  return schema;
}

Schema DeriveSchema(const RevisionHistory& history, int revision) {
  return DeriveSchema(*history.revision(revision).model, revision);
}

}  // namespace apievo
