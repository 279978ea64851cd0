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

#include "apievo/ast.hpp"

#include <utility>

namespace apievo {

std::string_view OptionalityName(Optionality optionality) {
  switch (optionality) {
    case Optionality::kMandatory: return "mandatory";
    case Optionality::kOptin: return "optin";
    case Optionality::kOptional: return "optional";
  }
  return "mandatory";
}

TypeRef TypeRef::Int32() { return TypeRef{}; }

TypeRef TypeRef::Numeric(std::optional<std::uint32_t> max_digits) {
  TypeRef t;
  t.kind = Kind::kNumeric;
  t.bound = max_digits;
  return t;
}

TypeRef TypeRef::String(std::optional<std::uint32_t> max_length) {
  TypeRef t;
  t.kind = Kind::kString;
  t.bound = max_length;
  return t;
}

TypeRef TypeRef::List(TypeRef element, std::optional<std::uint32_t> max_size) {
  TypeRef t;
  t.kind = Kind::kList;
  t.bound = max_size;
  t.element = std::make_shared<const TypeRef>(std::move(element));
  return t;
}

TypeRef TypeRef::Named(std::string name) {
  TypeRef t;
  t.kind = Kind::kNamed;
  t.name = std::move(name);
  return t;
}

std::string TypeRef::ToString() const {
  auto with_bound = [this](std::string base) {
    if (bound) base += "(" + std::to_string(*bound) + ")";
    return base;
  };
  switch (kind) {
    case Kind::kInt32:
      return "int32";
    case Kind::kNumeric:
      return with_bound("numeric");
    case Kind::kString:
      return with_bound("string");
    case Kind::kList:
      return element->ToString() +
             (bound ? "[" + std::to_string(*bound) + "]" : std::string("*"));
    case Kind::kNamed:
      return name;
  }
  return name;
}

bool operator==(const TypeRef& a, const TypeRef& b) {
  if (a.kind != b.kind || a.bound != b.bound || a.name != b.name) return false;
  if (a.kind != TypeRef::Kind::kList) return true;
  return *a.element == *b.element;
}

std::string QualifiedFieldName::ToString() const {
  return qualified() ? type + "." + field : field;
}

std::string ReplacesClause::ToString() const {
  if (nothing) return "replaces nothing";
  std::string out = "replaces ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i].ToString();
  }
  return out;
}

const std::string& ElementName(const Element& element) {
  return std::visit([](const auto& e) -> const std::string& { return e.name; },
                    element);
}

const std::string& ElementInternalName(const Element& element) {
  return std::visit(
      [](const auto& e) -> const std::string& { return e.internal_name(); },
      element);
}

const std::optional<ReplacesClause>& ElementReplaces(const Element& element) {
  return std::visit(
      [](const auto& e) -> const std::optional<ReplacesClause>& {
        return e.replaces;
      },
      element);
}

const Element* ApiDefinition::Find(std::string_view name) const {
  for (const auto& element : elements) {
    if (ElementName(element) == name) return &element;
  }
  return nullptr;
}

const RecordType* ApiDefinition::FindRecord(std::string_view name) const {
  const Element* e = Find(name);
  return e ? std::get_if<RecordType>(e) : nullptr;
}

const EnumType* ApiDefinition::FindEnum(std::string_view name) const {
  const Element* e = Find(name);
  return e ? std::get_if<EnumType>(e) : nullptr;
}

const Service* ApiDefinition::FindService(std::string_view name) const {
  const Element* e = Find(name);
  return e ? std::get_if<Service>(e) : nullptr;
}

bool ApiDefinition::HasReplacesClauses() const {
  for (const auto& element : elements) {
    if (ElementReplaces(element)) return true;
    if (const auto* r = std::get_if<RecordType>(&element)) {
      for (const auto& f : r->fields) {
        if (f.replaces) return true;
      }
    } else if (const auto* e = std::get_if<EnumType>(&element)) {
      for (const auto& m : e->members) {
        if (m.replaces) return true;
      }
    } else if (const auto* s = std::get_if<Service>(&element)) {
      for (const auto& op : s->operations) {
        if (op.replaces) return true;
      }
    }
  }
  return false;
}

}  // namespace apievo
