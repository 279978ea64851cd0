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


#include "apievo/internal_rep.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "apievo/error.hpp"

namespace apievo {

bool InternalRepresentation::supports(int revision) const {
  return std::binary_search(supported_.begin(), supported_.end(), revision);
}

const std::string& InternalRepresentation::Representative(
    int revision, std::string_view path) const {
  if (!supports(revision)) {
    throw Error(ErrorCode::kUnsupportedRevision, std::to_string(revision),
                "revision " + std::to_string(revision) +
                    " is not in the supported set");
  }
  auto it = representatives_.find({revision, std::string(path)});
  if (it == representatives_.end()) {
    throw Error(ErrorCode::kUnknownElement, std::string(path),
                "revision " + std::to_string(revision) + " has no element '" +
                    std::string(path) + "'");
  }
  return it->second;
}

const std::string& InternalRepresentation::PublicName(
    std::string_view internal_type) const {
  auto it = public_names_.find(internal_type);
  if (it == public_names_.end()) {
    throw Error(ErrorCode::kUnknownElement, std::string(internal_type),
                "no internal type '" + std::string(internal_type) + "'");
  }
  return it->second;
}

std::string InternalRepresentation::ToText() const {
  std::ostringstream out;
  out << "internal representation of " << api_name_ << ", supported {";
  for (std::size_t i = 0; i < supported_.size(); ++i) {
    out << (i == 0 ? "" : ", ") << supported_[i];
  }
  out << "}\n";
  const std::string body = schema_.ToText();
  out << body.substr(body.find('\n') + 1);
  out << "representatives\n";
  for (const auto& [key, internal] : representatives_) {
    out << "  r" << key.first << ' ' << key.second << " -> " << internal << '\n';
  }
  return out.str();
}

namespace {

// During the merge, record and enum references carry lineage ids instead of
// names. Record references keep their full candidate list until the end.
TypeShape LineageShape(const TypeRef& ref, const Revision& rev) {
  switch (ref.kind) {
    case TypeRef::Kind::kInt32: return TypeShape::Int32();
    case TypeRef::Kind::kNumeric: return TypeShape::Numeric(ref.bound);
    case TypeRef::Kind::kString: return TypeShape::String(ref.bound);
    case TypeRef::Kind::kList:
      return TypeShape::List(LineageShape(*ref.element, rev), ref.bound);
    case TypeRef::Kind::kNamed: break;
  }
  if (rev.model->enumeration(ref.name) != nullptr) {
    return TypeShape::Enum(std::to_string(rev.lineage.types.at(ref.name)));
  }
  TypeShape shape;
  shape.kind = TypeShape::Kind::kUnion;
  for (const auto& alt : rev.model->record(ref.name)->alternatives) {
    shape.names.push_back(std::to_string(rev.lineage.types.at(alt)));
  }
  return shape;
}

void MergeShape(TypeShape& into, const TypeShape& other) {
  if (into.kind != other.kind) return;
  if (into.kind == TypeShape::Kind::kUnion) {
    for (const auto& n : other.names) {
      if (std::find(into.names.begin(), into.names.end(), n) == into.names.end()) {
        into.names.push_back(n);
      }
    }
  } else if (into.kind == TypeShape::Kind::kList) {
    TypeShape element = *into.element;
    MergeShape(element, *other.element);
    into.element = std::make_shared<const TypeShape>(std::move(element));
  }
}

struct FieldAcc {
  int lineage = 0;
  SchemaField field;
  int present = 0;
};

struct RecordAcc {
  int lineage = 0;
  SchemaRecord record;
  std::vector<std::string> alternatives;  // lineage ids
  std::vector<FieldAcc> fields;
  std::map<int, std::size_t> field_index;
  int present = 0;
  bool concrete = false;
};

struct EnumAcc {
  int lineage = 0;
  SchemaEnum enumeration;
  std::map<int, std::size_t> member_index;
};

struct OperationAcc {
  int lineage = 0;
  SchemaOperation op;
  std::vector<int> exceptions;
};

struct ServiceAcc {
  int lineage = 0;
  SchemaService service;
  std::vector<OperationAcc> ops;
  std::map<int, std::size_t> op_index;
};

enum class Slot { kType, kField, kMember, kService, kOperation };

struct PendingRep {
  int revision;
  std::string path;
  Slot slot;
  int owner;   // type or service lineage
  int member;  // field, member or operation lineage
};

template <typename Acc>
Acc& Upsert(std::vector<Acc>& items, std::map<int, std::size_t>& index,
            int lineage, bool& created) {
  auto [it, inserted] = index.emplace(lineage, items.size());
  created = inserted;
  if (inserted) {
    items.emplace_back();
    items.back().lineage = lineage;
  }
  return items[it->second];
}

}  // namespace

InternalRepresentation DeriveInternal(const RevisionHistory& history,
                                      std::vector<int> supported) {
  std::sort(supported.begin(), supported.end());
  supported.erase(std::unique(supported.begin(), supported.end()),
                  supported.end());
  if (supported.empty()) {
    throw Error(ErrorCode::kUnknownRevision, "",
                "the supported revision set is empty");
  }
  for (int id : supported) history.revision(id);

  std::vector<RecordAcc> records;
  std::map<int, std::size_t> record_index;
  std::vector<EnumAcc> enums;
  std::map<int, std::size_t> enum_index;
  std::vector<ServiceAcc> services;
  std::map<int, std::size_t> service_index;
  std::vector<PendingRep> pending;

  for (auto id = supported.rbegin(); id != supported.rend(); ++id) {
    const Revision& rev = history.revision(*id);
    for (const auto& element : rev.definition->elements) {
      bool created = false;
      if (const auto* r = std::get_if<RecordType>(&element)) {
        const int lin = rev.lineage.types.at(r->name);
        RecordAcc& acc = Upsert(records, record_index, lin, created);
        if (created) {
          acc.record.name = acc.record.internal_name = r->internal_name();
          acc.record.is_exception = r->is_exception();
        }
        pending.push_back({rev.id, r->name, Slot::kType, lin, 0});
        ++acc.present;
        acc.concrete = acc.concrete || !r->is_abstract;
        const FlatRecord* flat = rev.model->record(r->name);
        for (const auto& alt : flat->alternatives) {
          const std::string alt_id = std::to_string(rev.lineage.types.at(alt));
          if (std::find(acc.alternatives.begin(), acc.alternatives.end(),
                        alt_id) == acc.alternatives.end()) {
            acc.alternatives.push_back(alt_id);
          }
        }
        for (const auto& f : flat->fields) {
          const int flin = rev.lineage.fields.at({r->name, f.name});
          bool new_field = false;
          FieldAcc& fa = Upsert(acc.fields, acc.field_index, flin, new_field);
          TypeShape shape = LineageShape(f.decl->type, rev);
          if (new_field) {
            fa.field = {f.internal_name, f.internal_name, std::move(shape),
                        f.optionality};
          } else {
            fa.field.optionality = MorePermissive(fa.field.optionality, f.optionality);
            MergeShape(fa.field.type, shape);
          }
          ++fa.present;
          pending.push_back({rev.id, r->name + "." + f.name, Slot::kField, lin, flin});
        }
      } else if (const auto* e = std::get_if<EnumType>(&element)) {
        const int lin = rev.lineage.types.at(e->name);
        EnumAcc& acc = Upsert(enums, enum_index, lin, created);
        if (created) {
          acc.enumeration.name = acc.enumeration.internal_name = e->internal_name();
        }
        pending.push_back({rev.id, e->name, Slot::kType, lin, 0});
        for (const auto& m : e->members) {
          const int mlin = rev.lineage.enum_members.at({e->name, m.name});
          if (acc.member_index.emplace(mlin, acc.enumeration.members.size()).second) {
            acc.enumeration.members.push_back(m.name);
          }
          pending.push_back({rev.id, e->name + "." + m.name, Slot::kMember, lin, mlin});
        }
      } else {
        const auto& s = std::get<Service>(element);
        const int lin = rev.lineage.services.at(s.name);
        ServiceAcc& acc = Upsert(services, service_index, lin, created);
        if (created) {
          acc.service.name = acc.service.internal_name = s.internal_name();
        }
        pending.push_back({rev.id, s.name, Slot::kService, lin, 0});
        for (const auto& op : s.operations) {
          const int olin = rev.lineage.operations.at({s.name, op.name});
          bool new_op = false;
          OperationAcc& oa = Upsert(acc.ops, acc.op_index, olin, new_op);
          TypeShape in = LineageShape(TypeRef::Named(op.input), rev);
          TypeShape out = LineageShape(TypeRef::Named(op.output), rev);
          if (new_op) {
            oa.op.name = oa.op.internal_name = op.internal_name();
            oa.op.input = std::move(in);
            oa.op.output = std::move(out);
          } else {
            MergeShape(oa.op.input, in);
            MergeShape(oa.op.output, out);
          }
          for (const auto& t : op.throws) {
            const int tlin = rev.lineage.types.at(t);
            if (std::find(oa.exceptions.begin(), oa.exceptions.end(), tlin) ==
                oa.exceptions.end()) {
              oa.exceptions.push_back(tlin);
            }
          }
          pending.push_back({rev.id, s.name + "." + op.name, Slot::kOperation, lin, olin});
        }
      }
    }
  }

  std::map<int, std::string> type_names;
  for (const auto& r : records) type_names[r.lineage] = r.record.name;
  for (const auto& e : enums) type_names[e.lineage] = e.enumeration.name;

  std::vector<Diagnostic> errors;
  auto to_names = [&](const std::string& path, TypeShape shape, auto& self) -> TypeShape {
    switch (shape.kind) {
      case TypeShape::Kind::kList:
        return TypeShape::List(self(path, *shape.element, self), shape.bound);
      case TypeShape::Kind::kEnum:
        return TypeShape::Enum(type_names.at(std::stoi(shape.name())));
      case TypeShape::Kind::kUnion:
      case TypeShape::Kind::kRecord: {
        std::vector<std::string> names;
        for (const auto& n : shape.names) names.push_back(type_names.at(std::stoi(n)));
        if (names.empty()) {
          errors.push_back({Severity::kError, ErrorCode::kEmptyUnion, path,
                            "referenced type has no concrete subtype"});
          return TypeShape::Int32();
        }
        return TypeShape::Union(std::move(names));
      }
      default:
        return shape;
    }
  };

  InternalRepresentation rep;
  rep.api_name_ = history.api_name();
  rep.supported_ = supported;
  Schema& schema = rep.schema_;

  auto clash = [&](const std::string& path, const std::string& name) {
    errors.push_back({Severity::kError, ErrorCode::kDuplicateInternalName, path,
                      "internal name '" + name +
                          "' is used by two different elements of the "
                          "supported revisions"});
  };
  std::set<std::string> top_level;
  std::map<int, std::string> service_names;
  std::map<std::pair<int, int>, std::string> member_names;

  for (auto& acc : enums) {
    if (!top_level.insert(acc.enumeration.name).second) {
      clash(acc.enumeration.name, acc.enumeration.name);
    }
    for (const auto& [mlin, index] : acc.member_index) {
      member_names[{acc.lineage, mlin}] = acc.enumeration.members[index];
    }
    std::set<std::string> seen;
    for (const auto& m : acc.enumeration.members) {
      if (!seen.insert(m).second) clash(acc.enumeration.name + "." + m, m);
    }
    schema.enums.push_back(acc.enumeration);
  }
  for (auto& acc : records) {
    SchemaRecord& r = acc.record;
    if (!top_level.insert(r.name).second) clash(r.name, r.name);
    r.is_abstract = !acc.concrete;
    for (const auto& alt : acc.alternatives) r.alternatives.push_back(type_names.at(std::stoi(alt)));
    std::set<std::string> seen;
    for (auto& fa : acc.fields) {
      if (fa.present < acc.present) fa.field.optionality = Optionality::kOptional;
      const std::string path = r.name + "." + fa.field.name;
      fa.field.type = to_names(path, fa.field.type, to_names);
      if (!seen.insert(fa.field.name).second) clash(path, fa.field.name);
      member_names[{acc.lineage, fa.lineage}] = fa.field.name;
      r.fields.push_back(fa.field);
    }
    schema.records.push_back(r);
  }
  for (auto& acc : services) {
    SchemaService& s = acc.service;
    if (!top_level.insert(s.name).second) clash(s.name, s.name);
    service_names[acc.lineage] = s.name;
    std::set<std::string> seen;
    for (auto& oa : acc.ops) {
      const std::string path = s.name + "." + oa.op.name;
      oa.op.input = to_names(path, oa.op.input, to_names);
      oa.op.output = to_names(path, oa.op.output, to_names);
      for (int t : oa.exceptions) oa.op.exceptions.push_back(type_names.at(t));
      if (!seen.insert(oa.op.name).second) clash(path, oa.op.name);
      member_names[{acc.lineage, oa.lineage}] = oa.op.name;
      s.operations.push_back(oa.op);
    }
    schema.services.push_back(s);
  }
  if (!errors.empty()) throw Error(std::move(errors));

  for (const auto& p : pending) {
    std::string internal;
    switch (p.slot) {
      case Slot::kType: internal = type_names.at(p.owner); break;
      case Slot::kService: internal = service_names.at(p.owner); break;
      case Slot::kField:
      case Slot::kMember:
        internal = type_names.at(p.owner) + "." + member_names.at({p.owner, p.member});
        break;
      case Slot::kOperation:
        internal = service_names.at(p.owner) + "." + member_names.at({p.owner, p.member});
        break;
    }
    rep.representatives_[{p.revision, p.path}] = std::move(internal);
  }
  // Public names come from the newest supported revision with the type.
  for (auto id = supported.rbegin(); id != supported.rend(); ++id) {
    const Revision& rev = history.revision(*id);
    for (const auto& element : rev.definition->elements) {
      if (std::holds_alternative<Service>(element)) continue;
      const auto& name = ElementName(element);
      rep.public_names_.try_emplace(type_names.at(rev.lineage.types.at(name)), name);
    }
  }
  return rep;
}

}  // namespace apievo
