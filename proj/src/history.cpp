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

#include <algorithm>
#include <set>
#include <sstream>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"
#include "apievo/revision.hpp"

namespace apievo {

RevisionHistory::RevisionHistory(std::string api_name)
    : api_name_(std::move(api_name)),
      names_(std::make_shared<const NameIndex>()) {}

bool RevisionHistory::contains(int id) const {
  return id >= 1 && id <= static_cast<int>(revisions_.size());
}

int RevisionHistory::head() const { return static_cast<int>(revisions_.size()); }

const Revision& RevisionHistory::revision(int id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::kUnknownRevision, std::to_string(id),
                "API '" + api_name_ + "' has no revision " + std::to_string(id));
  }
  return revisions_[static_cast<std::size_t>(id - 1)];
}

const PredecessorMap& RevisionHistory::relation(int id) const {
  if (!contains(id) || id < 2) {
    throw Error(ErrorCode::kUnknownRevision, std::to_string(id),
                "no relation leads to revision " + std::to_string(id));
  }
  return relations_[static_cast<std::size_t>(id - 2)];
}

RevisionHistory RevisionHistory::Append(ApiDefinition definition) const {
  return Append(std::make_shared<const ApiDefinition>(std::move(definition)));
}

namespace {

template <typename Key>
int Inherit(const std::map<Key, int>& previous_lineage,
            const std::map<Key, Key>* relation, const Key& key, int& next) {
  if (relation != nullptr) {
    auto it = relation->find(key);
    if (it != relation->end()) return previous_lineage.at(it->second);
  }
  return next++;
}

}  // namespace

RevisionHistory RevisionHistory::Append(DefinitionPtr definition) const {
  if (definition->name != api_name_) {
    throw Error(ErrorCode::kApiNameMismatch, definition->name,
                "definition of '" + definition->name +
                    "' cannot be appended to the history of '" + api_name_ +
                    "'");
  }
  if (auto diagnostics = ValidateWellformedness(*definition);
      !diagnostics.empty()) {
    throw Error(std::move(diagnostics));
  }

  RevisionHistory next = *this;
  Revision rev;
  rev.id = head() + 1;
  rev.definition = definition;
  rev.model = std::make_shared<const FlatModel>(definition);

  const PredecessorMap* relation = nullptr;
  const RevisionLineage* before = nullptr;
  if (!revisions_.empty()) {
    next.relations_.push_back(Relate(*revisions_.back().model, *rev.model));
    relation = &next.relations_.back();
    before = &revisions_.back().lineage;
  }

  int& counter = next.next_lineage_;
  static const RevisionLineage kNone;
  const RevisionLineage& prev = before ? *before : kNone;
  RevisionLineage& lineage = rev.lineage;
  for (const auto& element : definition->elements) {
    const auto& name = ElementName(element);
    if (std::holds_alternative<Service>(element)) {
      lineage.services[name] = Inherit(
          prev.services, relation ? &relation->services : nullptr, name, counter);
    } else {
      lineage.types[name] = Inherit(
          prev.types, relation ? &relation->types : nullptr, name, counter);
    }
  }
  for (const FlatRecord* record : rev.model->records()) {
    for (const auto& field : record->fields) {
      const MemberKey key{record->name(), field.name};
      lineage.fields[key] = Inherit(
          prev.fields, relation ? &relation->fields : nullptr, key, counter);
    }
  }
  for (const auto& element : definition->elements) {
    if (const auto* e = std::get_if<EnumType>(&element)) {
      for (const auto& m : e->members) {
        const MemberKey key{e->name, m.name};
        lineage.enum_members[key] =
            Inherit(prev.enum_members,
                    relation ? &relation->enum_members : nullptr, key, counter);
      }
    } else if (const auto* s = std::get_if<Service>(&element)) {
      for (const auto& op : s->operations) {
        const MemberKey key{s->name, op.name};
        lineage.operations[key] =
            Inherit(prev.operations,
                    relation ? &relation->operations : nullptr, key, counter);
      }
    }
  }

  // Internal names must stay unique across the history. A clash between two
  // defaulted names (a type change that kept its public name, say) is left
  // to the supported-set check; an explicit `as` may never clash.
  struct Use {
    int scope;
    std::string name;
    NameUse use;
    std::string path;
  };
  std::vector<Use> uses;
  for (const auto& element : definition->elements) {
    const auto& name = ElementName(element);
    const bool is_service = std::holds_alternative<Service>(element);
    const int id = is_service ? lineage.services.at(name) : lineage.types.at(name);
    bool explicit_alias = std::visit(
        [](const auto& e) { return e.alias.has_value(); }, element);
    uses.push_back({-1, ElementInternalName(element), {id, explicit_alias}, name});
    if (const auto* s = std::get_if<Service>(&element)) {
      for (const auto& op : s->operations) {
        uses.push_back({id, op.internal_name(),
                        {lineage.operations.at({s->name, op.name}),
                         op.alias.has_value()},
                        s->name + "." + op.name});
      }
    }
  }
  for (const FlatRecord* record : rev.model->records()) {
    const int scope = lineage.types.at(record->name());
    for (const auto& field : record->fields) {
      uses.push_back({scope, field.internal_name,
                      {lineage.fields.at({record->name(), field.name}),
                       field.decl->alias.has_value()},
                      record->name() + "." + field.name});
    }
  }

  std::vector<Diagnostic> clashes;
  auto index = std::make_shared<NameIndex>(*names_);
  for (const auto& u : uses) {
    auto& known = (*index)[{u.scope, u.name}];
    for (const auto& k : known) {
      if (k.lineage != u.use.lineage &&
          (k.explicit_alias || u.use.explicit_alias)) {
        clashes.push_back({Severity::kError, ErrorCode::kDuplicateInternalName,
                           u.path,
                           "internal name '" + u.name +
                               "' already belongs to a different element in "
                               "an earlier revision"});
        break;
      }
    }
    const bool seen = std::any_of(known.begin(), known.end(), [&](const NameUse& k) {
      return k.lineage == u.use.lineage && k.explicit_alias == u.use.explicit_alias;
    });
    if (!seen) known.push_back(u.use);
  }
  if (!clashes.empty()) throw Error(std::move(clashes));

  next.names_ = std::move(index);
  next.revisions_.push_back(std::move(rev));
  return next;
}

}  // namespace apievo
