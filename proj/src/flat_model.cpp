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

#include "apievo/flat_model.hpp"

#include <algorithm>

namespace apievo {

const FlatField* FlatRecord::FindField(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool FlatRecord::IsSubtypeOf(std::string_view other) const {
  if (decl->name == other) return true;
  return std::find(ancestors.begin(), ancestors.end(), other) !=
         ancestors.end();
}

FlatModel::FlatModel(DefinitionPtr definition)
    : definition_(std::move(definition)) {
  const ApiDefinition& def = *definition_;
  for (std::size_t i = 0; i < def.elements.size(); ++i) {
    const auto* r = std::get_if<RecordType>(&def.elements[i]);
    if (r == nullptr) continue;
    FlatRecord flat;
    flat.decl = r;
    flat.position = i;
    for (const RecordType* cur = r; cur->super_type;) {
      cur = def.FindRecord(*cur->super_type);
      flat.ancestors.push_back(cur->name);
    }
    records_.emplace(r->name, std::move(flat));
  }

  for (auto& [name, flat] : records_) {
    // Default optionality is inherited down the chain unless overridden.
    std::vector<const RecordType*> chain;  // root-most first
    for (auto it = flat.ancestors.rbegin(); it != flat.ancestors.rend(); ++it) {
      chain.push_back(records_.at(*it).decl);
    }
    chain.push_back(flat.decl);
    std::optional<Optionality> inherited;
    for (const RecordType* level : chain) {
      if (level->default_optionality) inherited = level->default_optionality;
      const Optionality level_default =
          inherited.value_or(Optionality::kMandatory);
      for (const auto& f : level->fields) {
        flat.fields.push_back({f.name, f.internal_name(), level->name, &f,
                               f.optionality.value_or(level_default)});
      }
    }
    flat.default_optionality = inherited.value_or(Optionality::kMandatory);
  }

  for (const auto& element : def.elements) {
    if (const auto* r = std::get_if<RecordType>(&element)) {
      order_.push_back(&records_.at(r->name));
    }
  }
  for (auto& [name, flat] : records_) {
    for (const FlatRecord* candidate : order_) {
      if (candidate != &flat && !candidate->decl->is_abstract &&
          candidate->IsSubtypeOf(name)) {
        flat.alternatives.push_back(candidate->name());
      }
    }
    if (!flat.decl->is_abstract) flat.alternatives.push_back(name);
  }
}

const FlatRecord* FlatModel::record(std::string_view name) const {
  auto it = records_.find(name);
  return it == records_.end() ? nullptr : &it->second;
}

const EnumType* FlatModel::enumeration(std::string_view name) const {
  return definition_->FindEnum(name);
}

const Service* FlatModel::service(std::string_view name) const {
  return definition_->FindService(name);
}

}  // namespace apievo
