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
/// Inheritance-expanded view of a well-formed definition. Every record
/// carries its own copy of each inherited field, and every reference to a
/// record stands for the set of concrete records it may hold at runtime.

#ifndef APIEVO_FLAT_MODEL_HPP_
#define APIEVO_FLAT_MODEL_HPP_

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"

namespace apievo {

struct FlatField {
  std::string name;
  std::string internal_name;
  std::string declaring_type;
  const Field* decl = nullptr;
  Optionality optionality = Optionality::kMandatory;
};

struct FlatRecord {
  const RecordType* decl = nullptr;
  std::size_t position = 0;
  std::vector<std::string> ancestors;  // nearest first
  std::vector<FlatField> fields;       // inherited first, root-most first
  Optionality default_optionality = Optionality::kMandatory;
  // Concrete records a reference to this type may hold: concrete
  // transitive subtypes in declaration order, then the type itself if it
  // is concrete.
  std::vector<std::string> alternatives;

  const std::string& name() const { return decl->name; }
  const FlatField* FindField(std::string_view name) const;
  bool IsSubtypeOf(std::string_view other) const;  // reflexive
};

class FlatModel {
 public:
  /// `definition` must have passed ValidateWellformedness.
  explicit FlatModel(DefinitionPtr definition);

  const ApiDefinition& definition() const { return *definition_; }
  const DefinitionPtr& definition_ptr() const { return definition_; }

  const FlatRecord* record(std::string_view name) const;
  const EnumType* enumeration(std::string_view name) const;
  const Service* service(std::string_view name) const;

  /// Records and exceptions in declaration order.
  const std::vector<const FlatRecord*>& records() const { return order_; }

 private:
  DefinitionPtr definition_;
  std::map<std::string, FlatRecord, std::less<>> records_;
  std::vector<const FlatRecord*> order_;
};

}  // namespace apievo

#endif  // APIEVO_FLAT_MODEL_HPP_
