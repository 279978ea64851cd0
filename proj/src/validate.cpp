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

#include <map>
#include <set>

#include "apievo/adl.hpp"

namespace apievo {
namespace {

class Validator {
 public:
  explicit Validator(const ApiDefinition& def) : def_(def) {}

  std::vector<Diagnostic> Run() {
    CheckTopLevelNames();
    for (const auto& element : def_.elements) {
      if (const auto* r = std::get_if<RecordType>(&element)) {
        CheckRecord(*r);
      } else if (const auto* e = std::get_if<EnumType>(&element)) {
        CheckEnum(*e);
      } else {
        CheckService(std::get<Service>(element));
      }
    }
    return std::move(out_);
  }

 private:
  void Report(ErrorCode code, std::string path, std::string message) {
    out_.push_back(
        {Severity::kError, code, std::move(path), std::move(message)});
  }

  void CheckTopLevelNames() {
    std::map<std::string, std::string> publics;   // public -> kind
    std::map<std::string, std::string> internals; // internal -> public
    for (const auto& element : def_.elements) {
      const auto& name = ElementName(element);
      if (!publics.emplace(name, "").second) {
        Report(ErrorCode::kDuplicateName, name,
               "another type or service is already named '" + name + "'");
        continue;
      }
      const auto& internal = ElementInternalName(element);
      auto [it, inserted] = internals.emplace(internal, name);
      if (!inserted) {
        Report(ErrorCode::kDuplicateInternalName, name,
               "internal name '" + internal + "' is already used by '" +
                   it->second + "'");
      }
    }
  }

  // Walks the supertype chain. Returns false on an unknown supertype or a
  // cycle; both are reported by CheckRecord for the offending record.
  bool Ancestors(const RecordType& r, std::vector<const RecordType*>& chain) const {
    std::set<std::string> seen{r.name};
    const RecordType* cur = &r;
    while (cur->super_type) {
      const RecordType* parent = def_.FindRecord(*cur->super_type);
      if (parent == nullptr || !seen.insert(parent->name).second) return false;
      chain.push_back(parent);
      cur = parent;
    }
    return true;
  }

  bool OnCycle(const RecordType& r) const {
    std::set<std::string> seen;
    const RecordType* cur = &r;
    while (cur != nullptr && cur->super_type) {
      if (!seen.insert(cur->name).second) return false;
      cur = def_.FindRecord(*cur->super_type);
      if (cur != nullptr && cur->name == r.name) return true;
    }
    return false;
  }

  void CheckTypeRef(const TypeRef& type, const std::string& path) {
    switch (type.kind) {
      case TypeRef::Kind::kInt32:
        return;
      case TypeRef::Kind::kNumeric:
      case TypeRef::Kind::kString:
        if (type.bound && *type.bound < 1) {
          Report(ErrorCode::kInvalidBound, path,
                 "bound of '" + type.ToString() + "' must be at least 1");
        }
        return;
      case TypeRef::Kind::kList:
        if (type.bound && *type.bound < 1) {
          Report(ErrorCode::kInvalidBound, path,
                 "list bound of '" + type.ToString() + "' must be at least 1");
        }
        CheckTypeRef(*type.element, path);
        return;
      case TypeRef::Kind::kNamed: {
        const Element* target = def_.Find(type.name);
        if (target == nullptr) {
          Report(ErrorCode::kUnknownTypeReference, path,
                 "unknown type '" + type.name + "'");
        } else if (std::holds_alternative<Service>(*target)) {
          Report(ErrorCode::kInvalidTypeUsage, path,
                 "'" + type.name + "' is a service, not a type");
        } else if (const auto* r = std::get_if<RecordType>(target);
                   r != nullptr && r->is_exception()) {
          Report(ErrorCode::kInvalidTypeUsage, path,
                 "exception type '" + type.name +
                     "' may only appear in a throws list");
        }
        return;
      }
    }
  }

  void CheckFieldReplaces(const Field& f, const std::string& path) {
    if (!f.replaces || f.replaces->nothing) return;
    const auto& names = f.replaces->names;
    if (names.size() < 2) return;
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!n.qualified()) {
        Report(ErrorCode::kInvalidReplacesClause, path,
               "a replaces list naming several fields must qualify each of "
               "them with its type");
        return;
      }
      if (!seen.insert(n.ToString()).second) {
        Report(ErrorCode::kInvalidReplacesClause, path,
               "'" + n.ToString() + "' is listed twice");
        return;
      }
    }
  }

  void CheckRecord(const RecordType& r) {
    if (r.super_type) {
      const Element* parent = def_.Find(*r.super_type);
      const auto* parent_record =
          parent ? std::get_if<RecordType>(parent) : nullptr;
      if (parent == nullptr) {
        Report(ErrorCode::kUnknownTypeReference, r.name,
               "unknown supertype '" + *r.super_type + "'");
      } else if (parent_record == nullptr ||
                 parent_record->kind != r.kind) {
        Report(ErrorCode::kInvalidTypeUsage, r.name,
               std::string(r.is_exception() ? "an exception" : "a record") +
                   " cannot extend '" + *r.super_type + "'");
      } else if (OnCycle(r)) {
        Report(ErrorCode::kCyclicInheritance, r.name,
               "'" + r.name + "' inherits from itself");
      }
    }

    std::map<std::string, std::string> names;      // public -> owner
    std::map<std::string, std::string> internals;  // internal -> public
    std::vector<const RecordType*> chain;
    if (Ancestors(r, chain)) {
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const auto& f : (*it)->fields) {
          names.emplace(f.name, (*it)->name);
          internals.emplace(f.internal_name(), f.name);
        }
      }
    }
    for (const auto& f : r.fields) {
      const std::string path = r.name + "." + f.name;
      CheckTypeRef(f.type, path);
      CheckFieldReplaces(f, path);
      auto [it, inserted] = names.emplace(f.name, r.name);
      if (!inserted) {
        Report(ErrorCode::kDuplicateName, path,
               it->second == r.name
                   ? "field '" + f.name + "' is declared twice"
                   : "field '" + f.name + "' is already inherited from '" +
                         it->second + "'");
        continue;
      }
      auto [iit, iinserted] = internals.emplace(f.internal_name(), f.name);
      if (!iinserted) {
        Report(ErrorCode::kDuplicateInternalName, path,
               "internal name '" + f.internal_name() +
                   "' is already used by field '" + iit->second + "'");
      }
    }
  }

  void CheckEnum(const EnumType& e) {
    std::set<std::string> members;
    for (const auto& m : e.members) {
      if (!members.insert(m.name).second) {
        Report(ErrorCode::kDuplicateName, e.name + "." + m.name,
               "member '" + m.name + "' is declared twice");
      }
    }
  }

  void CheckOperationType(const std::string& name, const std::string& path,
                          bool want_exception) {
    const Element* target = def_.Find(name);
    if (target == nullptr) {
      Report(ErrorCode::kUnknownTypeReference, path,
             "unknown type '" + name + "'");
      return;
    }
    const auto* r = std::get_if<RecordType>(target);
    if (r == nullptr || r->is_exception() != want_exception) {
      Report(ErrorCode::kInvalidTypeUsage, path,
             "'" + name + "' must be " +
                 (want_exception ? "an exception type" : "a record type"));
    }
  }

  void CheckService(const Service& s) {
    std::set<std::string> names;
    std::map<std::string, std::string> internals;
    for (const auto& op : s.operations) {
      const std::string path = s.name + "." + op.name;
      if (!names.insert(op.name).second) {
        Report(ErrorCode::kDuplicateName, path,
               "operation '" + op.name + "' is declared twice");
        continue;
      }
      auto [it, inserted] = internals.emplace(op.internal_name(), op.name);
      if (!inserted) {
        Report(ErrorCode::kDuplicateInternalName, path,
               "internal name '" + op.internal_name() +
                   "' is already used by operation '" + it->second + "'");
      }
      CheckOperationType(op.input, path, false);
      CheckOperationType(op.output, path, false);
      std::set<std::string> thrown;
      for (const auto& t : op.throws) {
        CheckOperationType(t, path, true);
        if (!thrown.insert(t).second) {
          Report(ErrorCode::kDuplicateName, path,
                 "'" + t + "' is thrown twice");
        }
      }
    }
  }

  const ApiDefinition& def_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> ValidateWellformedness(const ApiDefinition& definition) {
  return Validator(definition).Run();
}

}  // namespace apievo
