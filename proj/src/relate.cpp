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
#include <cstdint>
#include <set>
#include <type_traits>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"
#include "apievo/revision.hpp"

namespace apievo {

bool TypesRelated(const TypeRef& older, const FlatModel& previous,
                  const TypeRef& newer, const FlatModel& current,
                  const std::map<std::string, std::string>& type_pred) {
  if (older.kind != newer.kind) return false;
  switch (older.kind) {
    case TypeRef::Kind::kInt32:
      return true;
    case TypeRef::Kind::kNumeric:
    case TypeRef::Kind::kString:
      return older.bound == newer.bound;
    case TypeRef::Kind::kList:
      return older.bound == newer.bound &&
             TypesRelated(*older.element, previous, *newer.element, current,
                          type_pred);
    case TypeRef::Kind::kNamed:
      break;
  }
  auto pred = type_pred.find(newer.name);
  const bool directly = pred != type_pred.end() && pred->second == older.name;
  if (previous.enumeration(older.name) != nullptr ||
      current.enumeration(newer.name) != nullptr) {
    return directly && previous.enumeration(older.name) != nullptr &&
           current.enumeration(newer.name) != nullptr;
  }
  const FlatRecord* old_record = previous.record(older.name);
  const FlatRecord* new_record = current.record(newer.name);
  if (old_record == nullptr || new_record == nullptr ||
      old_record->decl->kind != new_record->decl->kind) {
    return false;
  }
  if (directly) return true;
  // A reference to a different type still carries over if every record the
  // old reference could hold lives on among the new alternatives.
  if (old_record->alternatives.empty()) return false;
  for (const auto& alternative : old_record->alternatives) {
    bool found = false;
    for (const auto& candidate : new_record->alternatives) {
      auto it = type_pred.find(candidate);
      if (it != type_pred.end() && it->second == alternative) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

bool SameKind(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ra = std::get_if<RecordType>(&a)) {
    return ra->kind == std::get<RecordType>(b).kind;
  }
  return true;
}

std::string Quoted(const std::string& s) { return "'" + s + "'"; }

template <typename Key>
std::string Path(const Key& key) {
  if constexpr (std::is_same_v<Key, MemberKey>) {
    return key.ToString();
  } else {
    return key;
  }
}

class Relator {
 public:
  Relator(const FlatModel& previous, const FlatModel& current)
      : prev_(previous), cur_(current) {}

  PredecessorMap Run() {
    RelateTopLevel();
    CheckSupertypes();
    RelateEnumMembers();
    RelateOperations();
    RelateFields();
    if (!errors_.empty()) throw Error(std::move(errors_));
    return std::move(map_);
  }

 private:
  void Report(ErrorCode code, std::string path, std::string message) {
    errors_.push_back(
        {Severity::kError, code, std::move(path), std::move(message)});
  }

  template <typename Key>
  void ReportMultipleClaims(const std::map<Key, std::vector<Key>>& claims) {
    for (const auto& [older, claimants] : claims) {
      if (claimants.size() < 2) continue;
      std::string names;
      for (std::size_t i = 0; i < claimants.size(); ++i) {
        if (i > 0) names += ", ";
        names += Quoted(Path(claimants[i]));
      }
      Report(ErrorCode::kMultipleSuccessors, Path(older),
             Quoted(Path(older)) + " has several successors: " + names);
    }
  }

  const std::string* Pred(const std::string& type) const {
    auto it = map_.types.find(type);
    return it == map_.types.end() ? nullptr : &it->second;
  }

  void RelateTopLevel() {
    std::map<std::string, std::vector<std::string>> claims;
    for (const auto& element : cur_.definition().elements) {
      const auto& name = ElementName(element);
      const auto& clause = ElementReplaces(element);
      std::string target;
      if (clause) {
        if (clause->nothing) continue;
        target = clause->names.front().field;
        if (prev_.definition().Find(target) == nullptr) {
          Report(ErrorCode::kUnknownPredecessor, name,
                 Quoted(target) + " does not exist in the previous revision");
          continue;
        }
      } else {
        if (prev_.definition().Find(name) == nullptr) continue;
        target = name;
      }
      claims[target].push_back(name);
      const Element& old = *prev_.definition().Find(target);
      if (!SameKind(old, element)) {
        map_.type_changes[name] = target;
      } else if (std::holds_alternative<Service>(element)) {
        map_.services[name] = target;
      } else {
        map_.types[name] = target;
      }
    }
    ReportMultipleClaims(claims);
  }

  void CheckSupertypes() {
    for (const auto& [newer, older] : map_.types) {
      const FlatRecord* n = cur_.record(newer);
      const FlatRecord* o = prev_.record(older);
      if (n == nullptr || o == nullptr || !o->decl->super_type) continue;
      const auto& old_super = *o->decl->super_type;
      const std::string* mapped =
          n->decl->super_type ? Pred(*n->decl->super_type) : nullptr;
      if (mapped == nullptr || *mapped != old_super) {
        Report(ErrorCode::kChangedSupertype, newer,
               "the supertype " + Quoted(old_super) + " of " + Quoted(older) +
                   " cannot be changed or removed");
      }
    }
  }

  // Resolves the claim of a member with a simple replaces clause inside an
  // owner whose predecessor is `old_owner` (null for new owners). Returns
  // the claimed name, or an empty string.
  template <typename HasMember>
  std::string SimpleClaim(const std::optional<ReplacesClause>& clause,
                          const std::string& name, const std::string& path,
                          const std::string* old_owner, HasMember has_member) {
    if (clause) {
      if (clause->nothing) return {};
      const auto& target = clause->names.front().field;
      if (old_owner == nullptr) {
        Report(ErrorCode::kUnknownPredecessor, path,
               "the owner of " + Quoted(path) +
                   " has no predecessor, so there is no " + Quoted(target) +
                   " to replace");
        return {};
      }
      if (!has_member(target)) {
        Report(ErrorCode::kUnknownPredecessor, path,
               Quoted(target) + " does not exist in " + Quoted(*old_owner));
        return {};
      }
      return target;
    }
    if (old_owner != nullptr && has_member(name)) return name;
    return {};
  }

  void RelateEnumMembers() {
    std::map<MemberKey, std::vector<MemberKey>> claims;
    for (const auto& element : cur_.definition().elements) {
      const auto* e = std::get_if<EnumType>(&element);
      if (e == nullptr) continue;
      const std::string* pred = Pred(e->name);
      const EnumType* old = pred ? prev_.enumeration(*pred) : nullptr;
      for (const auto& m : e->members) {
        const MemberKey key{e->name, m.name};
        auto target = SimpleClaim(
            m.replaces, m.name, key.ToString(), old ? pred : nullptr,
            [old](const std::string& n) {
              for (const auto& om : old->members) {
                if (om.name == n) return true;
              }
              return false;
            });
        if (target.empty()) continue;
        const MemberKey older{*pred, target};
        claims[older].push_back(key);
        map_.enum_members[key] = older;
      }
    }
    ReportMultipleClaims(claims);
  }

  void RelateOperations() {
    std::map<MemberKey, std::vector<MemberKey>> claims;
    for (const auto& element : cur_.definition().elements) {
      const auto* s = std::get_if<Service>(&element);
      if (s == nullptr) continue;
      auto it = map_.services.find(s->name);
      const std::string* pred = it == map_.services.end() ? nullptr : &it->second;
      const Service* old = pred ? prev_.service(*pred) : nullptr;
      for (const auto& op : s->operations) {
        const MemberKey key{s->name, op.name};
        auto target = SimpleClaim(op.replaces, op.name, key.ToString(), pred,
                                  [old](const std::string& n) {
                                    for (const auto& o : old->operations) {
                                      if (o.name == n) return true;
                                    }
                                    return false;
                                  });
        if (target.empty()) continue;
        const MemberKey older{*pred, target};
        claims[older].push_back(key);
        const ServiceOperation* old_op = nullptr;
        for (const auto& o : old->operations) {
          if (o.name == target) old_op = &o;
        }
        const bool related =
            TypesRelated(TypeRef::Named(old_op->input), prev_,
                         TypeRef::Named(op.input), cur_, map_.types) &&
            TypesRelated(TypeRef::Named(old_op->output), prev_,
                         TypeRef::Named(op.output), cur_, map_.types);
        (related ? map_.operations : map_.operation_type_changes)[key] = older;
      }
    }
    ReportMultipleClaims(claims);
  }

  // Checks the replaces clause of a field declaration once, independent of
  // the copies the field has in subtypes.
  bool CheckFieldClause(const FlatRecord& owner, const Field& field) {
    const std::string path = owner.name() + "." + field.name;
    const auto& names = field.replaces->names;
    bool ok = true;
    for (const auto& entry : names) {
      if (!entry.qualified()) {
        const std::string* pred = Pred(owner.name());
        const FlatRecord* old = pred ? prev_.record(*pred) : nullptr;
        if (old == nullptr) {
          Report(ErrorCode::kUnknownPredecessor, path,
                 Quoted(owner.name()) + " has no predecessor, so there is no " +
                     Quoted(entry.field) + " to replace");
          ok = false;
        } else if (old->FindField(entry.field) == nullptr) {
          Report(ErrorCode::kUnknownPredecessor, path,
                 Quoted(entry.field) + " does not exist in " + Quoted(*pred));
          ok = false;
        }
        continue;
      }
      const FlatRecord* source = prev_.record(entry.type);
      if (source == nullptr || source->FindField(entry.field) == nullptr) {
        Report(ErrorCode::kUnknownPredecessor, path,
               Quoted(entry.ToString()) +
                   " does not exist in the previous revision");
        ok = false;
        continue;
      }
      bool applicable = false;
      for (const FlatRecord* candidate : cur_.records()) {
        if (!candidate->IsSubtypeOf(owner.name())) continue;
        const std::string* pred = Pred(candidate->name());
        const FlatRecord* old = pred ? prev_.record(*pred) : nullptr;
        if (old != nullptr && old->IsSubtypeOf(entry.type)) {
          applicable = true;
          break;
        }
      }
      if (!applicable) {
        Report(ErrorCode::kUnknownPredecessor, path,
               Quoted(entry.ToString()) + " is not inherited by the "
                   "predecessor of " + Quoted(owner.name()) +
                   " or of any of its subtypes");
        ok = false;
      }
    }
    if (ok && names.size() > 1) {
      const TypeRef& first =
          prev_.record(names.front().type)->FindField(names.front().field)
              ->decl->type;
      for (std::size_t i = 1; i < names.size(); ++i) {
        const TypeRef& other =
            prev_.record(names[i].type)->FindField(names[i].field)->decl->type;
        if (!(other == first)) {
          Report(ErrorCode::kIncompatiblePullUpTypes, path,
                 "pulled-up fields " + Quoted(names.front().ToString()) + " (" +
                     first.ToString() + ") and " +
                     Quoted(names[i].ToString()) + " (" + other.ToString() +
                     ") differ in type");
          ok = false;
          break;
        }
      }
    }
    return ok;
  }

  void RelateFields() {
    std::set<const Field*> rejected;
    for (const FlatRecord* owner : cur_.records()) {
      for (const auto& field : owner->decl->fields) {
        if (field.replaces && !field.replaces->nothing &&
            !CheckFieldClause(*owner, field)) {
          rejected.insert(&field);
        }
      }
    }

    std::map<MemberKey, std::vector<MemberKey>> claims;
    for (const FlatRecord* record : cur_.records()) {
      const std::string* pred = Pred(record->name());
      const FlatRecord* old = pred ? prev_.record(*pred) : nullptr;
      if (old == nullptr) continue;
      for (const auto& field : record->fields) {
        if (rejected.count(field.decl) > 0) continue;
        const MemberKey key{record->name(), field.name};
        std::string target;
        const auto& clause = field.decl->replaces;
        if (!clause) {
          if (old->FindField(field.name) != nullptr) target = field.name;
        } else if (!clause->nothing) {
          // The entry naming the nearest type in the old hierarchy wins.
          std::size_t best = SIZE_MAX;
          bool ambiguous = false;
          for (const auto& entry : clause->names) {
            std::size_t distance;
            if (!entry.qualified() || entry.type == old->name()) {
              distance = 0;
            } else {
              auto a = std::find(old->ancestors.begin(), old->ancestors.end(),
                                 entry.type);
              if (a == old->ancestors.end()) continue;
              distance = 1 + static_cast<std::size_t>(a - old->ancestors.begin());
            }
            if (old->FindField(entry.field) == nullptr) continue;
            if (distance < best) {
              best = distance;
              target = entry.field;
              ambiguous = false;
            } else if (distance == best) {
              ambiguous = true;
            }
          }
          if (ambiguous) {
            Report(ErrorCode::kAmbiguousReplacement, key.ToString(),
                   "several entries of " + Quoted(clause->ToString()) +
                       " apply to " + Quoted(old->name()));
            continue;
          }
        }
        if (target.empty()) continue;
        const MemberKey older{old->name(), target};
        claims[older].push_back(key);
        const bool related =
            TypesRelated(old->FindField(target)->decl->type, prev_,
                         field.decl->type, cur_, map_.types);
        (related ? map_.fields : map_.field_type_changes)[key] = older;
      }
    }
    ReportMultipleClaims(claims);
  }

  const FlatModel& prev_;
  const FlatModel& cur_;
  PredecessorMap map_;
  std::vector<Diagnostic> errors_;
};

}  // namespace

PredecessorMap Relate(const FlatModel& previous, const FlatModel& current) {
  return Relator(previous, current).Run();
}

PredecessorMap Relate(const ApiDefinition& previous,
                      const ApiDefinition& current) {
  for (const ApiDefinition* def : {&previous, &current}) {
    auto diagnostics = ValidateWellformedness(*def);
    if (!diagnostics.empty()) throw Error(std::move(diagnostics));
  }
  FlatModel prev(std::make_shared<const ApiDefinition>(previous));
  FlatModel cur(std::make_shared<const ApiDefinition>(current));
  return Relate(prev, cur);
}

}  // namespace apievo
