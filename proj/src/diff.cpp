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
#include <tuple>

#include "apievo/error.hpp"
#include "apievo/revision.hpp"

namespace apievo {

std::string_view ElementKindName(ElementKind kind) {
  switch (kind) {
    case ElementKind::kType: return "type";
    case ElementKind::kField: return "field";
    case ElementKind::kEnumMember: return "member";
    case ElementKind::kService: return "service";
    case ElementKind::kOperation: return "operation";
  }
  return "type";
}

std::string_view ChangeKindName(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kAdded: return "added";
    case ChangeKind::kDeleted: return "deleted";
    case ChangeKind::kRenamed: return "renamed";
    case ChangeKind::kTypeChanged: return "type-changed";
    case ChangeKind::kPulledUp: return "pulled-up";
    case ChangeKind::kPushedDown: return "pushed-down";
  }
  return "added";
}

std::vector<Change> ChangeSet::Of(ChangeKind kind) const {
  std::vector<Change> out;
  for (const auto& c : changes) {
    if (c.kind == kind) out.push_back(c);
  }
  return out;
}

bool ChangeSet::Contains(ChangeKind kind, std::string_view path) const {
  for (const auto& c : changes) {
    if (c.kind != kind) continue;
    for (const auto* side : {&c.before, &c.after}) {
      if (std::find(side->begin(), side->end(), path) != side->end()) {
        return true;
      }
    }
  }
  return false;
}

namespace {

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string ChangeSet::ToText() const {
  std::ostringstream out;
  out << "diff " << from << " -> " << to << ": " << changes.size()
      << (changes.size() == 1 ? " change\n" : " changes\n");
  for (const auto& c : changes) {
    out << "  " << ChangeKindName(c.kind) << ' ' << ElementKindName(c.element)
        << ' ';
    if (c.kind == ChangeKind::kAdded) {
      out << Join(c.after);
    } else if (c.kind == ChangeKind::kDeleted) {
      out << Join(c.before);
    } else {
      out << Join(c.before) << " -> " << Join(c.after);
    }
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  return out.str();
}

namespace {

// One element of a revision as seen by the classifier.
struct Item {
  std::string path;
  std::string leaf;   // name within the owner
  int owner = -1;     // owner lineage, -1 for top-level elements
  std::string shape;  // type description for type-change details
};

using Items = std::map<int, Item>;  // lineage -> item

// Pairs items by lineage. Unpaired items with equal names inside the same
// owner are reported as a type change when `type_changes` is set.
void Classify(const Items& older, const Items& newer, ElementKind kind,
              bool type_changes, std::vector<Change>& out) {
  std::vector<const Item*> deleted;
  std::vector<const Item*> added;
  for (const auto& [id, item] : older) {
    auto it = newer.find(id);
    if (it == newer.end()) {
      deleted.push_back(&item);
    } else if (it->second.leaf != item.leaf) {
      out.push_back({ChangeKind::kRenamed, kind, {item.path}, {it->second.path}, {}});
    }
  }
  for (const auto& [id, item] : newer) {
    if (older.count(id) == 0) added.push_back(&item);
  }
  if (type_changes) {
    for (auto a = added.begin(); a != added.end();) {
      auto d = std::find_if(deleted.begin(), deleted.end(), [&](const Item* i) {
        return i->leaf == (*a)->leaf && i->owner == (*a)->owner;
      });
      if (d == deleted.end()) {
        ++a;
        continue;
      }
      out.push_back({ChangeKind::kTypeChanged, kind, {(*d)->path}, {(*a)->path},
                     (*d)->shape + " -> " + (*a)->shape});
      deleted.erase(d);
      a = added.erase(a);
    }
  }
  for (const Item* i : deleted) {
    out.push_back({ChangeKind::kDeleted, kind, {i->path}, {}, {}});
  }
  for (const Item* i : added) {
    out.push_back({ChangeKind::kAdded, kind, {}, {i->path}, {}});
  }
}

std::string ElementShape(const Element& e) {
  if (const auto* r = std::get_if<RecordType>(&e)) {
    return r->is_exception() ? "exception" : "record";
  }
  return std::holds_alternative<EnumType>(e) ? "enum" : "service";
}

Items TopLevel(const Revision& rev, bool services) {
  Items items;
  for (const auto& element : rev.definition->elements) {
    if (std::holds_alternative<Service>(element) != services) continue;
    const auto& name = ElementName(element);
    const int id = services ? rev.lineage.services.at(name)
                            : rev.lineage.types.at(name);
    items[id] = {name, name, -1, ElementShape(element)};
  }
  return items;
}

Items Members(const Revision& rev) {
  Items items;
  for (const auto& [key, id] : rev.lineage.enum_members) {
    items[id] = {key.ToString(), key.name, rev.lineage.types.at(key.owner), {}};
  }
  return items;
}

Items Operations(const Revision& rev) {
  Items items;
  for (const auto& [key, id] : rev.lineage.operations) {
    const Service* s = rev.definition->FindService(key.owner);
    std::string shape;
    for (const auto& op : s->operations) {
      if (op.name == key.name) shape = op.output + "(" + op.input + ")";
    }
    items[id] = {key.ToString(), key.name, rev.lineage.services.at(key.owner),
                 shape};
  }
  return items;
}

// Fields are related copy by copy; changes are reported per declaration.
void ClassifyFields(const Revision& a, const Revision& b,
                    std::vector<Change>& out) {
  struct Copy {
    std::string type;
    const FlatField* field;
  };
  auto copies = [](const Revision& rev) {
    std::map<int, Copy> out;
    for (const FlatRecord* record : rev.model->records()) {
      for (const auto& f : record->fields) {
        out[rev.lineage.fields.at({record->name(), f.name})] = {record->name(), &f};
      }
    }
    return out;
  };
  auto declarations = [](const Revision& rev) {
    std::map<std::string, Item> out;
    for (const FlatRecord* record : rev.model->records()) {
      for (const auto& f : record->decl->fields) {
        const std::string path = record->name() + "." + f.name;
        out[path] = {path, f.name, rev.lineage.types.at(record->name()),
                     f.type.ToString()};
      }
    }
    return out;
  };
  const auto old_copies = copies(a);
  const auto new_copies = copies(b);
  const auto old_decls = declarations(a);
  const auto new_decls = declarations(b);

  enum class Move { kNone, kUp, kDown };
  std::map<std::pair<std::string, std::string>, Move> pairs;
  for (const auto& [id, oc] : old_copies) {
    auto it = new_copies.find(id);
    if (it == new_copies.end()) continue;
    const Copy& nc = it->second;
    const std::string od = oc.field->declaring_type + "." + oc.field->name;
    const std::string nd = nc.field->declaring_type + "." + nc.field->name;
    const bool old_own = oc.field->declaring_type == oc.type;
    const bool new_own = nc.field->declaring_type == nc.type;
    Move move = Move::kNone;
    if (old_own && !new_own) move = Move::kUp;
    if (!old_own && new_own) move = Move::kDown;
    auto [p, inserted] = pairs.emplace(std::make_pair(od, nd), move);
    if (!inserted && p->second == Move::kNone) p->second = move;
  }

  std::set<std::string> old_paired;
  std::set<std::string> new_paired;
  std::map<std::string, std::vector<std::string>> ups;    // target -> sources
  std::map<std::string, std::vector<std::string>> downs;  // source -> targets
  for (const auto& [pair, move] : pairs) {
    const auto& [od, nd] = pair;
    old_paired.insert(od);
    new_paired.insert(nd);
    if (move == Move::kUp) {
      ups[nd].push_back(od);
    } else if (move == Move::kDown) {
      downs[od].push_back(nd);
    } else if (old_decls.at(od).leaf != new_decls.at(nd).leaf) {
      out.push_back({ChangeKind::kRenamed, ElementKind::kField, {od}, {nd}, {}});
    }
  }
  for (auto& [target, sources] : ups) {
    out.push_back({ChangeKind::kPulledUp, ElementKind::kField, sources, {target}, {}});
  }
  for (auto& [source, targets] : downs) {
    out.push_back({ChangeKind::kPushedDown, ElementKind::kField, {source}, targets, {}});
  }

  // Unpaired declarations go through the generic classifier; fake lineage
  // keys keep them apart.
  Items older, newer;
  int key = 0;
  for (const auto& [path, item] : old_decls) {
    if (old_paired.count(path) == 0) older[--key] = item;
  }
  for (const auto& [path, item] : new_decls) {
    if (new_paired.count(path) == 0) newer[--key] = item;
  }
  Classify(older, newer, ElementKind::kField, true, out);
}

}  // namespace

ChangeSet Diff(const RevisionHistory& history, int from, int to) {
  const Revision& a = history.revision(from);
  const Revision& b = history.revision(to);
  if (from > to) {
    throw Error(ErrorCode::kUnknownRevision, std::to_string(from),
                "revision " + std::to_string(from) + " is newer than " +
                    std::to_string(to));
  }
  ChangeSet set;
  set.from = from;
  set.to = to;
  if (from == to) return set;
  Classify(TopLevel(a, false), TopLevel(b, false), ElementKind::kType, true,
           set.changes);
  ClassifyFields(a, b, set.changes);
  Classify(Members(a), Members(b), ElementKind::kEnumMember, false, set.changes);
  Classify(TopLevel(a, true), TopLevel(b, true), ElementKind::kService, true,
           set.changes);
  Classify(Operations(a), Operations(b), ElementKind::kOperation, true,
           set.changes);
  std::stable_sort(set.changes.begin(), set.changes.end(),
                   [](const Change& x, const Change& y) {
                     auto key = [](const Change& c) {
                       const auto& first = c.before.empty() ? c.after.front()
                                                            : c.before.front();
                       return std::make_tuple(c.element, c.kind, first);
                     };
                     return key(x) < key(y);
                   });
  return set;
}

}  // namespace apievo
