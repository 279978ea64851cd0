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


#include "apievo/resolution.hpp"

#include <algorithm>
#include <sstream>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"

namespace apievo {

ApiDefinition ParseClientDefinition(std::string_view text) {
  ApiDefinition def = ParseDefinition(text);
  if (def.HasReplacesClauses()) {
    throw Error(ErrorCode::kReplacesInClient, def.name,
                "client definitions cannot contain replaces clauses");
  }
  return def;
}

const FieldMatch* RecordMatch::ForClient(std::string_view field) const {
  for (const auto& f : fields) {
    if (f.client_field == field) return &f;
  }
  return nullptr;
}

const std::string* EnumMatch::ClientMember(std::string_view internal) const {
  for (const auto& [client, mapped] : members) {
    if (mapped == internal) return &client;
  }
  return nullptr;
}

const RecordMatch* ResolutionMap::ForClient(std::string_view client_type) const {
  for (const auto& r : records) {
    if (r.client_type == client_type) return &r;
  }
  return nullptr;
}

const RecordMatch* ResolutionMap::ForInternal(std::string_view internal_type) const {
  for (const auto& r : records) {
    if (r.internal_type == internal_type) return &r;
  }
  return nullptr;
}

const EnumMatch* ResolutionMap::EnumForClient(std::string_view client_enum) const {
  for (const auto& e : enums) {
    if (e.client_enum == client_enum) return &e;
  }
  return nullptr;
}

std::string ResolutionMap::ToText() const {
  std::ostringstream out;
  out << "resolution of " << api_name << " client against revision "
      << provider_revision << '\n';
  for (const auto& e : enums) {
    out << "enum " << e.client_enum << " -> " << e.internal_enum << '\n';
    for (const auto& [client, internal] : e.members) {
      out << "  " << client << " -> " << internal << '\n';
    }
  }
  for (const auto& r : records) {
    out << "record " << r.client_type << " -> " << r.internal_type << '\n';
    for (const auto& f : r.fields) {
      out << "  " << f.client_field << " -> "
          << (f.matched ? f.internal_field : "(absent)") << '\n';
    }
    for (const auto& i : r.ignored) out << "  (ignored) " << i << '\n';
  }
  for (const auto& op : operations) {
    out << "operation " << op.client_path << " -> " << op.internal_path << '\n';
  }
  return out.str();
}

namespace {

std::string Leaf(const std::string& path) {
  return path.substr(path.find('.') + 1);
}

// Empty result: the shapes match.
std::string CompareShapes(const TypeShape& client, const TypeShape& provider) {
  auto describe = [&] {
    return "client type " + client.ToString() + " does not match provider type " +
           provider.ToString();
  };
  const bool client_record = client.kind == TypeShape::Kind::kRecord ||
                             client.kind == TypeShape::Kind::kUnion;
  const bool provider_record = provider.kind == TypeShape::Kind::kRecord ||
                               provider.kind == TypeShape::Kind::kUnion;
  if (client_record && provider_record) {
    for (const auto& n : client.names) {
      if (std::find(provider.names.begin(), provider.names.end(), n) ==
          provider.names.end()) {
        return describe();
      }
    }
    return {};
  }
  if (client.kind != provider.kind || client.bound != provider.bound) return describe();
  if (client.kind == TypeShape::Kind::kEnum && client.name() != provider.name()) {
    return describe();
  }
  if (client.kind == TypeShape::Kind::kList &&
      !CompareShapes(*client.element, *provider.element).empty()) {
    return describe();
  }
  return {};
}

}  // namespace

ResolutionMap Resolve(const ApiDefinition& client, int provider_revision,
                      const RevisionHistory& history,
                      std::shared_ptr<const InternalRepresentation> internal) {
  if (client.name != history.api_name()) {
    throw Error(ErrorCode::kApiNameMismatch, client.name,
                "client is written for '" + client.name + "', not '" +
                    history.api_name() + "'");
  }
  if (client.HasReplacesClauses()) {
    throw Error(ErrorCode::kReplacesInClient, client.name,
                "client definitions cannot contain replaces clauses");
  }
  if (auto diagnostics = ValidateWellformedness(client); !diagnostics.empty()) {
    throw Error(std::move(diagnostics));
  }
  history.revision(provider_revision);
  if (!internal->supports(provider_revision)) {
    throw Error(ErrorCode::kUnsupportedRevision, std::to_string(provider_revision),
                "revision " + std::to_string(provider_revision) +
                    " is not in the supported set");
  }

  ResolutionMap map;
  map.api_name = client.name;
  map.provider_revision = provider_revision;
  map.client_schema = DeriveSchema(FlatModel(std::make_shared<const ApiDefinition>(client)));
  map.provider_schema = DeriveSchema(history, provider_revision);
  map.internal = internal;
  const Schema& provider = map.provider_schema;
  auto representative = [&](const std::string& path) {
    return internal->Representative(provider_revision, path);
  };

  std::vector<Diagnostic> errors;
  auto fail = [&](ErrorCode code, std::string path, std::string message) {
    errors.push_back({Severity::kError, code, std::move(path), std::move(message)});
  };

  for (const auto& e : map.client_schema.enums) {
    const SchemaEnum* p = provider.FindEnum(e.name);
    if (p == nullptr) {
      fail(ErrorCode::kTypeMismatch, e.name,
           "provider revision has no enum '" + e.name + "'");
      continue;
    }
    EnumMatch match{e.name, representative(e.name), {}};
    for (const auto& m : e.members) {
      const std::string path = e.name + "." + m;
      if (p->IndexOf(m) < 0) {
        fail(ErrorCode::kTypeMismatch, path,
             "provider enum '" + e.name + "' has no member '" + m + "'");
        continue;
      }
      match.members[m] = Leaf(representative(path));
    }
    map.enums.push_back(std::move(match));
  }

  for (const auto& r : map.client_schema.records) {
    const SchemaRecord* p = provider.FindRecord(r.name);
    if (p == nullptr || p->is_exception != r.is_exception) {
      fail(ErrorCode::kTypeMismatch, r.name,
           p == nullptr ? "provider revision has no type '" + r.name + "'"
                        : "'" + r.name + "' is a record on one side and an "
                                         "exception on the other");
      continue;
    }
    RecordMatch match;
    match.client_type = r.name;
    match.client_internal = r.internal_name;
    match.internal_type = representative(r.name);
    for (const auto& f : r.fields) {
      const std::string path = r.name + "." + f.name;
      FieldMatch fm;
      fm.client_field = f.name;
      fm.client_internal = f.internal_name;
      fm.client_optionality = f.optionality;
      const SchemaField* pf = p->FindField(f.name);
      if (pf == nullptr) {
        if (f.optionality != Optionality::kOptional) {
          fail(ErrorCode::kMissingMandatoryElement, path,
               "provider revision has no field '" + f.name +
                   "' and the client does not declare it optional");
          continue;
        }
        match.fields.push_back(std::move(fm));
        continue;
      }
      if (auto why = CompareShapes(f.type, pf->type); !why.empty()) {
        fail(ErrorCode::kTypeMismatch, path, why);
        continue;
      }
      fm.matched = true;
      fm.internal_field = Leaf(representative(path));
      fm.provider_optionality = pf->optionality;
      match.fields.push_back(std::move(fm));
    }
    for (const auto& pf : p->fields) {
      if (r.FindField(pf.name) != nullptr) continue;
      if (pf.optionality == Optionality::kMandatory) {
        fail(ErrorCode::kMissingMandatoryElement, r.name + "." + pf.name,
             "the provider requires field '" + pf.name +
                 "' but the client does not declare it");
        continue;
      }
      match.ignored.push_back(pf.name);
    }
    map.records.push_back(std::move(match));
  }

  for (const auto& s : map.client_schema.services) {
    const SchemaService* ps = provider.FindService(s.name);
    if (ps == nullptr) {
      fail(ErrorCode::kTypeMismatch, s.name,
           "provider revision has no service '" + s.name + "'");
      continue;
    }
    for (const auto& op : s.operations) {
      const std::string path = s.name + "." + op.name;
      const SchemaOperation* pop = ps->FindOperation(op.name);
      if (pop == nullptr) {
        fail(ErrorCode::kTypeMismatch, path,
             "provider service has no operation '" + op.name + "'");
        continue;
      }
      auto in = CompareShapes(op.input, pop->input);
      auto out = CompareShapes(op.output, pop->output);
      if (!in.empty() || !out.empty()) {
        fail(ErrorCode::kTypeMismatch, path, in.empty() ? out : in);
        continue;
      }
      map.operations.push_back({path, representative(path)});
    }
  }
  if (!errors.empty()) throw Error(std::move(errors));

  auto by = [](auto member) {
    return [member](const auto& a, const auto& b) { return a.*member < b.*member; };
  };
  std::sort(map.records.begin(), map.records.end(), by(&RecordMatch::client_type));
  std::sort(map.enums.begin(), map.enums.end(), by(&EnumMatch::client_enum));
  std::sort(map.operations.begin(), map.operations.end(),
            by(&OperationMatch::client_path));
  return map;
}

}  // namespace apievo
