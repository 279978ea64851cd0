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

#include <sstream>

#include "apievo/adl.hpp"

namespace apievo {
namespace {

void PrintSuffix(std::ostream& out, const std::optional<ReplacesClause>& replaces,
                 const std::optional<std::string>& alias) {
  if (replaces) out << ' ' << replaces->ToString();
  if (alias) out << " as " << *alias;
}

void Print(std::ostream& out, const RecordType& r) {
  out << "  ";
  if (r.is_abstract) out << "abstract ";
  if (r.default_optionality) {
    out << OptionalityName(*r.default_optionality) << ' ';
  }
  out << (r.is_exception() ? "exception " : "record ") << r.name;
  if (r.super_type) out << " extends " << *r.super_type;
  PrintSuffix(out, r.replaces, r.alias);
  out << " {\n";
  for (const auto& f : r.fields) {
    out << "    ";
    if (f.optionality) out << OptionalityName(*f.optionality) << ' ';
    out << f.type.ToString() << ' ' << f.name;
    PrintSuffix(out, f.replaces, f.alias);
    out << '\n';
  }
  out << "  }\n";
}

void Print(std::ostream& out, const EnumType& e) {
  out << "  enum " << e.name;
  PrintSuffix(out, e.replaces, e.alias);
  out << " {\n";
  for (const auto& m : e.members) {
    out << "    " << m.name;
    if (m.replaces) out << ' ' << m.replaces->ToString();
    out << '\n';
  }
  out << "  }\n";
}

void Print(std::ostream& out, const Service& s) {
  out << "  service " << s.name;
  PrintSuffix(out, s.replaces, s.alias);
  out << " {\n";
  for (const auto& op : s.operations) {
    out << "    " << op.output << ' ' << op.name << '(' << op.input << ')';
    PrintSuffix(out, op.replaces, op.alias);
    for (std::size_t i = 0; i < op.throws.size(); ++i) {
      out << (i == 0 ? " throws " : ", ") << op.throws[i];
    }
    out << '\n';
  }
  out << "  }\n";
}

}  // namespace

std::string PrintDefinition(const ApiDefinition& definition) {
  std::ostringstream out;
  out << "api " << definition.name << " {\n";
  for (std::size_t i = 0; i < definition.elements.size(); ++i) {
    if (i > 0) out << '\n';
    std::visit([&out](const auto& e) { Print(out, e); },
               definition.elements[i]);
  }
  out << "}\n";
  return out.str();
}

}  // namespace apievo
