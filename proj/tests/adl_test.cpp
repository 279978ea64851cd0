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


#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"
#include "apievo/flat_model.hpp"
#include "test_support.hpp"

namespace apievo {
namespace {

using testing::Corpus;
using testing::CorpusPath;
using testing::CorpusText;

std::vector<std::string> CorpusFiles() {
  std::vector<std::string> out;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(CorpusPath(""))) {
    if (entry.path().extension() == ".api") {
      out.push_back(std::filesystem::relative(entry.path(), CorpusPath("")).string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ErrorCode CodeOf(std::string_view text) {
  try {
    ParseDefinition(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorCode::kIoError;
}

TEST(ParseDefinition, ProviderDefinitionWithThreeChanges) {
  const ApiDefinition def = Corpus("customer/extended.api");
  EXPECT_EQ(def.name, "customer");
  const RecordType* customer = def.FindRecord("Customer");
  ASSERT_NE(customer, nullptr);
  ASSERT_EQ(customer->fields.size(), 6u);
  const Field& primary = customer->fields[3];
  EXPECT_EQ(primary.name, "primaryAddress");
  ASSERT_TRUE(primary.replaces.has_value());
  EXPECT_EQ(*primary.replaces, ReplacesClause::Of("address"));
  const Field& gender = customer->fields[5];
  EXPECT_EQ(gender.name, "gender");
  EXPECT_EQ(gender.internal_name(), "genderNew");
  EXPECT_EQ(gender.type, TypeRef::Named("Gender"));
  EXPECT_EQ(customer->fields[2].optionality, Optionality::kOptin);
  EXPECT_TRUE(ValidateWellformedness(def).empty());
}

TEST(ParseDefinition, EmptyDefinition) {
  const ApiDefinition def = ParseDefinition("api a.b {}");
  EXPECT_EQ(def.name, "a.b");
  EXPECT_TRUE(def.elements.empty());
}

TEST(ParseDefinition, BoundedListOfBoundedStrings) {
  const ApiDefinition def = ParseDefinition("api x { record R { string(5)[10] xs } }");
  const Field& xs = def.FindRecord("R")->fields.at(0);
  EXPECT_EQ(xs.type, TypeRef::List(TypeRef::String(5), 10));
  EXPECT_EQ(xs.type.ToString(), "string(5)[10]");
}

TEST(ParseDefinition, UnboundedForms) {
  const ApiDefinition def =
      ParseDefinition("api x { record R { string s numeric n int32* l int32[2]* nested } }");
  const auto& f = def.FindRecord("R")->fields;
  EXPECT_EQ(f[0].type, TypeRef::String(std::nullopt));
  EXPECT_EQ(f[1].type, TypeRef::Numeric(std::nullopt));
  EXPECT_EQ(f[2].type, TypeRef::List(TypeRef::Int32(), std::nullopt));
  EXPECT_EQ(f[3].type, TypeRef::List(TypeRef::List(TypeRef::Int32(), 2), std::nullopt));
}

TEST(ParseDefinition, IntegerIsInt32) {
  const ApiDefinition def = Corpus("clients/person_excerpt.api");
  const RecordType* customer = def.FindRecord("Customer");
  EXPECT_EQ(customer->internal_name(), "Person");
  EXPECT_EQ(customer->fields[1].internal_name(), "familyName");
  EXPECT_EQ(customer->fields[2].type, TypeRef::Int32());
}

TEST(ParseDefinition, SelfCycle) {
  EXPECT_EQ(CodeOf("api x { record R extends R {} }"), ErrorCode::kCyclicInheritance);
}

TEST(ParseDefinition, LongerCycle) {
  EXPECT_EQ(CodeOf("api x { record A extends C {} record B extends A {} record C extends B {} }"),
            ErrorCode::kCyclicInheritance);
}

TEST(ParseDefinition, CommentsAndWhitespace) {
  const ApiDefinition a = ParseDefinition(
      "// leading\napi   x{record R{ // trailing\n string   s\n}}\n// end");
  const ApiDefinition b = ParseDefinition("api x { record R { string s } }");
  EXPECT_EQ(a, b);
}

TEST(ParseDefinition, SyntaxErrorCarriesPositionAndExpectations) {
  try {
    ParseSyntax("api x {\n  record R {\n    string\n  }\n}");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntaxError);
    EXPECT_EQ(e.location().line, 4);
    EXPECT_EQ(e.location().column, 3);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_EQ(e.found(), "'}'");
  }
}

TEST(ParseDefinition, SyntaxErrors) {
  EXPECT_EQ(CodeOf(""), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("api {}"), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("api x { record R { string(4294967296) s } }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("api x { record R { string s } } trailing"), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("api x { record record {} }"), ErrorCode::kSyntaxError);
  EXPECT_EQ(CodeOf("api x { record R { string s # } }"), ErrorCode::kSyntaxError);
}

TEST(ParseDefinition, WellformednessErrors) {
  EXPECT_EQ(CodeOf("api x { record R { string(0) s } }"), ErrorCode::kInvalidBound);
  EXPECT_EQ(CodeOf("api x { record R { int32[0] s } }"), ErrorCode::kInvalidBound);
  EXPECT_EQ(CodeOf("api x { record R { Missing m } }"), ErrorCode::kUnknownTypeReference);
  EXPECT_EQ(CodeOf("api x { record R extends Missing {} }"), ErrorCode::kUnknownTypeReference);
  EXPECT_EQ(CodeOf("api x { record R {} enum R { A } }"), ErrorCode::kDuplicateName);
  EXPECT_EQ(CodeOf("api x { record R as Q {} record Q {} }"), ErrorCode::kDuplicateInternalName);
  EXPECT_EQ(CodeOf("api x { exception E {} record R { E e } }"), ErrorCode::kInvalidTypeUsage);
  EXPECT_EQ(CodeOf("api x { record R {} service S { R op(R) throws R } }"),
            ErrorCode::kInvalidTypeUsage);
  EXPECT_EQ(CodeOf("api x { record R { string a replaces b, c } }"),
            ErrorCode::kInvalidReplacesClause);
  EXPECT_EQ(CodeOf("api x { enum E { A A } }"), ErrorCode::kDuplicateName);
  EXPECT_EQ(CodeOf("api x { record P { string a } record R extends P { int32 a } }"),
            ErrorCode::kDuplicateName);
}

TEST(ValidateWellformedness, DuplicateRecordsReportedOnce) {
  const ApiDefinition def = ParseSyntax("api x { record C {} record C {} }");
  const auto diagnostics = ValidateWellformedness(def);
  ASSERT_EQ(diagnostics.size(), 1u);
  EXPECT_EQ(diagnostics[0].code, ErrorCode::kDuplicateName);
  EXPECT_EQ(diagnostics[0].path, "C");
}

TEST(ValidateWellformedness, DuplicateFieldReportedOnce) {
  const ApiDefinition def = ParseSyntax("api x { record R { string a int32 a } }");
  const auto diagnostics = ValidateWellformedness(def);
  ASSERT_EQ(diagnostics.size(), 1u);
  EXPECT_EQ(diagnostics[0].code, ErrorCode::kDuplicateName);
  EXPECT_EQ(diagnostics[0].path, "R.a");
  EXPECT_EQ(diagnostics[0].severity, Severity::kError);
}

TEST(ValidateWellformedness, EveryCorpusDefinitionIsWellFormed) {
  for (const auto& file : CorpusFiles()) {
    SCOPED_TRACE(file);
    EXPECT_TRUE(ValidateWellformedness(ParseSyntax(CorpusText(file))).empty());
  }
}

TEST(PrintDefinition, RoundTripsEveryCorpusFile) {
  for (const auto& file : CorpusFiles()) {
    SCOPED_TRACE(file);
    const ApiDefinition parsed = ParseSyntax(CorpusText(file));
    const std::string printed = PrintDefinition(parsed);
    EXPECT_EQ(ParseSyntax(printed), parsed);
    EXPECT_EQ(PrintDefinition(ParseSyntax(printed)), printed);
  }
}

// Records which grammar productions a definition uses.
void Collect(const ApiDefinition& def, std::set<std::string>& seen) {
  seen.insert("api");
  if (def.name.find('.') != std::string::npos) seen.insert("qualified api name");
  auto clause = [&](const std::optional<ReplacesClause>& r, const std::string& where) {
    if (!r) return;
    if (r->nothing) {
      seen.insert("replaces nothing");
    } else if (r->names.size() > 1) {
      seen.insert("replaces list");
    } else {
      seen.insert("replaces on " + where);
    }
    for (const auto& n : r->names) {
      if (n.qualified()) seen.insert("qualified replaces");
    }
  };
  auto type = [&](const TypeRef& t, auto& self) -> void {
    switch (t.kind) {
      case TypeRef::Kind::kInt32: seen.insert("int32"); break;
      case TypeRef::Kind::kNumeric:
        seen.insert(t.bound ? "numeric(n)" : "numeric");
        break;
      case TypeRef::Kind::kString:
        seen.insert(t.bound ? "string(n)" : "string");
        break;
      case TypeRef::Kind::kNamed: seen.insert("named type"); break;
      case TypeRef::Kind::kList:
        seen.insert(t.bound ? "list[n]" : "list*");
        if (t.element->kind == TypeRef::Kind::kList) seen.insert("nested list");
        self(*t.element, self);
        break;
    }
  };
  for (const auto& element : def.elements) {
    if (const auto* r = std::get_if<RecordType>(&element)) {
      seen.insert(r->is_exception() ? "exception" : "record");
      if (r->is_abstract) seen.insert("abstract");
      if (r->super_type) seen.insert("extends");
      if (r->alias) seen.insert("as on type");
      if (r->default_optionality) {
        seen.insert("type default " + std::string(OptionalityName(*r->default_optionality)));
      }
      clause(r->replaces, "type");
      for (const auto& f : r->fields) {
        seen.insert("field");
        if (f.optionality) {
          seen.insert("field " + std::string(OptionalityName(*f.optionality)));
        }
        if (f.alias) seen.insert("as on field");
        clause(f.replaces, "field");
        type(f.type, type);
      }
    } else if (const auto* e = std::get_if<EnumType>(&element)) {
      seen.insert("enum");
      if (e->alias) seen.insert("as on enum");
      clause(e->replaces, "enum");
      for (const auto& m : e->members) clause(m.replaces, "member");
    } else {
      const auto& s = std::get<Service>(element);
      seen.insert("service");
      if (s.alias) seen.insert("as on service");
      clause(s.replaces, "service");
      for (const auto& op : s.operations) {
        seen.insert("operation");
        if (op.alias) seen.insert("as on operation");
        if (!op.throws.empty()) seen.insert("throws");
        if (op.throws.size() > 1) seen.insert("throws list");
        clause(op.replaces, "operation");
      }
    }
  }
}

TEST(Grammar, CorpusCoversEveryProduction) {
  std::set<std::string> seen;
  for (const auto& file : CorpusFiles()) {
    const std::string text = CorpusText(file);
    if (text.find("//") != std::string::npos) seen.insert("comment");
    Collect(ParseSyntax(text), seen);
  }
  const std::set<std::string> required = {
      "api", "qualified api name", "comment", "record", "exception", "abstract",
      "extends", "as on type", "type default optional", "type default mandatory",
      "field", "field optional", "field optin", "field mandatory", "as on field",
      "replaces nothing", "replaces list", "qualified replaces", "replaces on type",
      "replaces on field", "replaces on enum", "replaces on member",
      "replaces on service", "replaces on operation", "int32", "numeric", "numeric(n)",
      "string", "string(n)", "named type", "list[n]", "list*", "nested list", "enum",
      "as on enum", "service", "as on service", "operation", "as on operation",
      "throws", "throws list"};
  for (const auto& production : required) {
    EXPECT_TRUE(seen.count(production)) << "no corpus file uses: " << production;
  }
}

TEST(FlatModel, EffectiveOptionalityIsInnermostExplicitValue) {
  for (const auto& file : CorpusFiles()) {
    SCOPED_TRACE(file);
    const auto def = std::make_shared<const ApiDefinition>(ParseDefinition(CorpusText(file)));
    const FlatModel model(def);
    for (const FlatRecord* record : model.records()) {
      for (const auto& f : record->fields) {
        // Walk from the declaring type up to the root.
        std::optional<Optionality> expected = f.decl->optionality;
        for (const RecordType* level = def->FindRecord(f.declaring_type);
             !expected && level != nullptr;
             level = level->super_type ? def->FindRecord(*level->super_type) : nullptr) {
          expected = level->default_optionality;
        }
        EXPECT_EQ(f.optionality, expected.value_or(Optionality::kMandatory))
            << record->name() << "." << f.name;
      }
    }
  }
}

TEST(FlatModel, InheritedFieldsComeFirst) {
  const auto def = std::make_shared<const ApiDefinition>(Corpus("customer/r6.api"));
  const FlatModel model(def);
  const FlatRecord* street = model.record("StreetAddress");
  ASSERT_EQ(street->fields.size(), 4u);
  EXPECT_EQ(street->fields[0].name, "postalCode");
  EXPECT_EQ(street->fields[0].declaring_type, "PostalAddress");
  EXPECT_EQ(street->fields[3].name, "number");
  EXPECT_EQ(model.record("PostalAddress")->alternatives,
            (std::vector<std::string>{"StreetAddress", "POBoxAddress"}));
}

TEST(ReadTextFile, MissingFile) {
  try {
    ReadTextFile("/nonexistent/file.api");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

}  // namespace
}  // namespace apievo
