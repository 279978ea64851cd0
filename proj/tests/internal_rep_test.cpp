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

#include <set>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"
#include "apievo/internal_rep.hpp"
#include "test_support.hpp"

namespace apievo {
namespace {

using testing::Corpus;
using testing::CustomerHistory;

const SchemaField& Field(const InternalRepresentation& rep, std::string_view type,
                         std::string_view field) {
  const SchemaRecord* r = rep.schema().FindRecord(type);
  if (r == nullptr) throw std::runtime_error("no record " + std::string(type));
  const SchemaField* f = r->FindField(field);
  if (f == nullptr) throw std::runtime_error("no field " + std::string(field));
  return *f;
}

TEST(DeriveInternal, WholeRunningExample) {
  const RevisionHistory h = CustomerHistory();
  const InternalRepresentation rep = DeriveInternal(h, {6, 1, 2, 3, 4, 5});
  EXPECT_EQ(rep.supported(), (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(Field(rep, "Customer", "genderNew").type, TypeShape::Enum("Gender"));
  EXPECT_EQ(Field(rep, "Customer", "genderNew").optionality, Optionality::kOptional);
  EXPECT_EQ(Field(rep, "Customer", "gender").type, TypeShape::Int32());
  EXPECT_EQ(Field(rep, "Customer", "gender").optionality, Optionality::kOptional);
  EXPECT_EQ(Field(rep, "Customer", "primaryAddress").type,
            TypeShape::Union({"StreetAddress", "POBoxAddress"}));
  EXPECT_EQ(Field(rep, "Customer", "primaryAddress").optionality, Optionality::kMandatory);
  // Absent from r1, optin elsewhere.
  EXPECT_EQ(Field(rep, "Customer", "dateOfBirth").optionality, Optionality::kOptional);
  EXPECT_EQ(Field(rep, "Customer", "secondaryAddresses").optionality, Optionality::kOptional);
  EXPECT_EQ(rep.schema().FindRecord("Address"), nullptr);
  EXPECT_EQ(rep.schema().FindEnum("Gender")->members,
            (std::vector<std::string>{"MALE", "FEMALE", "DIVERSE"}));
}

TEST(DeriveInternal, Representatives) {
  const InternalRepresentation rep = DeriveInternal(CustomerHistory(), {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(rep.Representative(1, "Customer.address"), "Customer.primaryAddress");
  EXPECT_EQ(rep.Representative(1, "Customer.gender"), "Customer.gender");
  EXPECT_EQ(rep.Representative(6, "Customer.gender"), "Customer.genderNew");
  EXPECT_EQ(rep.Representative(1, "Address"), "StreetAddress");
  EXPECT_EQ(rep.Representative(5, "Address.city"), "StreetAddress.city");
  EXPECT_EQ(rep.Representative(4, "Gender.MALE"), "Gender.MALE");
  EXPECT_EQ(rep.Representative(3, "CustomerService.upsertCustomer"),
            "CustomerService.upsertCustomer");
  EXPECT_EQ(rep.PublicName("StreetAddress"), "StreetAddress");
  try {
    rep.Representative(7, "Customer");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedRevision);
  }
  try {
    rep.Representative(1, "Customer.nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownElement);
  }
}

TEST(DeriveInternal, EveryElementHasOneRepresentative) {
  const RevisionHistory h = CustomerHistory();
  const InternalRepresentation rep = DeriveInternal(h, {1, 2, 3, 4, 5, 6});
  for (int r = 1; r <= 6; ++r) {
    const Schema s = DeriveSchema(h, r);
    for (const auto& rec : s.records) {
      EXPECT_NO_THROW(rep.Representative(r, rec.name));
      for (const auto& f : rec.fields) {
        EXPECT_NO_THROW(rep.Representative(r, rec.name + "." + f.name)) << rec.name << f.name;
      }
    }
  }
}

TEST(DeriveInternal, SingleRevisionMatchesItsSchema) {
  const RevisionHistory h = CustomerHistory();
  for (int r = 1; r <= 6; ++r) {
    SCOPED_TRACE(r);
    const InternalRepresentation rep = DeriveInternal(h, {r});
    const Schema pub = DeriveSchema(h, r);
    const Schema& in = rep.schema();
    ASSERT_EQ(in.records.size(), pub.records.size());
    for (const auto& rec : pub.records) {
      const SchemaRecord* mirror = in.FindRecord(rec.internal_name);
      ASSERT_NE(mirror, nullptr);
      ASSERT_EQ(mirror->fields.size(), rec.fields.size());
      for (std::size_t i = 0; i < rec.fields.size(); ++i) {
        EXPECT_EQ(mirror->fields[i].name, rec.fields[i].internal_name);
        EXPECT_EQ(mirror->fields[i].optionality, rec.fields[i].optionality);
        EXPECT_EQ(mirror->fields[i].type.kind, rec.fields[i].type.kind);
      }
      EXPECT_EQ(mirror->is_abstract, rec.is_abstract);
    }
    EXPECT_EQ(in.enums.size(), pub.enums.size());
    EXPECT_EQ(in.services.size(), pub.services.size());
  }
}

// Hand-computed merge of revisions 2, 4 and 6.
TEST(DeriveInternal, SparseSupportedSet) {
  const InternalRepresentation rep = DeriveInternal(CustomerHistory(), {2, 4, 6});
  const SchemaRecord* c = rep.schema().FindRecord("Customer");
  ASSERT_NE(c, nullptr);
  std::map<std::string, std::pair<std::string, Optionality>> got;
  for (const auto& f : c->fields) got[f.name] = {f.type.ToString(), f.optionality};
  const std::map<std::string, std::pair<std::string, Optionality>> want = {
      {"firstName", {"string", Optionality::kMandatory}},
      {"lastName", {"string", Optionality::kMandatory}},
      {"dateOfBirth", {"string", Optionality::kOptin}},
      {"primaryAddress", {"union[StreetAddress, POBoxAddress]", Optionality::kMandatory}},
      {"secondaryAddresses", {"union[StreetAddress, POBoxAddress]*", Optionality::kOptional}},
      {"genderNew", {"Gender", Optionality::kOptional}},
      {"gender", {"int32", Optionality::kOptional}},
  };
  EXPECT_EQ(got, want);
  EXPECT_EQ(rep.Representative(2, "Customer.address"), "Customer.primaryAddress");
  EXPECT_EQ(rep.Representative(4, "Customer.gender"), "Customer.genderNew");
}

TEST(DeriveInternal, NewestFormWins) {
  const InternalRepresentation rep = DeriveInternal(CustomerHistory(), {1, 3});
  EXPECT_NE(rep.schema().FindRecord("Customer")->FindField("primaryAddress"), nullptr);
  EXPECT_EQ(rep.schema().FindRecord("Customer")->FindField("address"), nullptr);
  EXPECT_EQ(Field(rep, "Customer", "primaryAddress").type, TypeShape::Record("Address"));
}

TEST(DeriveInternal, ImplicitNameClashAcrossTypeChange) {
  RevisionHistory h("rename_retype");
  h = h.Append(Corpus("rename_retype/previous.api")).Append(Corpus("rename_retype/current_valid.api"));
  try {
    DeriveInternal(h, {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateInternalName);
    EXPECT_EQ(e.path(), "B.b");
  }
  EXPECT_NO_THROW(DeriveInternal(h, {2}));
  EXPECT_NO_THROW(DeriveInternal(h, {1}));
}

TEST(DeriveInternal, ExceptionsAreUnioned) {
  RevisionHistory h("x");
  h = h.Append(ParseDefinition(
               "api x { record R {} exception E {} exception F {} service S { R op(R) throws E } }"))
          .Append(ParseDefinition(
              "api x { record R {} exception E {} exception F {} service S { R op(R) throws F } }"));
  const InternalRepresentation rep = DeriveInternal(h, {1, 2});
  const auto& ex = rep.schema().FindService("S")->FindOperation("op")->exceptions;
  EXPECT_EQ(std::set<std::string>(ex.begin(), ex.end()), (std::set<std::string>{"E", "F"}));
}

TEST(DeriveInternal, ConcreteAnywhereIsConcrete) {
  RevisionHistory h("x");
  h = h.Append(ParseDefinition("api x { record A {} record B extends A {} }"))
          .Append(ParseDefinition("api x { abstract record A {} record B extends A {} }"));
  EXPECT_FALSE(DeriveInternal(h, {1, 2}).schema().FindRecord("A")->is_abstract);
  EXPECT_TRUE(DeriveInternal(h, {2}).schema().FindRecord("A")->is_abstract);
}

TEST(DeriveInternal, BadSupportedSets) {
  const RevisionHistory h = CustomerHistory(3);
  for (const std::vector<int>& set : {std::vector<int>{}, {0}, {4}, {1, 9}}) {
    try {
      DeriveInternal(h, set);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnknownRevision);
    }
  }
}

TEST(DeriveInternal, TextIsStable) {
  const RevisionHistory h = CustomerHistory();
  const std::string a = DeriveInternal(h, {1, 2, 3, 4, 5, 6}).ToText();
  EXPECT_EQ(a, DeriveInternal(h, {6, 5, 4, 3, 2, 1, 1}).ToText());
  EXPECT_EQ(a.rfind("internal representation of customer, supported {1, 2, 3, 4, 5, 6}", 0), 0u);
}

}  // namespace
}  // namespace apievo
