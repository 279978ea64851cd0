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

#include <algorithm>
#include <random>

#include "apievo/adl.hpp"
#include "apievo/error.hpp"
#include "apievo/resolution.hpp"
#include "test_support.hpp"

namespace apievo {
namespace {

using testing::CorpusText;
using testing::CustomerHistory;
using testing::SharedInternal;

class ResolutionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    history_ = new RevisionHistory(CustomerHistory());
    internal_ = new std::shared_ptr<const InternalRepresentation>(
        SharedInternal(*history_, {1, 2, 3, 4, 5, 6}));
  }
  static void TearDownTestSuite() {
    delete internal_;
    delete history_;
  }

  static ResolutionMap ResolveText(std::string_view text, int revision) {
    return Resolve(ParseClientDefinition(text), revision, *history_, *internal_);
  }

  static std::vector<Diagnostic> Problems(std::string_view text, int revision) {
    try {
      ResolveText(text, revision);
    } catch (const Error& e) {
      return e.diagnostics();
    }
    return {};
  }

  static RevisionHistory* history_;
  static std::shared_ptr<const InternalRepresentation>* internal_;
};

RevisionHistory* ResolutionTest::history_ = nullptr;
std::shared_ptr<const InternalRepresentation>* ResolutionTest::internal_ = nullptr;

TEST_F(ResolutionTest, ExampleClientAgainstFirstRevision) {
  const ResolutionMap m = ResolveText(CorpusText("clients/crm_r1.api"), 1);
  EXPECT_EQ(m.provider_revision, 1);
  const RecordMatch* c = m.ForClient("Customer");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->client_internal, "Person");
  EXPECT_EQ(c->internal_type, "Customer");
  EXPECT_EQ(c->ForClient("lastName")->client_internal, "familyName");
  EXPECT_EQ(c->ForClient("lastName")->internal_field, "lastName");
  EXPECT_EQ(c->ForClient("address")->internal_field, "primaryAddress");
  EXPECT_EQ(c->ForClient("gender")->internal_field, "gender");
  EXPECT_TRUE(c->ignored.empty());
  EXPECT_EQ(m.ForClient("Address")->internal_type, "StreetAddress");
  EXPECT_EQ(m.ForInternal("StreetAddress")->client_type, "Address");
  ASSERT_EQ(m.operations.size(), 1u);
  EXPECT_EQ(m.operations[0].client_path, "CustomerService.upsertCustomer");
  EXPECT_EQ(m.operations[0].internal_path, "CustomerService.upsertCustomer");
  EXPECT_NE(m.ToText().find("Customer"), std::string::npos);
}

TEST_F(ResolutionTest, ClientForFourthRevision) {
  const ResolutionMap m = ResolveText(CorpusText("clients/r4_client.api"), 4);
  EXPECT_EQ(m.ForClient("Customer")->ForClient("gender")->internal_field, "genderNew");
  const EnumMatch* g = m.EnumForClient("Gender");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->members.size(), 2u);
  EXPECT_EQ(g->ClientMember("DIVERSE"), nullptr);
  ASSERT_NE(g->ClientMember("FEMALE"), nullptr);
  EXPECT_EQ(*g->ClientMember("FEMALE"), "FEMALE");
  // The optin date of birth is left out by this client.
  EXPECT_EQ(m.ForClient("Customer")->ignored, (std::vector<std::string>{"dateOfBirth"}));
}

TEST_F(ResolutionTest, ClientOfUnsupportedRevision) {
  const auto internal = SharedInternal(*history_, {4, 5, 6});
  try {
    Resolve(ParseClientDefinition(CorpusText("clients/crm_r1.api")), 1, *history_, internal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedRevision);
  }
  try {
    ResolveText(CorpusText("clients/crm_r1.api"), 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownRevision);
  }
}

TEST_F(ResolutionTest, TypeMismatch) {
  const auto problems = Problems(CorpusText("clients/r1_type_mismatch.api"), 1);
  const auto has = [&](ErrorCode code, const std::string& path) {
    return std::any_of(problems.begin(), problems.end(),
                       [&](const Diagnostic& d) { return d.code == code && d.path == path; });
  };
  EXPECT_TRUE(has(ErrorCode::kTypeMismatch, "Customer.gender"));
  EXPECT_TRUE(has(ErrorCode::kMissingMandatoryElement, "Customer.address"));
  // A bound is part of the structure.
  EXPECT_EQ(Problems("api customer { record FormattedAddress { string(41)[4] lines } }", 1)
                .front()
                .code,
            ErrorCode::kTypeMismatch);
  EXPECT_EQ(Problems("api customer { record Customer { string firstName string lastName "
                     "FormattedAddress address int32 gender } record FormattedAddress { "
                     "string(40)[4] lines } }",
                     1)
                .front()
                .code,
            ErrorCode::kTypeMismatch);
}

TEST_F(ResolutionTest, MissingMandatoryProviderField) {
  const auto problems =
      Problems("api customer { record Customer { string firstName int32 gender "
               "Address address } record Address { string street string number "
               "string postalCode string city } }",
               1);
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_EQ(problems[0].code, ErrorCode::kMissingMandatoryElement);
  EXPECT_EQ(problems[0].path, "Customer.lastName");
}

TEST_F(ResolutionTest, UnknownClientElements) {
  // A mandatory field the provider does not know is an error; an optional
  // one is tolerated.
  EXPECT_EQ(Problems("api customer { record FormattedAddress { string(40)[4] lines "
                     "string extra } }",
                     1)
                .front()
                .code,
            ErrorCode::kMissingMandatoryElement);
  const ResolutionMap m = ResolveText(
      "api customer { record FormattedAddress { string(40)[4] lines optional string extra } }", 1);
  EXPECT_FALSE(m.ForClient("FormattedAddress")->ForClient("extra")->matched);
  EXPECT_FALSE(Problems("api customer { record Nope {} }", 1).empty());
  EXPECT_FALSE(Problems("api customer { record R {} service CustomerService { R nope(R) } }", 1)
                   .empty());
}

TEST_F(ResolutionTest, NarrowerEnumAndUnionAreAccepted) {
  EXPECT_NO_THROW(ResolveText("api customer { enum Gender { DIVERSE } }", 6));
  EXPECT_FALSE(Problems("api customer { enum Gender { MALE OTHER } }", 6).empty());
  const char* street_only = R"(api customer {
    abstract record PostalAddress { string postalCode string city }
    record StreetAddress extends PostalAddress { string street string number }
    record Customer {
      string firstName string lastName
      PostalAddress primaryAddress PostalAddress* secondaryAddresses
      Gender gender
    }
    enum Gender { MALE FEMALE }
  })";
  const ResolutionMap m = ResolveText(street_only, 6);
  EXPECT_EQ(m.ForClient("StreetAddress")->internal_type, "StreetAddress");
  EXPECT_EQ(m.ForInternal("POBoxAddress"), nullptr);
}

TEST_F(ResolutionTest, ReplacesIsRejectedInClients) {
  try {
    ParseClientDefinition(CorpusText("customer/r3.api"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReplacesInClient);
  }
  try {
    Resolve(ParseDefinition(CorpusText("customer/r6.api")), 6, *history_, *internal_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kReplacesInClient);
  }
}

TEST_F(ResolutionTest, ApiNameMismatch) {
  try {
    ResolveText("api other {}", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kApiNameMismatch);
  }
}

TEST_F(ResolutionTest, ProviderRevisionResolvesToItself) {
  for (int r : {1, 2, 4, 5}) {
    SCOPED_TRACE(r);
    const ResolutionMap m =
        ResolveText(CorpusText("customer/r" + std::to_string(r) + ".api"), r);
    const Schema& s = m.client_schema;
    EXPECT_EQ(m.records.size(), s.records.size());
    for (const auto& rec : m.records) {
      EXPECT_TRUE(rec.ignored.empty());
      for (const auto& f : rec.fields) {
        EXPECT_TRUE(f.matched);
        EXPECT_EQ(f.client_optionality, f.provider_optionality);
        EXPECT_EQ(rec.internal_type + "." + f.internal_field,
                  (*internal_)->Representative(r, rec.client_type + "." + f.client_field));
      }
    }
  }
}

TEST_F(ResolutionTest, ElementOrderDoesNotMatter) {
  const ApiDefinition base = ParseClientDefinition(CorpusText("clients/crm_r1.api"));
  const std::string expected = Resolve(base, 1, *history_, *internal_).ToText();
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    ApiDefinition shuffled = base;
    std::shuffle(shuffled.elements.begin(), shuffled.elements.end(), rng);
    EXPECT_EQ(Resolve(shuffled, 1, *history_, *internal_).ToText(), expected);
  }
}

TEST_F(ResolutionTest, ProblemsAreAllReported) {
  const auto problems =
      Problems("api customer { record Customer { string firstName string gender } }", 1);
  EXPECT_GE(problems.size(), 3u);
}

}  // namespace
}  // namespace apievo
