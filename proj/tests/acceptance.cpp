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


// End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
// and exits non-zero if any fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apievo/codec.hpp"
#include "apievo/convert.hpp"
#include "apievo/error.hpp"
#include "apievo/internal_rep.hpp"
#include "apievo/registry.hpp"
#include "apievo/resolution.hpp"
#include "cli.hpp"
#include "test_support.hpp"

namespace apievo {
namespace {

using nlohmann::json;
using testing::AdaCustomer;
using testing::CorpusPath;
using testing::CorpusText;
using testing::RunCli;
using testing::TempDir;

// Collects failed expectations of one criterion.
class Check {
 public:
  void That(bool condition, const std::string& what) {
    if (!condition) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string Summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

bool HasDiagnostic(const std::string& text, const std::string& code, const std::string& path) {
  return text.find(code + " at " + path) != std::string::npos;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void RenameRetype(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  TempDir dir;
  const std::vector<std::string> store = {"--store", dir.str()};
  auto cli = [&](std::vector<std::string> args) {
    args.insert(args.begin(), store.begin(), store.end());
    return RunCli(args);
  };
  c.That(cli({"publish", "rename_retype", CorpusPath("rename_retype/previous.api")}).code == 0,
         "previous revision publishes");
  const auto rejected = cli({"publish", "rename_retype", CorpusPath("rename_retype/current.api")});
  c.That(rejected.code == cli::kExitDomainError, "current revision is rejected");
  c.That(HasDiagnostic(rejected.err, "MultipleSuccessors", "A.b"), "c replaces b: MultipleSuccessors");
  c.That(HasDiagnostic(rejected.err, "UnknownPredecessor", "B.y"), "y replaces x: UnknownPredecessor");
  c.That(cli({"publish", "rename_retype", CorpusPath("rename_retype/current_valid.api")}).code == 0,
         "accepted rows publish");
  const auto diff = cli({"diff", "rename_retype", "1", "2"});
  const std::vector<std::string> verdicts = {
      "renamed type A -> B",
      "deleted type X",
      "renamed field A.a -> B.d",
      "type-changed field A.b -> B.b (int32 -> numeric(5))",
      "added field B.z",
  };
  for (const auto& v : verdicts) c.That(diff.out.find(v) != std::string::npos, "diff lists '" + v + "'");
  c.That(Seconds(start) < 1.0, "runtime under 1 s");
}

void PullUpPushDown(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  auto publish_both = [](const std::string& current) {
    TempDir dir;
    RunCli({"--store", dir.str(), "publish", "pull_up_push_down", CorpusPath("pull_up_push_down/previous.api")});
    auto r = RunCli({"--store", dir.str(), "publish", "pull_up_push_down", CorpusPath(current)});
    if (r.code == 0) r.out = RunCli({"--store", dir.str(), "diff", "pull_up_push_down", "1", "2"}).out;
    return r;
  };
  const auto valid = publish_both("pull_up_push_down/current_valid.api");
  c.That(valid.code == 0, "valid pull-up and push-downs publish");
  c.That(valid.out.find("pulled-up field B.b, C.c -> A.a2") != std::string::npos, "pull-up of B.b/C.c");
  c.That(valid.out.find("pushed-down field A.a -> B.b3, C.c3") != std::string::npos,
         "push-downs of A.a");
  const auto mismatch = publish_both("pull_up_push_down/current_pullup_mismatch.api");
  c.That(mismatch.code == cli::kExitDomainError &&
             mismatch.err.find("IncompatiblePullUpTypes") != std::string::npos,
         "mismatched pull-up rejected with IncompatiblePullUpTypes");
  const auto redeclared = publish_both("pull_up_push_down/current_redeclared.api");
  c.That(redeclared.code == cli::kExitDomainError &&
             redeclared.err.find("MultipleSuccessors") != std::string::npos,
         "re-declared string c rejected with MultipleSuccessors");
  c.That(Seconds(start) < 1.0, "runtime under 1 s");
}

void RunningExample(Check& c) {
  TempDir dir;
  Registry reg(dir.path());
  for (int i = 1; i <= 6; ++i) {
    const auto r = reg.Publish("customer", CorpusText("customer/r" + std::to_string(i) + ".api"));
    c.That(r.revision == i && r.supported && r.warnings.empty(),
           "revision " + std::to_string(i) + " publishes cleanly");
  }
  const auto internal = std::make_shared<const InternalRepresentation>(reg.LoadInternal("customer"));
  c.That(internal->supported() == std::vector<int>{1, 2, 3, 4, 5, 6}, "supported set {1..6}");
  const SchemaRecord* customer = internal->schema().FindRecord("Customer");
  c.That(customer != nullptr, "internal Customer exists");
  if (customer == nullptr) return;
  const SchemaField* gender = customer->FindField("gender");
  const SchemaField* gender_new = customer->FindField("genderNew");
  const SchemaField* primary = customer->FindField("primaryAddress");
  c.That(gender && gender->type == TypeShape::Int32() && gender->optionality == Optionality::kOptional,
         "gender: int32, optional");
  c.That(gender_new && gender_new->type == TypeShape::Enum("Gender"), "genderNew: Gender");
  c.That(primary && primary->type == TypeShape::Union({"StreetAddress", "POBoxAddress"}),
         "primaryAddress: union[StreetAddress, POBoxAddress]");
  c.That(customer->FindField("address") == nullptr &&
             internal->Representative(1, "Customer.address") == "Customer.primaryAddress",
         "primaryAddress replaces address");

  const ResolutionMap map = Resolve(ParseClientDefinition(CorpusText("clients/crm_r1.api")), 1,
                                    reg.LoadHistory("customer"), internal);
  const Schema& client = map.client_schema;
  const Schema& in = internal->schema();
  const TypeShape client_shape = client.ShapeOf("Customer");
  const TypeShape internal_shape = in.ShapeOf("Customer");
  const Bytes request = Encode(AdaCustomer(), client, client_shape, Direction::kRequest);
  const Value converted =
      ToInternal(Decode(request, client, client_shape, Direction::kRequest), map, Direction::kRequest);
  c.That(converted.Find("gender") != nullptr && converted.Find("gender")->as_int32() == 1,
         "request populates gender");
  c.That(converted.Find("genderNew") == nullptr, "request leaves genderNew absent");
  const Bytes internal_bytes = Encode(converted, in, internal_shape, Direction::kResponse);
  const Value back = ToClient(Decode(internal_bytes, in, internal_shape, Direction::kResponse), map,
                              Direction::kResponse);
  c.That(Encode(back, client, client_shape, Direction::kResponse) ==
             Encode(AdaCustomer(), client, client_shape, Direction::kResponse),
         "response round-trips byte-identically");
}

void Unrepresentable(Check& c) {
  const RevisionHistory history = testing::CustomerHistory();
  const auto internal = testing::SharedInternal(history, {1, 2, 3, 4, 5, 6});
  const ResolutionMap r1 =
      Resolve(ParseClientDefinition(CorpusText("clients/crm_r1.api")), 1, history, internal);
  const ResolutionMap r4 =
      Resolve(ParseClientDefinition(CorpusText("clients/r4_client.api")), 4, history, internal);
  auto street = Value::Record("StreetAddress", {{"postalCode", Value::String("1")},
                                                {"city", Value::String("c")},
                                                {"street", Value::String("s")},
                                                {"number", Value::String("n")}});
  auto pobox = Value::Record("POBoxAddress", {{"postalCode", Value::String("1")},
                                              {"city", Value::String("c")},
                                              {"boxNumber", Value::String("7")}});
  Value v = Value::Record("Customer", {{"firstName", Value::String("A")},
                                       {"lastName", Value::String("B")},
                                       {"gender", Value::Int32(0)},
                                       {"genderNew", Value::Enum("DIVERSE")},
                                       {"secondaryAddresses", Value::List({})},
                                       {"primaryAddress", pobox}});
  auto failure = [](const std::function<void()>& f) -> std::pair<ErrorCode, std::string> {
    try {
      f();
    } catch (const Error& e) {
      return {e.code(), e.path()};
    }
    return {ErrorCode::kIoError, "(no error)"};
  };
  auto subtype = failure([&] { ToClient(v, r1); });
  c.That(subtype.first == ErrorCode::kUnrepresentableValue && subtype.second == "Customer.address",
         "POBoxAddress to r1 client: UnrepresentableValue at Customer.address, got " + subtype.second);
  v.Set("primaryAddress", street);
  auto member = failure([&] { ToClient(v, r4); });
  c.That(member.first == ErrorCode::kUnrepresentableValue && member.second == "Customer.gender",
         "DIVERSE to r4 client: UnrepresentableValue at Customer.gender, got " + member.second);
  ConvertOptions options;
  options.enum_fallbacks["Gender"] = "FEMALE";
  try {
    const Value out = ToClient(v, r4, Direction::kResponse, options);
    c.That(out.Find("gender")->text() == "FEMALE", "fallback member used");
  } catch (const Error& e) {
    c.That(false, std::string("fallback conversion failed: ") + e.what());
  }
}

void Properties(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const std::string command = std::string(APIEVO_PROPERTIES_BIN) + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  c.That(status == 0, "property suite passes (" + std::string(APIEVO_PROPERTIES_BIN) + ")");
  c.That(Seconds(start) < 120.0, "property suite under 2 min");
}

void Lifecycle(Check& c) {
  TempDir dir;
  Registry reg(dir.path());
  for (int i = 1; i <= 6; ++i) {
    reg.Publish("customer", CorpusText("customer/r" + std::to_string(i) + ".api"));
  }
  reg.RegisterClient("customer", "crm", CorpusText("clients/crm_r1.api"), 1);
  const auto refused = RunCli({"--store", dir.str(), "registry", "set-supported", "customer", "2,4-6"});
  c.That(refused.code != 0, "dropping r1 without --force fails");
  c.That(refused.err.find("ClientsStillReferencing at crm") != std::string::npos,
         "failure lists the client");
  c.That(reg.Status("customer").supported == std::vector<int>{1, 2, 3, 4, 5, 6}, "store unchanged");
  try {
    const InternalRepresentation rep = DeriveInternal(reg.LoadHistory("customer"), {2, 4, 5, 6});
    c.That(rep.supported() == std::vector<int>{2, 4, 5, 6}, "{r2, r4, r5, r6} derives");
  } catch (const Error& e) {
    c.That(false, std::string("{r2, r4, r5, r6} does not derive: ") + e.what());
  }
  const auto forced =
      RunCli({"--store", dir.str(), "registry", "set-supported", "customer", "2,4-6", "--force"});
  c.That(forced.code == 0 && reg.Status("customer").supported == std::vector<int>{2, 4, 5, 6},
         "forced non-contiguous supported set stored");
}

void Performance(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = RunCli({"--json", "bench"});
  const double wall = Seconds(start);
  c.That(r.code == 0, "bench runs");
  if (r.code != 0) return;
  const json j = json::parse(r.out);
  const double median = j.at("median_us").get<double>();
  std::ostringstream m;
  m << "median " << median << " us under 50 us";
  c.That(median < 50.0, m.str());
  c.That(wall < 60.0, "bench completes under 60 s");
  std::cout << "  bench: iterations " << j.at("iterations") << ", median " << median
            << " us, p90 " << j.at("p90_us").get<double>() << " us, total " << wall << " s\n";
}

}  // namespace
}  // namespace apievo

int main() {
  using namespace apievo;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"rename and retype verdicts", RenameRetype},
      {"pull-up and push-down verdicts", PullUpPushDown},
      {"running example end to end", RunningExample},
      {"unrepresentable values", Unrepresentable},
      {"property suites", Properties},
      {"supported-set lifecycle", Lifecycle},
      {"conversion performance", Performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.That(false, std::string("unexpected exception: ") + e.what());
    }
    const double ms = Seconds(start) * 1000.0;
    std::cout << (check.ok() ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << criteria[i].first << " (" << static_cast<long>(ms) << " ms)";
    if (!check.ok()) std::cout << ": " << check.Summary();
    std::cout << std::endl;
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
