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


#include "test_support.hpp"

#include <atomic>
#include <random>
#include <sstream>

#include "cli.hpp"

namespace apievo::testing {

std::string CorpusPath(std::string_view relative) {
  return std::string(APIEVO_CORPUS_DIR) + "/" + std::string(relative);
}

std::string CorpusText(std::string_view relative) {
  return ReadTextFile(CorpusPath(relative));
}

ApiDefinition Corpus(std::string_view relative) {
  return ParseDefinition(CorpusText(relative));
}

RevisionHistory CustomerHistory(int upto) {
  RevisionHistory history("customer");
  for (int i = 1; i <= upto; ++i) {
    history = history.Append(Corpus("customer/r" + std::to_string(i) + ".api"));
  }
  return history;
}

std::shared_ptr<const InternalRepresentation> SharedInternal(
    const RevisionHistory& history, std::vector<int> supported) {
  return std::make_shared<const InternalRepresentation>(
      DeriveInternal(history, std::move(supported)));
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("apievo-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

CliResult RunCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

Value AdaCustomer() {
  return Value::Record(
      "Customer",
      {{"firstName", Value::String("Ada")},
       {"lastName", Value::String("Lovelace")},
       {"gender", Value::Int32(1)},
       {"address", Value::Record("Address", {{"street", Value::String("St James's Square")},
                                             {"number", Value::String("12")},
                                             {"postalCode", Value::String("SW1Y 4JH")},
                                             {"city", Value::String("London")}})}});
}

}  // namespace apievo::testing
