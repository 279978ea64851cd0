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

/// \file
///
/// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage
/// error, 3 resolution failure during `convert`.

#ifndef APIEVO_TOOLS_CLI_HPP_
#define APIEVO_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace apievo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResolution = 3;

/// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apievo::cli

#endif  // APIEVO_TOOLS_CLI_HPP_
