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

#ifndef APIEVO_ADL_HPP_
#define APIEVO_ADL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/error.hpp"

namespace apievo {

/// Parses one `api Name { ... }` block. Only checks the grammar; throws
/// SyntaxError with the position and the set of tokens that would have
/// been accepted there.
ApiDefinition ParseSyntax(std::string_view text);

/// Checks every well-formedness rule and reports all violations. An empty
/// result means the definition can be used for schema derivation.
std::vector<Diagnostic> ValidateWellformedness(const ApiDefinition& definition);

/// ParseSyntax followed by ValidateWellformedness; throws Error carrying
/// every error-severity diagnostic if validation fails.
ApiDefinition ParseDefinition(std::string_view text);

/// Canonical source text. ParseSyntax(PrintDefinition(d)) == d.
std::string PrintDefinition(const ApiDefinition& definition);

/// Reads a whole file. Throws Error(kIoError) on failure.
std::string ReadTextFile(const std::string& path);

}  // namespace apievo

#endif  // APIEVO_ADL_HPP_
