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
/// Moves values between a client schema and the provider's internal
/// representation along a resolution map.

#ifndef APIEVO_CONVERT_HPP_
#define APIEVO_CONVERT_HPP_

#include <map>
#include <string>

#include "apievo/resolution.hpp"
#include "apievo/value.hpp"

namespace apievo {

struct ConvertOptions {
  /// Client enum name -> client member used for internal members the
  /// client cannot express. Without an entry such values fail.
  std::map<std::string, std::string> enum_fallbacks;
};

/// Client value -> internal value. Fields the provider revision requires
/// in `direction` must be present (Error(kMissingMandatoryField)).
Value ToInternal(const Value& client_value, const ResolutionMap& map,
                 Direction direction = Direction::kRequest);

/// Internal value -> client value. Provider-only fields are dropped. Throws
/// Error(kUnrepresentableValue) naming the client path of an enum member or
/// record the client cannot express, and Error(kMissingMandatoryField).
Value ToClient(const Value& internal_value, const ResolutionMap& map,
               Direction direction = Direction::kResponse,
               const ConvertOptions& options = {});

}  // namespace apievo

#endif  // APIEVO_CONVERT_HPP_
