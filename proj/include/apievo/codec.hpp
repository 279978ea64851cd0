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
/// Binary wire format. The payload is untagged: both sides know the schema.
///
///   varint      unsigned LEB128, minimal length
///   int32       4 bytes, big-endian two's complement
///   numeric     varint length, ASCII digits with optional leading '-'
///   string      varint byte length, UTF-8 bytes
///   enum        varint ordinal in schema member order
///   list        varint count, then the elements
///   record      fields in schema order; a field that may be absent in the
///               given direction is preceded by 0x00 (absent) or 0x01
///   union       varint tag in schema member order, then the record

#ifndef APIEVO_CODEC_HPP_
#define APIEVO_CODEC_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/schema.hpp"
#include "apievo/value.hpp"

namespace apievo {

using Bytes = std::vector<std::uint8_t>;

/// Throws Error(kBoundViolation, kMissingMandatoryField,
/// kUnknownEnumMember, kUnknownUnionMember, kValueKindMismatch,
/// kMalformedNumeric, kUnknownElement) naming the offending path.
Bytes Encode(const Value& value, const Schema& schema, const TypeShape& shape,
             Direction direction);

/// Throws Error(kTruncated, kMalformedVarint, kInvalidUnionTag,
/// kInvalidEnumOrdinal, kInvalidPresenceByte, kMalformedNumeric,
/// kBoundViolation, kTrailingBytes).
Value Decode(std::span<const std::uint8_t> bytes, const Schema& schema,
             const TypeShape& shape, Direction direction);

/// Runs every check Encode performs without producing bytes.
void CheckConforms(const Value& value, const Schema& schema,
                   const TypeShape& shape, Direction direction);

/// Whether `digits` is a canonical decimal: optional '-', no leading
/// zeros, no negative zero.
bool IsCanonicalNumeric(std::string_view digits);

void AppendVarint(Bytes& out, std::uint64_t v);

/// Upper-case byte pairs separated by spaces.
std::string ToHex(std::span<const std::uint8_t> bytes);

}  // namespace apievo

#endif  // APIEVO_CODEC_HPP_
