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


#include "apievo/codec.hpp"

#include <algorithm>
#include <cstdint>

#include "apievo/error.hpp"

namespace apievo {

bool IsCanonicalNumeric(std::string_view digits) {
  std::string_view body = digits;
  const bool negative = !body.empty() && body.front() == '-';
  if (negative) body.remove_prefix(1);
  if (body.empty()) return false;
  if (!std::all_of(body.begin(), body.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    return false;
  }
  if (body.size() > 1 && body.front() == '0') return false;
  return !(negative && body == "0");
}

void AppendVarint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::string ToHex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i > 0) out += ' ';
    out += kDigits[bytes[i] >> 4];
    out += kDigits[bytes[i] & 0xF];
  }
  return out;
}

namespace {

std::string Child(const std::string& path, const std::string& type,
                  const std::string& field) {
  return (path.empty() ? type : path) + "." + field;
}

// With `out` unset the encoder only validates.
class Encoder {
 public:
  Encoder(const Schema& schema, Direction direction, Bytes* out)
      : schema_(schema), direction_(direction), out_(out) {}

  void Write(const Value& v, const TypeShape& shape, const std::string& path) {
    switch (shape.kind) {
      case TypeShape::Kind::kInt32: {
        Expect(v, Value::Kind::kInt32, path);
        if (out_ != nullptr) {
          const auto u = static_cast<std::uint32_t>(v.as_int32());
          for (int shift = 24; shift >= 0; shift -= 8) {
            out_->push_back(static_cast<std::uint8_t>(u >> shift));
          }
        }
        return;
      }
      case TypeShape::Kind::kNumeric: {
        Expect(v, Value::Kind::kNumeric, path);
        if (!IsCanonicalNumeric(v.text())) {
          throw Error(ErrorCode::kMalformedNumeric, path,
                      "'" + v.text() + "' is not a canonical decimal");
        }
        const std::size_t digits = v.text().size() - (v.text()[0] == '-' ? 1 : 0);
        CheckBound(shape, digits, "digits", path);
        LengthPrefixed(v.text());
        return;
      }
      case TypeShape::Kind::kString:
        Expect(v, Value::Kind::kString, path);
        CheckBound(shape, v.text().size(), "bytes", path);
        LengthPrefixed(v.text());
        return;
      case TypeShape::Kind::kEnum: {
        Expect(v, Value::Kind::kEnum, path);
        const SchemaEnum* e = schema_.FindEnum(shape.name());
        const int ordinal = e == nullptr ? -1 : e->IndexOf(v.text());
        if (ordinal < 0) {
          throw Error(ErrorCode::kUnknownEnumMember, path,
                      "'" + v.text() + "' is not a member of " + shape.name());
        }
        Varint(static_cast<std::uint64_t>(ordinal));
        return;
      }
      case TypeShape::Kind::kList: {
        Expect(v, Value::Kind::kList, path);
        CheckBound(shape, v.items().size(), "elements", path);
        Varint(v.items().size());
        for (std::size_t i = 0; i < v.items().size(); ++i) {
          Write(v.items()[i], *shape.element, path + "[" + std::to_string(i) + "]");
        }
        return;
      }
      case TypeShape::Kind::kRecord:
      case TypeShape::Kind::kUnion: break;
    }
    Expect(v, Value::Kind::kRecord, path);
    auto it = std::find(shape.names.begin(), shape.names.end(), v.text());
    if (it == shape.names.end()) {
      throw Error(ErrorCode::kUnknownUnionMember, path,
                  "'" + v.text() + "' is not a member of " + shape.ToString());
    }
    if (shape.kind == TypeShape::Kind::kUnion) {
      Varint(static_cast<std::uint64_t>(it - shape.names.begin()));
    }
    WriteRecord(v, path);
  }

 private:
  void WriteRecord(const Value& v, const std::string& path) {
    const SchemaRecord* record = schema_.FindRecord(v.text());
    if (record == nullptr) {
      throw Error(ErrorCode::kUnknownUnionMember, path,
                  "schema has no record '" + v.text() + "'");
    }
    for (const auto& [name, field] : v.fields()) {
      if (record->FindField(name) == nullptr) {
        throw Error(ErrorCode::kUnknownElement, Child(path, v.text(), name),
                    "record '" + v.text() + "' has no field '" + name + "'");
      }
    }
    for (const auto& f : record->fields) {
      const std::string field_path = Child(path, v.text(), f.name);
      const Value* fv = v.Find(f.name);
      if (MayBeAbsent(f.optionality, direction_)) {
        Byte(fv == nullptr ? 0x00 : 0x01);
      } else if (fv == nullptr) {
        throw Error(ErrorCode::kMissingMandatoryField, field_path,
                    "mandatory field '" + f.name + "' is missing");
      }
      if (fv != nullptr) Write(*fv, f.type, field_path);
    }
  }

  static void Expect(const Value& v, Value::Kind kind, const std::string& path) {
    if (v.kind() != kind) {
      throw Error(ErrorCode::kValueKindMismatch, path,
                  "expected a " + std::string(ValueKindName(kind)) +
                      " value but found a " + std::string(ValueKindName(v.kind())));
    }
  }

  static void CheckBound(const TypeShape& shape, std::size_t size,
                         const char* unit, const std::string& path) {
    if (shape.bound && size > *shape.bound) {
      throw Error(ErrorCode::kBoundViolation, path,
                  std::to_string(size) + " " + unit + " exceed the bound of " +
                      std::to_string(*shape.bound));
    }
  }

  void Byte(std::uint8_t b) {
    if (out_ != nullptr) out_->push_back(b);
  }
  void Varint(std::uint64_t v) {
    if (out_ != nullptr) AppendVarint(*out_, v);
  }
  void LengthPrefixed(const std::string& s) {
    if (out_ == nullptr) return;
    AppendVarint(*out_, s.size());
    out_->insert(out_->end(), s.begin(), s.end());
  }

  const Schema& schema_;
  Direction direction_;
  Bytes* out_;
};

constexpr int kMaxDepth = 512;

class Decoder {
 public:
  Decoder(std::span<const std::uint8_t> bytes, const Schema& schema,
          Direction direction)
      : bytes_(bytes), schema_(schema), direction_(direction) {}

  Value Read(const TypeShape& shape, const std::string& path, int depth) {
    if (depth > kMaxDepth) {
      throw Error(ErrorCode::kTruncated, path, "value nesting is too deep");
    }
    switch (shape.kind) {
      case TypeShape::Kind::kInt32: {
        Need(4, path);
        std::uint32_t u = 0;
        for (int i = 0; i < 4; ++i) u = (u << 8) | bytes_[pos_++];
        return Value::Int32(static_cast<std::int32_t>(u));
      }
      case TypeShape::Kind::kNumeric: {
        std::string digits = Text(path);
        if (!IsCanonicalNumeric(digits)) {
          throw Error(ErrorCode::kMalformedNumeric, path,
                      "'" + digits + "' is not a canonical decimal");
        }
        const std::size_t n = digits.size() - (digits[0] == '-' ? 1 : 0);
        CheckBound(shape, n, path);
        return Value::Numeric(std::move(digits));
      }
      case TypeShape::Kind::kString: {
        std::string text = Text(path);
        CheckBound(shape, text.size(), path);
        return Value::String(std::move(text));
      }
      case TypeShape::Kind::kEnum: {
        const SchemaEnum* e = schema_.FindEnum(shape.name());
        const std::uint64_t ordinal = Varint(path);
        if (e == nullptr || ordinal >= e->members.size()) {
          throw Error(ErrorCode::kInvalidEnumOrdinal, path,
                      "ordinal " + std::to_string(ordinal) + " is out of range for " +
                          shape.name());
        }
        return Value::Enum(e->members[ordinal]);
      }
      case TypeShape::Kind::kList: {
        const std::uint64_t count = Varint(path);
        CheckBound(shape, count, path);
        // Every element but an empty record takes at least one byte.
        if (count > Remaining() && count > (1u << 16)) {
          throw Error(ErrorCode::kTruncated, path,
                      "list of " + std::to_string(count) + " elements exceeds the payload");
        }
        std::vector<Value> items;
        items.reserve(std::min<std::uint64_t>(count, Remaining() + 1));
        for (std::uint64_t i = 0; i < count; ++i) {
          items.push_back(Read(*shape.element, path + "[" + std::to_string(i) + "]",
                               depth + 1));
        }
        return Value::List(std::move(items));
      }
      case TypeShape::Kind::kRecord:
        return ReadRecord(shape.name(), path, depth);
      case TypeShape::Kind::kUnion: {
        const std::uint64_t tag = Varint(path);
        if (tag >= shape.names.size()) {
          throw Error(ErrorCode::kInvalidUnionTag, path,
                      "tag " + std::to_string(tag) + " is out of range for " +
                          shape.ToString());
        }
        return ReadRecord(shape.names[tag], path, depth);
      }
    }
    return {};
  }

  void Finish() {
    if (pos_ != bytes_.size()) {
      throw Error(ErrorCode::kTrailingBytes, std::to_string(pos_),
                  std::to_string(bytes_.size() - pos_) +
                      " bytes left after the value");
    }
  }

 private:
  Value ReadRecord(const std::string& type, const std::string& path, int depth) {
    const SchemaRecord* record = schema_.FindRecord(type);
    if (record == nullptr) {
      throw Error(ErrorCode::kUnknownElement, path, "schema has no record '" + type + "'");
    }
    Value out = Value::Record(type);
    for (const auto& f : record->fields) {
      const std::string field_path = Child(path, type, f.name);
      if (MayBeAbsent(f.optionality, direction_)) {
        Need(1, field_path);
        const std::uint8_t presence = bytes_[pos_++];
        if (presence > 1) {
          throw Error(ErrorCode::kInvalidPresenceByte, field_path,
                      "presence byte " + std::to_string(presence) +
                          " is neither 0 nor 1");
        }
        if (presence == 0) continue;
      }
      out.Set(f.name, Read(f.type, field_path, depth + 1));
    }
    return out;
  }

  std::size_t Remaining() const { return bytes_.size() - pos_; }

  void Need(std::size_t n, const std::string& path) const {
    if (Remaining() < n) {
      throw Error(ErrorCode::kTruncated, path,
                  "needed " + std::to_string(n) + " bytes at offset " +
                      std::to_string(pos_) + " but only " +
                      std::to_string(Remaining()) + " remain");
    }
  }

  std::uint64_t Varint(const std::string& path) {
    std::uint64_t v = 0;
    for (int shift = 0;; shift += 7) {
      Need(1, path);
      const std::uint8_t b = bytes_[pos_++];
      if (shift == 63 && b > 1) {
        throw Error(ErrorCode::kMalformedVarint, path, "varint overflows 64 bits");
      }
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) {
        if (b == 0 && shift > 0) {
          throw Error(ErrorCode::kMalformedVarint, path,
                      "varint is not minimally encoded");
        }
        return v;
      }
    }
  }

  std::string Text(const std::string& path) {
    const std::uint64_t n = Varint(path);
    if (n > Remaining()) {
      throw Error(ErrorCode::kTruncated, path,
                  "length " + std::to_string(n) + " exceeds the " +
                      std::to_string(Remaining()) + " remaining bytes");
    }
    std::string out(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return out;
  }

  static void CheckBound(const TypeShape& shape, std::uint64_t size,
                         const std::string& path) {
    if (shape.bound && size > *shape.bound) {
      throw Error(ErrorCode::kBoundViolation, path,
                  "size " + std::to_string(size) + " exceeds the bound of " +
                      std::to_string(*shape.bound));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  const Schema& schema_;
  Direction direction_;
};

}  // namespace

Bytes Encode(const Value& value, const Schema& schema, const TypeShape& shape,
             Direction direction) {
  Bytes out;
  Encoder(schema, direction, &out).Write(value, shape, "");
  return out;
}

void CheckConforms(const Value& value, const Schema& schema,
                   const TypeShape& shape, Direction direction) {
  Encoder(schema, direction, nullptr).Write(value, shape, "");
}

Value Decode(std::span<const std::uint8_t> bytes, const Schema& schema,
             const TypeShape& shape, Direction direction) {
  Decoder decoder(bytes, schema, direction);
  Value out = decoder.Read(shape, "", 0);
  decoder.Finish();
  return out;
}

}  // namespace apievo
