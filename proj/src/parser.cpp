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

#include <array>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "apievo/adl.hpp"

namespace apievo {
namespace {

enum class TokenKind { kIdentifier, kKeyword, kInteger, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourceLocation location;
};

constexpr std::array<std::string_view, 18> kKeywords = {
    "api",      "record",  "exception", "enum",    "service", "abstract",
    "optional", "optin",   "mandatory", "extends", "replaces", "nothing",
    "as",       "throws",  "int32",     "integer", "numeric", "string"};

bool IsKeyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::string Describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kIdentifier:
      return "identifier '" + token.text + "'";
    case TokenKind::kInteger:
      return "integer " + token.text;
    case TokenKind::kKeyword:
    case TokenKind::kPunct:
      return "'" + token.text + "'";
  }
  return token.text;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  SourceLocation loc;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token token;
    token.location = loc;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = i;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) ||
              text[end] == '_')) {
        ++end;
      }
      token.text = std::string(text.substr(i, end - i));
      token.kind =
          IsKeyword(token.text) ? TokenKind::kKeyword : TokenKind::kIdentifier;
      advance(end - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = i;
      while (end < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[end]))) {
        ++end;
      }
      token.text = std::string(text.substr(i, end - i));
      token.kind = TokenKind::kInteger;
      advance(end - i);
    } else if (std::string_view("{}()[]*,.").find(c) !=
               std::string_view::npos) {
      token.text = std::string(1, c);
      token.kind = TokenKind::kPunct;
      advance(1);
    } else {
      std::string shown(1, c);
      throw SyntaxError(loc, {"a token"}, "character '" + shown + "'");
    }
    tokens.push_back(std::move(token));
  }
  tokens.push_back(Token{TokenKind::kEnd, "", loc});
  return tokens;
}

std::optional<Optionality> OptionalityKeyword(const Token& token) {
  if (token.kind != TokenKind::kKeyword) return std::nullopt;
  if (token.text == "mandatory") return Optionality::kMandatory;
  if (token.text == "optin") return Optionality::kOptin;
  if (token.text == "optional") return Optionality::kOptional;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Tokenize(text)) {}

  ApiDefinition ParseApi() {
    ExpectKeyword("api");
    ApiDefinition def;
    def.name = ExpectIdentifier("API name");
    while (IsPunct(".")) {
      Next();
      def.name += "." + ExpectIdentifier("identifier");
    }
    ExpectPunct("{");
    while (!IsPunct("}")) {
      def.elements.push_back(ParseElement());
    }
    Next();
    if (Peek().kind != TokenKind::kEnd) Fail({"end of input"});
    return def;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }

  bool IsPunct(std::string_view p) const {
    return Peek().kind == TokenKind::kPunct && Peek().text == p;
  }
  bool IsKeyword(std::string_view k) const {
    return Peek().kind == TokenKind::kKeyword && Peek().text == k;
  }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    throw SyntaxError(Peek().location, std::move(expected), Describe(Peek()));
  }

  void ExpectPunct(std::string_view p) {
    if (!IsPunct(p)) Fail({"'" + std::string(p) + "'"});
    Next();
  }
  void ExpectKeyword(std::string_view k) {
    if (!IsKeyword(k)) Fail({"'" + std::string(k) + "'"});
    Next();
  }
  std::string ExpectIdentifier(std::string what) {
    if (Peek().kind != TokenKind::kIdentifier) Fail({std::move(what)});
    return Next().text;
  }
  std::uint32_t ExpectInteger() {
    if (Peek().kind != TokenKind::kInteger) Fail({"integer literal"});
    const Token& t = Peek();
    unsigned long long value = 0;
    for (char c : t.text) {
      value = value * 10 + static_cast<unsigned>(c - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        Fail({"integer literal below 2^32"});
      }
    }
    Next();
    return static_cast<std::uint32_t>(value);
  }

  Element ParseElement() {
    if (IsKeyword("enum")) return ParseEnum();
    if (IsKeyword("service")) return ParseService();
    bool is_abstract = false;
    std::optional<Optionality> default_optionality;
    while (true) {
      if (IsKeyword("abstract") && !is_abstract) {
        is_abstract = true;
        Next();
      } else if (auto o = OptionalityKeyword(Peek()); o && !default_optionality) {
        default_optionality = o;
        Next();
      } else {
        break;
      }
    }
    RecordType record;
    if (IsKeyword("record")) {
      record.kind = RecordKind::kRecord;
    } else if (IsKeyword("exception")) {
      record.kind = RecordKind::kException;
    } else {
      std::vector<std::string> expected;
      if (!is_abstract && !default_optionality) {
        expected = {"'enum'", "'service'"};
      }
      if (!is_abstract) expected.push_back("'abstract'");
      if (!default_optionality) expected.push_back("optionality modifier");
      expected.push_back("'record'");
      expected.push_back("'exception'");
      if (is_abstract || default_optionality) {
        Fail(std::move(expected));
      }
      expected.push_back("'}'");
      Fail(std::move(expected));
    }
    Next();
    record.is_abstract = is_abstract;
    record.default_optionality = default_optionality;
    record.name = ExpectIdentifier("type name");
    if (IsKeyword("extends")) {
      Next();
      record.super_type = ExpectIdentifier("supertype name");
    }
    record.replaces = ParseSimpleReplaces();
    record.alias = ParseAs();
    ExpectPunct("{");
    while (!IsPunct("}")) record.fields.push_back(ParseField());
    Next();
    return record;
  }

  Field ParseField() {
    Field field;
    field.optionality = OptionalityKeyword(Peek());
    if (field.optionality) Next();
    field.type = ParseTypeRef();
    field.name = ExpectIdentifier("field name");
    if (IsKeyword("replaces")) {
      Next();
      ReplacesClause clause;
      if (IsKeyword("nothing")) {
        Next();
        clause.nothing = true;
      } else {
        clause.names.push_back(ParseQualifiedFieldName());
        while (IsPunct(",")) {
          Next();
          clause.names.push_back(ParseQualifiedFieldName());
        }
      }
      field.replaces = std::move(clause);
    }
    field.alias = ParseAs();
    return field;
  }

  QualifiedFieldName ParseQualifiedFieldName() {
    if (Peek().kind != TokenKind::kIdentifier) {
      Fail({"field name", "'nothing'"});
    }
    QualifiedFieldName name;
    name.field = Next().text;
    if (IsPunct(".")) {
      Next();
      name.type = std::move(name.field);
      name.field = ExpectIdentifier("field name");
    }
    return name;
  }

  TypeRef ParseTypeRef() {
    TypeRef type;
    const Token& t = Peek();
    if (t.kind == TokenKind::kKeyword &&
        (t.text == "int32" || t.text == "integer")) {
      Next();
      type = TypeRef::Int32();
    } else if (t.kind == TokenKind::kKeyword &&
               (t.text == "numeric" || t.text == "string")) {
      const bool numeric = t.text == "numeric";
      Next();
      std::optional<std::uint32_t> bound;
      if (IsPunct("(")) {
        Next();
        bound = ExpectInteger();
        ExpectPunct(")");
      }
      type = numeric ? TypeRef::Numeric(bound) : TypeRef::String(bound);
    } else if (t.kind == TokenKind::kIdentifier) {
      type = TypeRef::Named(Next().text);
    } else {
      Fail({"'int32'", "'numeric'", "'string'", "type name",
            "optionality modifier", "'}'"});
    }
    while (true) {
      if (IsPunct("*")) {
        Next();
        type = TypeRef::List(std::move(type), std::nullopt);
      } else if (IsPunct("[")) {
        Next();
        auto bound = ExpectInteger();
        ExpectPunct("]");
        type = TypeRef::List(std::move(type), bound);
      } else {
        return type;
      }
    }
  }

  std::optional<ReplacesClause> ParseSimpleReplaces() {
    if (!IsKeyword("replaces")) return std::nullopt;
    Next();
    if (IsKeyword("nothing")) {
      Next();
      return ReplacesClause::Nothing();
    }
    if (Peek().kind != TokenKind::kIdentifier) Fail({"identifier", "'nothing'"});
    return ReplacesClause::Of(Next().text);
  }

  std::optional<std::string> ParseAs() {
    if (!IsKeyword("as")) return std::nullopt;
    Next();
    return ExpectIdentifier("internal name");
  }

  EnumType ParseEnum() {
    ExpectKeyword("enum");
    EnumType e;
    e.name = ExpectIdentifier("enum name");
    e.replaces = ParseSimpleReplaces();
    e.alias = ParseAs();
    ExpectPunct("{");
    while (!IsPunct("}")) {
      if (Peek().kind != TokenKind::kIdentifier) Fail({"enum member", "'}'"});
      EnumMember member;
      member.name = Next().text;
      member.replaces = ParseSimpleReplaces();
      e.members.push_back(std::move(member));
    }
    Next();
    return e;
  }

  Service ParseService() {
    ExpectKeyword("service");
    Service s;
    s.name = ExpectIdentifier("service name");
    s.replaces = ParseSimpleReplaces();
    s.alias = ParseAs();
    ExpectPunct("{");
    while (!IsPunct("}")) {
      if (Peek().kind != TokenKind::kIdentifier) {
        Fail({"output type name", "'}'"});
      }
      ServiceOperation op;
      op.output = Next().text;
      op.name = ExpectIdentifier("operation name");
      ExpectPunct("(");
      op.input = ExpectIdentifier("input type name");
      ExpectPunct(")");
      op.replaces = ParseSimpleReplaces();
      op.alias = ParseAs();
      if (IsKeyword("throws")) {
        Next();
        op.throws.push_back(ExpectIdentifier("exception type name"));
        while (IsPunct(",")) {
          Next();
          op.throws.push_back(ExpectIdentifier("exception type name"));
        }
      }
      s.operations.push_back(std::move(op));
    }
    Next();
    return s;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ApiDefinition ParseSyntax(std::string_view text) {
  return Parser(text).ParseApi();
}

ApiDefinition ParseDefinition(std::string_view text) {
  ApiDefinition def = ParseSyntax(text);
  auto diagnostics = ValidateWellformedness(def);
  std::erase_if(diagnostics, [](const Diagnostic& d) {
    return d.severity != Severity::kError;
  });
  if (!diagnostics.empty()) throw Error(std::move(diagnostics));
  return def;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace apievo
