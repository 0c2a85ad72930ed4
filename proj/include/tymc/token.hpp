#pragma once

#include <string>
#include <string_view>

namespace tymc {

enum class TokenKind {
  Ident,
  IntLit,
  RealLit,
  StringLit,
  Directive,
  // keywords
  KwFunction,
  KwEnd,
  KwIf,
  KwElse,
  KwFor,
  // type keywords
  KwInt,
  KwReal,
  KwFloat,
  KwIntArray,
  KwRealArray,
  // operators
  Plus,
  Minus,
  Star,
  Slash,
  Assign,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  OrOr,
  AndAnd,
  Colon,
  Comma,
  LParen,
  RParen,
  Newline,
  EndOfFile,
};

std::string_view to_string(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;   // lexeme as it appears in the source
  int line = 1;       // 1-based
  int col = 1;        // 1-based, in bytes
  std::string value;  // directive name or string contents
};

}  // namespace tymc
