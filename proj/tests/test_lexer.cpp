#include <random>

#include "doctest.h"
#include "testing.hpp"
#include "tymc/lexer.hpp"

using namespace tymc;

namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& ts) {
  std::vector<TokenKind> out;
  for (const Token& t : ts) out.push_back(t.kind);
  return out;
}

std::string code_of(std::string_view src) {
  try {
    tokenize(src);
  } catch (const CompileError& e) {
    return e.diagnostic().code;
  }
  return "";
}

// Character at 1-based (line, col) of src.
char at(std::string_view src, int line, int col) {
  std::size_t p = 0;
  for (int l = 1; l < line; ++l) p = src.find('\n', p) + 1;
  return src[p + static_cast<std::size_t>(col) - 1];
}

}  // namespace

TEST_CASE("directive line yields a single Directive token") {
  const auto ts = tokenize("$ 'no_check_ranges'");
  REQUIRE(kinds(ts) == std::vector{TokenKind::Directive, TokenKind::Newline, TokenKind::EndOfFile});
  CHECK(ts[0].value == "no_check_ranges");
}

TEST_CASE("element store statement") {
  const auto ts = tokenize("z(i, j) = 0");
  using K = TokenKind;
  CHECK(kinds(ts) == std::vector{K::Ident, K::LParen, K::Ident, K::Comma, K::Ident, K::RParen,
                                 K::Assign, K::IntLit, K::Newline, K::EndOfFile});
}

TEST_CASE("empty input is just EndOfFile") {
  CHECK(kinds(tokenize("")) == std::vector{TokenKind::EndOfFile});
}

TEST_CASE("lexical errors") {
  CHECK(code_of("error('oops") == "UnterminatedString");
  CHECK(code_of("x = 1 # 2") == "IllegalCharacter");
  CHECK(code_of("$ no_quotes") == "MalformedDirective");
  CHECK(code_of("$ 'a' 'b'") == "MalformedDirective");
  try {
    tokenize("int a\nerror('oops");
    FAIL("expected an error");
  } catch (const CompileError& e) {
    CHECK(e.diagnostic().line == 2);
  }
}

TEST_CASE("comments, semicolons and blank lines") {
  using K = TokenKind;
  const auto ts = tokenize("a = 1; % trailing\n\n\n% whole line\nb = 2\n");
  CHECK(kinds(ts) == std::vector{K::Ident, K::Assign, K::IntLit, K::Newline, K::Ident, K::Assign,
                                 K::IntLit, K::Newline, K::EndOfFile});
}

TEST_CASE("operators and literals") {
  using K = TokenKind;
  const auto ts = tokenize("a ~= b && c <= 1.5e3 || -d >= 2 == e / f");
  CHECK(kinds(ts) == std::vector{K::Ident, K::Ne, K::Ident, K::AndAnd, K::Ident, K::Le, K::RealLit,
                                 K::OrOr, K::Minus, K::Ident, K::Ge, K::IntLit, K::Eq, K::Ident,
                                 K::Slash, K::Ident, K::Newline, K::EndOfFile});
  CHECK(ts[6].text == "1.5e3");
}

TEST_CASE("type keywords are distinct from identifiers") {
  using K = TokenKind;
  const auto ts = tokenize("intArray realArray int real float integer");
  CHECK(kinds(ts) == std::vector{K::KwIntArray, K::KwRealArray, K::KwInt, K::KwReal, K::KwFloat,
                                 K::Ident, K::Newline, K::EndOfFile});
}

TEST_CASE("token positions point at the lexeme") {
  const std::string src = tymc::testing::read_text(tymc::testing::data_path("fixtures/mymult.tm"));
  const auto ts = tokenize(src);
  REQUIRE(ts.size() > 1);
  for (const Token& t : ts) {
    if (t.kind == TokenKind::Newline || t.kind == TokenKind::EndOfFile) continue;
    CHECK(at(src, t.line, t.col) == t.text.front());
  }
}

TEST_CASE("directive tokens only start lines") {
  const std::string src = tymc::testing::read_text(tymc::testing::data_path("fixtures/mymult.tm"));
  const auto ts = tokenize(src);
  int directives = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (ts[k].kind != TokenKind::Directive) continue;
    ++directives;
    CHECK((k == 0 || ts[k - 1].kind == TokenKind::Newline));
  }
  CHECK(directives == 3);
}

TEST_CASE("random lexeme streams always tokenize") {
  static const char* const lexemes[] = {"x",  "d1x", "42", "0.5", "1.0e-3", "'msg'", "+",  "-",
                                        "*",  "/",   "=",  "==",  "~=",     "<",     "<=", ">",
                                        ">=", "||",  "&&", ":",   ",",      "(",     ")",  "end",
                                        "for", "if", "intArray", "\n", ";", "% note\n"};
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(lexemes)) - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string src;
    for (int k = 0; k < 40; ++k) (src += lexemes[pick(rng)]) += ' ';
    const auto ts = tokenize(src);
    CHECK(ts.back().kind == TokenKind::EndOfFile);
    CHECK(std::count_if(ts.begin(), ts.end(),
                        [](const Token& t) { return t.kind == TokenKind::EndOfFile; }) == 1);
  }
}
