#include "tymc/lexer.hpp"

#include <unordered_map>

#include "tymc/diagnostics.hpp"

namespace tymc {

std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::IntLit: return "integer literal";
    case TokenKind::RealLit: return "real literal";
    case TokenKind::StringLit: return "string literal";
    case TokenKind::Directive: return "directive";
    case TokenKind::KwFunction: return "'function'";
    case TokenKind::KwEnd: return "'end'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwFor: return "'for'";
    case TokenKind::KwInt: return "'int'";
    case TokenKind::KwReal: return "'real'";
    case TokenKind::KwFloat: return "'float'";
    case TokenKind::KwIntArray: return "'intArray'";
    case TokenKind::KwRealArray: return "'realArray'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Assign: return "'='";
    case TokenKind::Eq: return "'=='";
    case TokenKind::Ne: return "'~='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Newline: return "end of line";
    case TokenKind::EndOfFile: return "end of file";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> table = {
      {"function", TokenKind::KwFunction}, {"end", TokenKind::KwEnd},
      {"if", TokenKind::KwIf},             {"else", TokenKind::KwElse},
      {"for", TokenKind::KwFor},           {"int", TokenKind::KwInt},
      {"real", TokenKind::KwReal},         {"float", TokenKind::KwFloat},
      {"intArray", TokenKind::KwIntArray}, {"realArray", TokenKind::KwRealArray},
  };
  return table;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        terminate_statement("\n");
        advance();
        line_++;
        col_ = 1;
        line_has_tokens_ = false;
      } else if (is_blank(c)) {
        advance();
      } else if (c == '%') {
        skip_to_eol();
      } else if (c == '$') {
        directive();
      } else if (c == '\'') {
        string_literal();
      } else if (is_digit(c)) {
        number();
      } else if (is_ident_start(c)) {
        identifier();
      } else if (c == ';') {
        terminate_statement(";");
        advance();
      } else {
        op();
      }
    }
    terminate_statement("");
    tokens_.push_back(Token{TokenKind::EndOfFile, "", line_, col_, {}});
    return std::move(tokens_);
  }

 private:
  [[noreturn]] void fail(const char* code, std::string msg, int line, int col) {
    throw CompileError(Diagnostic{Severity::Error, code, line, col, std::move(msg)});
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }

  void skip_to_eol() {
    while (pos_ < src_.size() && src_[pos_] != '\n') advance();
  }

  void emit(TokenKind kind, std::size_t start, int col, std::string value = {}) {
    tokens_.push_back(Token{kind, std::string(src_.substr(start, pos_ - start)), line_, col,
                            std::move(value)});
    line_has_tokens_ = true;
  }

  // Newline and `;` both end a statement; repeated terminators collapse.
  void terminate_statement(const char* text) {
    if (tokens_.empty() || tokens_.back().kind == TokenKind::Newline) return;
    tokens_.push_back(Token{TokenKind::Newline, text, line_, col_, {}});
  }

  void directive() {
    const int col = col_;
    const std::size_t start = pos_;
    if (line_has_tokens_) fail("MalformedDirective", "directive must start a line", line_, col);
    advance();
    while (is_blank(peek())) advance();
    if (peek() != '\'')
      fail("MalformedDirective", "expected a quoted directive name after '$'", line_, col_);
    advance();
    const std::size_t name_start = pos_;
    while (pos_ < src_.size() && peek() != '\'' && peek() != '\n') advance();
    if (peek() != '\'') fail("MalformedDirective", "unterminated directive name", line_, col);
    std::string name(src_.substr(name_start, pos_ - name_start));
    if (name.empty()) fail("MalformedDirective", "empty directive name", line_, col);
    advance();
    const std::size_t end = pos_;
    while (is_blank(peek())) advance();
    if (peek() != '\n' && peek() != '%' && peek() != '\0')
      fail("MalformedDirective", "unexpected text after directive", line_, col_);
    tokens_.push_back(Token{TokenKind::Directive, std::string(src_.substr(start, end - start)),
                            line_, col, std::move(name)});
    line_has_tokens_ = true;
  }

  void string_literal() {
    const int col = col_;
    const std::size_t start = pos_;
    advance();
    while (pos_ < src_.size() && peek() != '\'' && peek() != '\n') advance();
    if (peek() != '\'') fail("UnterminatedString", "missing closing quote", line_, col);
    advance();
    emit(TokenKind::StringLit, start, col, std::string(src_.substr(start + 1, pos_ - start - 2)));
  }

  void number() {
    const int col = col_;
    const std::size_t start = pos_;
    while (is_digit(peek())) advance();
    TokenKind kind = TokenKind::IntLit;
    if (peek() == '.' && is_digit(peek(1))) {
      kind = TokenKind::RealLit;
      advance();
      while (is_digit(peek())) advance();
      const char e = peek();
      if (e == 'e' || e == 'E') {
        std::size_t k = 1;
        if (peek(k) == '+' || peek(k) == '-') ++k;
        if (is_digit(peek(k))) {
          advance(k);
          while (is_digit(peek())) advance();
        }
      }
    }
    if (is_ident_start(peek()) || peek() == '.')
      fail("IllegalCharacter", std::string("unexpected '") + peek() + "' in number", line_, col_);
    emit(kind, start, col);
  }

  void identifier() {
    const int col = col_;
    const std::size_t start = pos_;
    while (is_ident_char(peek())) advance();
    const auto word = src_.substr(start, pos_ - start);
    auto it = keywords().find(word);
    emit(it == keywords().end() ? TokenKind::Ident : it->second, start, col);
  }

  void op() {
    const int col = col_;
    const std::size_t start = pos_;
    const char c = peek();
    const char n = peek(1);
    auto two = [&](TokenKind k) {
      advance(2);
      emit(k, start, col);
    };
    auto one = [&](TokenKind k) {
      advance();
      emit(k, start, col);
    };
    switch (c) {
      case '=': return n == '=' ? two(TokenKind::Eq) : one(TokenKind::Assign);
      case '~':
        if (n == '=') return two(TokenKind::Ne);
        break;
      case '<': return n == '=' ? two(TokenKind::Le) : one(TokenKind::Lt);
      case '>': return n == '=' ? two(TokenKind::Ge) : one(TokenKind::Gt);
      case '|':
        if (n == '|') return two(TokenKind::OrOr);
        break;
      case '&':
        if (n == '&') return two(TokenKind::AndAnd);
        break;
      case '+': return one(TokenKind::Plus);
      case '-': return one(TokenKind::Minus);
      case '*': return one(TokenKind::Star);
      case '/': return one(TokenKind::Slash);
      case ':': return one(TokenKind::Colon);
      case ',': return one(TokenKind::Comma);
      case '(': return one(TokenKind::LParen);
      case ')': return one(TokenKind::RParen);
      default: break;
    }
    const unsigned char uc = static_cast<unsigned char>(c);
    std::string shown = uc >= 0x20 && uc < 0x7f ? std::string(1, c) : "\\x" + hex(uc);
    fail("IllegalCharacter", "illegal character '" + shown + "'", line_, col);
  }

  static std::string hex(unsigned char c) {
    const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool line_has_tokens_ = false;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace tymc
