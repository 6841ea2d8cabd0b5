#include "cam/java/token.hpp"

#include <algorithm>
#include <array>

namespace cam::java {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
};

// Longest first so that a linear scan finds the maximal munch.
constexpr std::array<std::string_view, 40> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&",
    "||",   "==",  "!=",  "<=",  ">=",  "+=", "-=", "*=", "/=", "&=",
    "|=",   "^=",  "%=",  "<<",  ">>",  "=",  ">",  "<",  "!",  "~",
    "?",    ":",   "+",   "-",   "*",   "/",  "&",  "|",  "^",  "%",
};

constexpr std::string_view kSeparators = "(){}[];,.@";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenList run() {
    TokenList out;
    while (true) {
      std::string leading = skip_whitespace();
      if (pos_ >= src_.size()) {
        out.trailing = std::move(leading);
        break;
      }
      Token tok = next_token();
      tok.leading = std::move(leading);
      out.tokens.push_back(std::move(tok));
    }
    return out;
  }

 private:
  unsigned char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? static_cast<unsigned char>(src_[pos_ + k]) : 0;
  }

  bool at_end(std::size_t k = 0) const { return pos_ + k >= src_.size(); }

  void advance() {
    unsigned char c = peek();
    ++pos_;
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
  }

  [[noreturn]] void fail(std::uint32_t line, std::uint32_t col, const std::string& why) const {
    throw LexError(line, col, why);
  }

  std::string skip_whitespace() {
    std::size_t start = pos_;
    while (!at_end()) {
      unsigned char c = peek();
      if (c == ' ' || c == '\t' || c == '\f' || c == '\r' || c == '\n' || c == 0x1A) {
        advance();
      } else if (c == 0xEF && peek(1) == 0xBB && peek(2) == 0xBF) {
        // byte order mark
        advance();
        advance();
        advance();
      } else {
        break;
      }
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  Token make(TokenKind kind, std::size_t start, std::uint32_t line, std::uint32_t col) const {
    Token t;
    t.kind = kind;
    t.lexeme = std::string(src_.substr(start, pos_ - start));
    t.line = line;
    t.column = col;
    t.end_line = line_;
    return t;
  }

  Token next_token() {
    const std::size_t start = pos_;
    const std::uint32_t line = line_;
    const std::uint32_t col = column_;
    const unsigned char c = peek();

    if (c == '/' && peek(1) == '/') {
      while (!at_end() && peek() != '\n') advance();
      return make(TokenKind::CommentLine, start, line, col);
    }
    if (c == '/' && peek(1) == '*') {
      advance();
      advance();
      while (true) {
        if (at_end()) fail(line, col, "unterminated block comment");
        if (peek() == '*' && peek(1) == '/') {
          advance();
          advance();
          break;
        }
        advance();
      }
      return make(TokenKind::CommentBlock, start, line, col);
    }
    if (c == '"' || c == '\'') {
      return quoted(c, start, line, col);
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      return number(start, line, col);
    }
    if (is_ident_start(c)) {
      while (!at_end() && is_ident_part(peek())) advance();
      Token t = make(TokenKind::Identifier, start, line, col);
      if (t.lexeme == "true" || t.lexeme == "false") {
        t.kind = TokenKind::LiteralBool;
      } else if (t.lexeme == "null") {
        t.kind = TokenKind::LiteralNull;
      } else if (is_java_keyword(t.lexeme)) {
        t.kind = TokenKind::Keyword;
      }
      return t;
    }
    if (c == '.' && peek(1) == '.' && peek(2) == '.') {
      advance();
      advance();
      advance();
      return make(TokenKind::Separator, start, line, col);
    }
    if (c == ':' && peek(1) == ':') {
      advance();
      advance();
      return make(TokenKind::Separator, start, line, col);
    }
    if (kSeparators.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::Separator, start, line, col);
    }
    std::string_view rest = src_.substr(pos_);
    for (std::string_view op : kOperators) {
      if (rest.starts_with(op)) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, start, line, col);
      }
    }
    fail(line, col, std::string("illegal character '") + static_cast<char>(c) + "'");
  }

  Token quoted(unsigned char quote, std::size_t start, std::uint32_t line, std::uint32_t col) {
    const bool is_char = quote == '\'';
    advance();
    std::size_t units = 0;
    while (true) {
      if (at_end() || peek() == '\n' || peek() == '\r') {
        fail(line, col, is_char ? "unterminated character literal" : "unterminated string literal");
      }
      unsigned char c = peek();
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (at_end() || peek() == '\n') {
          fail(line, col, "unterminated escape sequence");
        }
      }
      advance();
      ++units;
    }
    if (is_char && units == 0) fail(line, col, "empty character literal");
    return make(is_char ? TokenKind::LiteralChar : TokenKind::LiteralString, start, line, col);
  }

  void digits(bool (*accept)(unsigned char)) {
    while (!at_end() && (accept(peek()) || peek() == '_')) advance();
  }

  Token number(std::size_t start, std::uint32_t line, std::uint32_t col) {
    bool is_float = false;
    auto dec = [](unsigned char c) { return is_digit(c); };
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      digits([](unsigned char c) { return is_hex_digit(c); });
      if (peek() == '.') {
        is_float = true;
        advance();
        digits([](unsigned char c) { return is_hex_digit(c); });
      }
      if (peek() == 'p' || peek() == 'P') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits(dec);
      }
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      digits([](unsigned char c) { return c == '0' || c == '1'; });
    } else {
      digits(dec);
      if (peek() == '.' && !(peek(1) == '.' && peek(2) == '.')) {
        // "1." is a float, "1.x" is a member select on an int literal only in
        // invalid code, so consume the dot when a digit, exponent or suffix follows
        unsigned char n = peek(1);
        if (is_digit(n) || n == 'e' || n == 'E' || n == 'f' || n == 'F' || n == 'd' || n == 'D' ||
            !is_ident_start(n)) {
          is_float = true;
          advance();
          digits(dec);
        }
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (!is_digit(peek())) fail(line, col, "malformed exponent");
        digits(dec);
      }
    }
    unsigned char s = peek();
    if (s == 'l' || s == 'L') {
      if (is_float) fail(line, col, "long suffix on floating literal");
      advance();
    } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
      is_float = true;
      advance();
    }
    if (!at_end() && is_ident_part(peek())) {
      fail(line, col, "malformed numeric literal");
    }
    return make(is_float ? TokenKind::LiteralFloat : TokenKind::LiteralInt, start, line, col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::LiteralInt: return "literal-int";
    case TokenKind::LiteralFloat: return "literal-float";
    case TokenKind::LiteralString: return "literal-string";
    case TokenKind::LiteralChar: return "literal-char";
    case TokenKind::LiteralBool: return "literal-bool";
    case TokenKind::LiteralNull: return "literal-null";
    case TokenKind::Operator: return "operator";
    case TokenKind::Separator: return "separator";
    case TokenKind::CommentLine: return "comment-line";
    case TokenKind::CommentBlock: return "comment-block";
  }
  return "unknown";
}

std::string TokenList::reconstruct() const {
  std::string out;
  for (const Token& t : tokens) {
    out += t.leading;
    out += t.lexeme;
  }
  out += trailing;
  return out;
}

LexError::LexError(std::uint32_t line, std::uint32_t column, const std::string& reason)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
      line_(line),
      column_(column) {}

bool is_java_keyword(std::string_view word) {
  return std::binary_search(kKeywords.begin(), kKeywords.end(), word);
}

TokenList tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace cam::java
