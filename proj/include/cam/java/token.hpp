#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cam::java {

enum class TokenKind : std::uint8_t {
  Keyword,
  Identifier,
  LiteralInt,
  LiteralFloat,
  LiteralString,
  LiteralChar,
  LiteralBool,
  LiteralNull,
  Operator,
  Separator,
  CommentLine,
  CommentBlock,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind{};
  std::string lexeme;
  /// Whitespace between the previous token (or start of input) and this one.
  std::string leading;
  std::uint32_t line = 1;    // 1-based
  std::uint32_t column = 1;  // 1-based, in code points
  std::uint32_t end_line = 1;

  bool is_comment() const {
    return kind == TokenKind::CommentLine || kind == TokenKind::CommentBlock;
  }
  bool is_literal() const {
    return kind >= TokenKind::LiteralInt && kind <= TokenKind::LiteralNull;
  }
};

/// Lossless token stream: every byte of the source is either part of a
/// lexeme, part of some token's `leading` whitespace, or in `trailing`.
struct TokenList {
  std::vector<Token> tokens;
  std::string trailing;

  std::string reconstruct() const;
};

class LexError : public std::runtime_error {
 public:
  LexError(std::uint32_t line, std::uint32_t column, const std::string& reason);

  std::uint32_t line() const { return line_; }
  std::uint32_t column() const { return column_; }

 private:
  std::uint32_t line_;
  std::uint32_t column_;
};

/// Tokenizes Java 8 source text. Comments are kept as tokens.
TokenList tokenize(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace cam::java
