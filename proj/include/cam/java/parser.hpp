#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cam/java/model.hpp"
#include "cam/java/token.hpp"

namespace cam::java {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::uint32_t line, std::uint32_t column, const std::string& expected);

  std::uint32_t line() const { return line_; }
  std::uint32_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::uint32_t line_;
  std::uint32_t column_;
  std::string expected_;
};

/// A parsed file together with the token stream its spans index into.
struct ParsedFile {
  TokenList tokens;
  CompilationUnit unit;
};

/// Parses Java 8 source. Anything outside that grammar level, including
/// records, switch expressions, `var` declarations and text blocks, raises
/// SyntaxError. Lexical failures surface as LexError.
CompilationUnit parse(std::string_view source);

ParsedFile parse_file(std::string_view source);

/// Parses an already tokenized stream.
CompilationUnit parse_tokens(const TokenList& tokens);

/// Top-level classes in source order; nested and anonymous classes stay
/// folded inside their enclosing model.
std::vector<ClassModel> extract_classes(const CompilationUnit& unit);

}  // namespace cam::java
