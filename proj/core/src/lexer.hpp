#pragma once

// Tokenizer and token cursor shared by the .item and .hara parsers.

#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haraforge/dsl.hpp"

namespace haraforge::detail {

enum class TokenKind { kWord, kString, kLBracket, kRBracket, kComma, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  ///< word text, or the unescaped string value
  int line = 1;
  int column = 1;
};

/// CRLF -> LF. Line and column numbers of the remaining bytes are unchanged.
std::string normalize_newlines(std::string_view text);

/// Byte offset of the first invalid UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view text) noexcept;

/// Line/column of a byte offset.
SourceLocation locate(std::string_view text, std::size_t offset, const std::string& file);

/// Splits `text` into tokens. Words are maximal runs of bytes other than
/// whitespace, `"`, `[`, `]`, `,` and `#`. Comments run from `#` to end of
/// line. Lexical errors are appended to `diagnostics`; lexing continues.
std::vector<Token> lex(std::string_view text, const std::string& file,
                       std::vector<ParseDiagnostic>& diagnostics);

/// Escapes `\`, `"`, LF, CR and TAB and wraps in double quotes.
std::string quote(std::string_view text);

/// Decimal without sign or leading zeros, at most nine digits.
std::optional<int> parse_count(std::string_view text) noexcept;

/// Thrown to abandon the current statement after a diagnostic was recorded.
struct StatementAborted {};

class Cursor {
 public:
  Cursor(std::vector<Token> tokens, std::string file, std::vector<ParseDiagnostic>& diagnostics);

  const Token& peek() const noexcept { return tokens_[pos_]; }
  bool at_end() const noexcept { return peek().kind == TokenKind::kEnd; }
  const Token& next() noexcept;
  std::size_t position() const noexcept { return pos_; }

  bool peek_word(std::string_view word) const noexcept;
  bool accept_word(std::string_view word) noexcept;

  const Token& expect_keyword(std::string_view keyword);
  const Token& expect_word(std::string_view what);
  const Token& expect_identifier(std::string_view what);
  const Token& expect_string(std::string_view what);
  /// `[a, b, ...]`, identifiers only, possibly empty.
  std::vector<Token> expect_identifier_list(std::string_view what);

  SourceLocation location(const Token& token) const;
  bool has_errors() const noexcept;

  void error(const Token& at, std::string message);
  void warning(const Token& at, std::string message);
  [[noreturn]] void fail(const Token& at, std::string message);

  /// Skips to the next word at column 1 that is one of `keywords`. The
  /// current token is kept if it already is one.
  void recover(std::span<const std::string_view> keywords) noexcept;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
  std::vector<ParseDiagnostic>& diagnostics_;
};

std::string describe(const Token& token);

}  // namespace haraforge::detail
